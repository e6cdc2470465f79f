# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

"""Main package of qspectral.

The following modules are the public entry points:
- quaternion: quaternion algebra, eigenspheres and circular sets
- hilbert: the finite-dimensional quaternionic Hilbert space H^n
- operators: right-linear operators as quaternionic matrices
- spectral: spherical spectra and spectral decompositions
- compact: truncation models of compact normal operators
- cli: the command-line tool qspectral

Naming conventions used within qspectral:

QUATERNION ARRAY: a numpy array whose last axis has length 4 (w, x, y, z)
QVECTOR: a quaternion array of shape (n, 4), an element of H^n
QMATRIX: a quaternion array of shape (n, n, 4), a right-linear operator
IOTA: the imaginary unit that selects the slice C_iota (default i)
JOTA: the fixed imaginary unit orthogonal to IOTA (see quaternion.complementary_unit)
CHI: the complex adjoint image of a QMATRIX with respect to IOTA
CLASS: a conjugation class of quaternions, stored as (re, im) with im >= 0

Vectors of a basis are stacked along the first axis (shape (r, n, 4)).
Coefficients of basis expansions always multiply basis vectors from the right.
Variables ending with "tol" contain absolute tolerances.
"""

__version__ = "1.0-dev"


class QSpectralException(Exception):
    pass


class RankDeficiencyError(QSpectralException):
    """A family of vectors is not linearly independent over the chosen scalars.

    :param index the index of the first vector that is dependent on its predecessors
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(
            message or f"Vector {index} is linearly dependent on its predecessors."
        )


class OperatorConditionError(QSpectralException):
    """An operator violates a documented precondition (e.g., it is not normal)."""


class NumericalError(QSpectralException):
    """A numerical kernel produced a result that contradicts the theory."""


class FormatError(QSpectralException):
    """An input file does not follow the expected format."""
