# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

"""
The quaternionic Hilbert space H^n.

Vectors are quaternion arrays of shape (n, 4), families of vectors are stacked
along the first axis (shape (r, n, 4)). The inner product <u|v> = sum conj(u_k) v_k
is right linear in v, so all expansion coefficients multiply basis vectors
from the right.
"""

import collections
import logging

import numpy as np

from qspectral import NumericalError, OperatorConditionError, RankDeficiencyError
from qspectral import operators
from qspectral.quaternion import (
    DEFAULT_TOL,
    I,
    Quaternion,
    as_qarray,
    complementary_unit,
    from_complex,
    qconj,
    qmul,
    to_complex,
)

SCALARS_H = "H"
SCALARS_C_IOTA = "C_iota"
SCALARS = [SCALARS_H, SCALARS_C_IOTA]

DEGENERATE_NORM = 1e-12
"""Input vectors with smaller norm are rejected by gram_schmidt."""

DEPENDENCY_TOL = 1e-10
"""Relative residual below which a vector counts as dependent on its predecessors."""

_SECOND_PASS_TOL = 1e-10


def as_qvector(u):
    u = as_qarray(u)
    if u.ndim != 2:
        raise ValueError(f"A quaternion vector needs shape (n, 4), got {u.shape}")
    return u


def inner(u, v):
    """Return <u|v> = sum_k conj(u_k) v_k as Quaternion."""
    u = as_qvector(u)
    v = as_qvector(v)
    if u.shape != v.shape:
        raise ValueError(
            f"Vectors of different length: {u.shape[0]} and {v.shape[0]}"
        )
    return Quaternion(*(float(c) for c in qmul(qconj(u), v).sum(axis=0)))


def norm(u):
    """Return |u| = sqrt(<u|u>)."""
    return float(np.linalg.norm(as_qvector(u)))


def _coefficients(basis, x):
    """Return <b|x> for all vectors b of the stacked family basis."""
    return qmul(qconj(basis), x[np.newaxis]).sum(axis=1)


def _combine(basis, coefficients):
    """Return sum_b b c_b with coefficients multiplied from the right."""
    return qmul(basis, coefficients[:, np.newaxis, :]).sum(axis=0)


def gram_matrix(vectors):
    """Return the matrix of inner products <v_a|v_b> of a stacked family."""
    columns = np.swapaxes(np.asarray(vectors, dtype=float), 0, 1)
    return operators.matmul(operators.adjoint(columns), columns)


def gram_residual(vectors):
    """Return max |<v_a|v_b> - delta_ab| of a stacked family."""
    vectors = np.asarray(vectors, dtype=float)
    if len(vectors) == 0:
        return 0.0
    deviation = gram_matrix(vectors)
    deviation[..., 0] -= np.eye(len(vectors))
    return float(np.max(np.linalg.norm(deviation, axis=-1)))


def _project_scalars(coefficients, scalars, iota):
    if scalars == SCALARS_C_IOTA:
        return from_complex(to_complex(coefficients, iota), iota)
    return coefficients


class HilbertBasis(collections.namedtuple("HilbertBasis", "vectors gram_residual scalars")):
    """
    An orthonormal family of vectors (stacked along the first axis)
    together with its Gram residual and the ring of scalars it is orthonormal over.
    """

    __slots__ = ()

    @classmethod
    def create(cls, vectors, scalars=SCALARS_H):
        vectors = np.asarray(vectors, dtype=float)
        if vectors.ndim != 3 or vectors.shape[-1] != 4:
            raise ValueError(f"A basis needs shape (r, n, 4), got {vectors.shape}")
        if scalars not in SCALARS:
            raise ValueError(f"Unknown scalars '{scalars}', expected one of {SCALARS}")
        return cls(vectors, gram_residual(vectors), scalars)

    @classmethod
    def standard(cls, n):
        vectors = np.zeros((n, n, 4))
        vectors[np.arange(n), np.arange(n), 0] = 1.0
        return cls(vectors, 0.0, SCALARS_H)

    @property
    def dimension(self):
        return self.vectors.shape[1]

    def __len__(self):
        return len(self.vectors)

    def columns(self):
        """Return the basis vectors as columns of an (n, r) quaternion matrix."""
        return np.swapaxes(self.vectors, 0, 1)

    def check(self, tol=DEFAULT_TOL):
        """Raise OperatorConditionError unless this is a complete orthonormal basis of H^n."""
        if self.scalars != SCALARS_H:
            raise OperatorConditionError(
                f"A Hilbert basis of H^n needs scalars H, got {self.scalars}"
            )
        if len(self) != self.dimension:
            raise OperatorConditionError(
                f"A Hilbert basis of H^{self.dimension} needs {self.dimension} "
                f"vectors, got {len(self)}"
            )
        if self.gram_residual > tol:
            raise OperatorConditionError(
                f"Basis is not orthonormal (Gram residual {self.gram_residual:.3e})"
            )


def _orthogonalize(x, accepted, scalars, iota):
    """Remove the components of x along the accepted orthonormal vectors (two passes if needed)."""
    if not accepted:
        return x
    basis = np.array(accepted)
    coefficients = _project_scalars(_coefficients(basis, x), scalars, iota)
    x = x - _combine(basis, coefficients)
    x_norm = np.linalg.norm(x)
    if x_norm > 0:
        coefficients = _project_scalars(_coefficients(basis, x), scalars, iota)
        if np.max(np.linalg.norm(coefficients, axis=-1)) > _SECOND_PASS_TOL * x_norm:
            x = x - _combine(basis, coefficients)
    return x


def gram_schmidt(vectors, scalars=SCALARS_H, iota=I, drop_dependent=False):
    """
    Orthonormalize a family of vectors over H or over the slice C_iota
    with the modified Gram-Schmidt process.
    @param drop_dependent: skip dependent vectors instead of raising RankDeficiencyError
    @return: the orthonormal vectors stacked as array of shape (r, n, 4)
    """
    vectors = [as_qvector(v) for v in vectors]
    if scalars not in SCALARS:
        raise ValueError(f"Unknown scalars '{scalars}', expected one of {SCALARS}")
    if vectors and any(v.shape != vectors[0].shape for v in vectors):
        raise ValueError("Vectors of different length.")
    accepted = []
    for index, v in enumerate(vectors):
        v_norm = np.linalg.norm(v)
        if v_norm < DEGENERATE_NORM:
            if drop_dependent:
                continue
            raise RankDeficiencyError(index, f"Vector {index} is degenerate (zero).")
        x = _orthogonalize(v, accepted, scalars, iota)
        x_norm = np.linalg.norm(x)
        if x_norm <= DEPENDENCY_TOL * v_norm:
            if drop_dependent:
                continue
            raise RankDeficiencyError(index)
        accepted.append(x / x_norm)
    n = vectors[0].shape[0] if vectors else 0
    return np.array(accepted).reshape(len(accepted), n, 4)


def span_basis(candidates, rank, scalars=SCALARS_H, iota=I, tol=1e-8):
    """
    Select an orthonormal basis of the span of the candidates with given rank.
    Candidates are picked in order, but a candidate is only taken if its residual
    is at least half of the largest remaining residual, which keeps the selection
    well conditioned even if the candidates are only approximately in the span.
    """
    remaining = [as_qvector(c).copy() for c in candidates]
    if rank == 0:
        n = remaining[0].shape[0] if remaining else 0
        return np.zeros((0, n, 4))
    scale = max(np.linalg.norm(c) for c in remaining)
    accepted = []
    while len(accepted) < rank:
        residuals = np.array([np.linalg.norm(c) for c in remaining])
        largest = residuals.max() if len(residuals) else 0.0
        if largest <= tol * max(scale, 1.0):
            raise NumericalError(
                f"Candidates span only {len(accepted)} of {rank} expected dimensions."
            )
        index = int(np.flatnonzero(residuals >= largest / 2)[0])
        b = remaining.pop(index)
        b = _orthogonalize(b, accepted, scalars, iota)
        b = b / np.linalg.norm(b)
        accepted.append(b)
        remaining = [_orthogonalize(c, [b], scalars, iota) for c in remaining]
    return np.array(accepted)


def basis_operator(basis, values):
    """
    Return the matrix of sum_z z q_z <z|.> for the basis vectors z
    and one quaternion q_z per basis vector.
    """
    vectors = basis.vectors if isinstance(basis, HilbertBasis) else np.asarray(basis)
    values = np.asarray(values, dtype=float)
    if values.shape != (len(vectors), 4):
        raise ValueError(
            f"Need one quaternion per basis vector, got shape {values.shape}"
        )
    columns = np.swapaxes(vectors, 0, 1)
    scaled = qmul(columns, values[np.newaxis])
    return operators.matmul(scaled, operators.adjoint(columns))


def left_mul(q, u, basis, tol=DEFAULT_TOL):
    """
    Left scalar multiplication induced by the Hilbert basis:
    qu = sum_z z q <z|u>.
    """
    basis.check(tol)
    u = as_qvector(u)
    if u.shape[0] != basis.dimension:
        raise ValueError(
            f"Vector of length {u.shape[0]} does not fit basis of H^{basis.dimension}"
        )
    q = np.array(Quaternion.create(q), dtype=float)
    coefficients = qmul(q, _coefficients(basis.vectors, u))
    return _combine(basis.vectors, coefficients)


def left_mul_operator(q, basis, tol=DEFAULT_TOL):
    """Return the matrix of the right-linear operator L_q: u -> qu."""
    basis.check(tol)
    q = np.array(Quaternion.create(q), dtype=float)
    return basis_operator(basis, np.tile(q, (len(basis), 1)))


def parseval_residual(basis, x):
    """Return |x - sum_z z <z|x>|."""
    x = as_qvector(x)
    return float(np.linalg.norm(x - _combine(basis.vectors, _coefficients(basis.vectors, x))))


def project_pm(x, J, iota=I, sign=1, check=True, tol=None):
    """
    Return P_+(x) = (x - J x iota) / 2 for sign=1 and P_-(x) = (x + J x iota) / 2
    for sign=-1. J needs to be anti self-adjoint and unitary.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be 1 or -1, got {sign}")
    if check:
        operators.check_anti_self_adjoint_unitary(J, tol)
    x = as_qarray(x)
    J_x_iota = qmul(operators.apply(J, x), np.array(iota, dtype=float))
    return (x - sign * J_x_iota) / 2


class SliceBasis(collections.namedtuple("SliceBasis", "iota J plus_vectors")):
    """
    An orthonormal basis over C_iota of the subspace H+ of vectors u with Ju = u iota.
    """

    __slots__ = ()

    def minus_vectors(self, jota=None):
        """Return the vectors b jota, a basis over C_iota of H- (Ju = -u iota)."""
        jota = complementary_unit(self.iota) if jota is None else jota
        return qmul(self.plus_vectors, np.array(jota, dtype=float))

    def hilbert_basis(self):
        """The plus vectors as Hilbert basis of H^n."""
        return HilbertBasis.create(self.plus_vectors)

    def columns(self):
        return np.swapaxes(self.plus_vectors, 0, 1)


def slice_basis(J, iota=I, tol=None):
    """
    Compute an orthonormal basis over C_iota of H+ = {u : Ju = u iota}.
    The candidates e_1..e_n, e_1 jota..e_n jota are projected with P_+.
    """
    J = operators.as_qmatrix(J)
    operators.check_anti_self_adjoint_unitary(J, tol)
    n = J.shape[0]
    jota = np.array(complementary_unit(iota), dtype=float)
    standard = HilbertBasis.standard(n).vectors
    candidates = np.concatenate([standard, qmul(standard, jota)])
    # all candidates at once: columns of an (n, 2n) block
    projected = project_pm(np.swapaxes(candidates, 0, 1), J, iota, check=False)
    projected = np.swapaxes(projected, 0, 1)
    vectors = span_basis(projected, n, SCALARS_C_IOTA, iota)
    logging.debug("Slice basis of dimension %d computed for iota=%s.", n, iota)
    return SliceBasis(iota, J, vectors)


def minus_basis(basis, jota=None):
    """Return the basis {b jota} of H- for a SliceBasis."""
    return basis.minus_vectors(jota)
