# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

"""
Seeded random generators for quaternions, bases and operators.
All functions take a numpy.random.Generator.
"""

import math

import numpy as np

from qspectral import hilbert
from qspectral.quaternion import CircularPoint, Quaternion


def case_generators(seed, count):
    """Return count independent generators spawned from the master seed."""
    return [
        np.random.default_rng(child)
        for child in np.random.SeedSequence(seed).spawn(count)
    ]


def random_quaternions(rng, size):
    return rng.normal(size=(size, 4))


def random_unit_quaternion(rng):
    q = rng.normal(size=4)
    return Quaternion(*(float(c) for c in q / np.linalg.norm(q)))


def random_unit_imaginary(rng):
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return Quaternion(0.0, *(float(c) for c in v))


def random_vector(rng, n):
    return rng.normal(size=(n, 4))


def random_basis(rng, n):
    """A random Hilbert basis of H^n (orthonormalized Gaussian vectors)."""
    vectors = hilbert.gram_schmidt(rng.normal(size=(n, n, 4)))
    return hilbert.HilbertBasis.create(vectors)


def random_unitary(rng, n):
    """A random unitary operator whose columns form a random Hilbert basis."""
    return random_basis(rng, n).columns().copy()


def random_matrix(rng, n):
    """A random operator, in general not normal."""
    return rng.normal(size=(n, n, 4))


def _conjugated_diagonal(rng, diagonal):
    basis = random_basis(rng, len(diagonal))
    return hilbert.basis_operator(basis, np.asarray(diagonal, dtype=float))


def random_normal(rng, n):
    """A random normal operator U D U* with a quaternionic diagonal D."""
    return _conjugated_diagonal(rng, random_quaternions(rng, n))


def random_self_adjoint(rng, n):
    diagonal = np.zeros((n, 4))
    diagonal[:, 0] = rng.normal(size=n)
    return _conjugated_diagonal(rng, diagonal)


def random_anti_self_adjoint(rng, n, low=0.5, high=3.0):
    """
    A random anti self-adjoint operator; its eigenspheres all have real part 0
    and moduli drawn uniformly from [low, high].
    """
    moduli = rng.uniform(low, high, size=n)
    diagonal = np.array([random_unit_imaginary(rng) for _ in range(n)]) * moduli[:, np.newaxis]
    return _conjugated_diagonal(rng, diagonal)


def random_anti_self_adjoint_unitary(rng, n):
    diagonal = np.array([random_unit_imaginary(rng) for _ in range(n)])
    return _conjugated_diagonal(rng, diagonal)


def random_unitary_operator(rng, n):
    """A random unitary operator with eigenvalues spread over the unit sphere of H."""
    diagonal = np.array([random_unit_quaternion(rng) for _ in range(n)])
    return _conjugated_diagonal(rng, diagonal)


def scattered_lambdas(rng, n, zero_probability=0.1):
    """
    Random eigenvalues on random eigenspheres: every value is a point of its
    eigensphere in a random direction, some values are zero, and some eigenspheres
    are used twice (in different directions).
    """
    result = []
    for _ in range(n):
        if result and rng.random() < 0.2:
            source = Quaternion(*result[rng.integers(len(result))])
            point = CircularPoint(source.w, source.imag_modulus, 1)
        elif rng.random() < zero_probability:
            result.append((0.0, 0.0, 0.0, 0.0))
            continue
        else:
            point = CircularPoint(float(rng.normal()), float(abs(rng.normal())), 1)
        direction = random_unit_imaginary(rng)
        result.append(
            (point.re, point.im * direction.x, point.im * direction.y, point.im * direction.z)
        )
    return np.array(result).reshape(n, 4)


def random_real_polynomial(rng, degree=3):
    """Coefficients (lowest degree first) of a random real polynomial."""
    return [float(c) for c in rng.normal(size=degree + 1)]


def distance_to_spectrum(q, spectrum):
    """Distance in H from q to the nearest eigensphere of a CircularSet."""
    q = Quaternion.create(q)
    return min(
        (math.hypot(q.w - p.re, q.imag_modulus - p.im) for p in spectrum),
        default=math.inf,
    )


def non_spectrum_point(rng, spectrum, min_distance=0.1, scale=None, max_attempts=1000):
    """
    Rejection-sample a quaternion at distance at least min_distance
    from all eigenspheres of the spectrum.
    """
    scale = scale or max(1.0, spectrum.max_modulus())
    for _ in range(max_attempts):
        q = Quaternion(*(float(c) for c in rng.normal(scale=scale, size=4)))
        if distance_to_spectrum(q, spectrum) >= min_distance:
            return q
    raise ValueError("Could not sample a point outside of the spectrum.")


def slice_test_unit():
    """The imaginary unit (i + j + k)/sqrt(3) used for slice-independence checks."""
    c = 1 / math.sqrt(3)
    return Quaternion(0.0, c, c, c)
