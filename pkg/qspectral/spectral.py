# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

"""
Spherical spectra and spectral decompositions of quaternionic operators.

The central pipeline for a normal operator T is
  ajb_decompose(T)            T = A + JB with commuting A, B, J
  complex_restriction(T, dec) the complex matrix of T on H+ = {u : Ju = u iota}
  spectral_decomposition(T)   eigenvectors of that complex matrix, lifted to H^n
and synthesize() is its inverse.
"""

import collections
import logging

import numpy as np
import scipy.linalg
import scipy.optimize

from qspectral import NumericalError, OperatorConditionError
from qspectral import hilbert, operators
from qspectral.quaternion import (
    DEFAULT_TOL,
    I,
    CircularPoint,
    CircularSet,
    Quaternion,
    complementary_unit,
    from_complex,
    qabs,
    qconj,
    qmul,
    similarity_unit,
    slice_representative,
    to_complex,
)

KIND_POINT = "point"

NON_NORMAL_NOTE = "point spectrum only; sigma_S classification not asserted"

PINV_RTOL = 1e-12
"""Relative threshold (times dimension) for kernel directions of 2B."""

_PAIRING_TOL = 1e-6


class SphericalSpectrum(
    collections.namedtuple("SphericalSpectrum", "points normal note")
):
    """
    The spherical spectrum of an operator on H^n as CircularSet.
    In finite dimension the spectrum consists of eigenvalues only,
    the residual and continuous parts are empty.
    """

    __slots__ = ()

    residual = ()
    continuous = ()

    @property
    def kinds(self):
        return tuple(KIND_POINT for _ in self.points)

    @property
    def radius(self):
        return self.points.max_modulus()


class AJBDecomposition(
    collections.namedtuple("AJBDecomposition", "A B J residual iota")
):
    """T = A + JB with A self-adjoint, B positive, J anti self-adjoint unitary."""

    __slots__ = ()


class SliceRestriction(collections.namedtuple("SliceRestriction", "matrix basis sign")):
    """
    The complex matrix of T restricted to H+ (sign 1) or H- (sign -1)
    together with the SliceBasis whose vectors (or their right multiples
    by jota for H-) are the coordinates.
    """

    __slots__ = ()

    def vectors(self):
        if self.sign == 1:
            return self.basis.plus_vectors
        return self.basis.minus_vectors()


class SpectralDecomposition(
    collections.namedtuple("SpectralDecomposition", "basis lambdas iota residual")
):
    """
    An orthonormal eigenbasis z (HilbertBasis) of a normal operator with
    eigenvalues lambdas (array of shape (n, 4)) such that T z = z lambda_z.
    """

    __slots__ = ()

    def eigenvalues(self):
        return [Quaternion(*(float(c) for c in lam)) for lam in self.lambdas]


def _pair_eigenvalues(values):
    """
    Pair the eigenvalues of a complex adjoint image (which come as z, conj(z))
    and return one CircularPoint per pair.
    The half with the larger imaginary parts is matched to the conjugates
    of the other half by a minimal-cost assignment; sorting by real part
    alone mixes up eigenspheres with equal real parts.
    """
    values = np.asarray(values, dtype=complex)
    order = np.argsort(-values.imag, kind="stable")
    half = len(values) // 2
    upper = values[order[:half]]
    lower = np.conj(values[order[half:]])
    cost = np.abs(upper[:, np.newaxis] - lower[np.newaxis, :])
    rows, cols = scipy.optimize.linear_sum_assignment(cost)
    points = []
    for row, col in zip(rows, cols):
        first, second = upper[row], lower[col]
        if cost[row, col] > _PAIRING_TOL * max(1.0, abs(first)):
            logging.warning(
                "Eigenvalues %s and %s of the complex adjoint image do not form "
                "a conjugate pair.",
                first,
                np.conj(second),
            )
        points.append(
            CircularPoint(
                float((first.real + second.real) / 2),
                float(abs(first.imag + second.imag) / 2),
                1,
            )
        )
    return points


def _block_points(block, iota):
    if block.shape[0] == 1:
        q = Quaternion(*(float(c) for c in block[0, 0]))
        return [CircularPoint(q.w, q.imag_modulus, 1)]
    return _pair_eigenvalues(np.linalg.eigvals(operators.chi_matrix(block, iota)))


def point_spectrum(T, iota=I, tol=DEFAULT_TOL, normal=None):
    """
    Compute the spherical point spectrum of T: the eigenvalues of chi(T),
    circularized with multiplicities (which count right H-eigenspace dimensions).
    For normal T this is the full spherical spectrum.
    @param normal: whether T is known to be normal (classified if None)
    """
    T = operators.as_qmatrix(T)
    if normal is None:
        normal = operators.classify(T, operators.scaled_tol(T, tol)).normal
    points = []
    for block in operators.diagonal_blocks(T):
        points.extend(_block_points(T[np.ix_(block, block)], iota))
    note = None
    if not normal:
        note = NON_NORMAL_NOTE
        logging.warning("Operator is not normal, computing %s.", NON_NORMAL_NOTE)
    return SphericalSpectrum(CircularSet.from_points(points, tol), normal, note)


def spectral_radius(T, iota=I, tol=DEFAULT_TOL):
    """Return r_S(T), the largest modulus of a point of the spherical spectrum."""
    return point_spectrum(T, iota, tol).radius


def _quaternionic_basis(subspace, rank, iota, preferred=()):
    """
    Return an orthonormal basis over H of the quaternionic subspace whose
    complex adjoint image is spanned by the orthonormal columns of subspace.
    Vectors in preferred are used first if they are well inside the subspace,
    the columns of the orthogonal projector complete the basis.
    """
    projector = operators.chi_inverse(subspace @ subspace.conj().T, iota)
    candidates = list(preferred) + list(np.swapaxes(projector, 0, 1))
    return hilbert.span_basis(candidates, rank, hilbert.SCALARS_H, iota)


def eigensphere_kernel(T, q, tol=DEFAULT_TOL, iota=I):
    """
    Return an orthonormal basis (shape (d, n, 4)) of Ker(Delta_q(T)),
    which is non-trivial iff the eigensphere of q consists of eigenvalues of T.
    Singular values of chi(Delta_q(T)) up to tol times the largest one
    count as zero. For non-real q the basis consists of eigenvectors u
    with T u = u (re(q) + iota |im(q)|) where possible.
    """
    T = operators.as_qmatrix(T)
    q = Quaternion.create(q)
    n = T.shape[0]
    image = operators.chi_matrix(operators.delta_q(T, q), iota)
    _, singular_values, vh = np.linalg.svd(image)
    limit = tol * max(1.0, singular_values[0])
    nullity = int(np.count_nonzero(singular_values <= limit))
    logging.debug(
        "Complex nullity of chi(Delta_q(T)) for q=%s is %d (limit %.3e).",
        q,
        nullity,
        limit,
    )
    if nullity % 2:
        raise NumericalError(
            f"Complex nullity {nullity} of chi(Delta_q(T)) for q={q} is odd."
        )
    if nullity == 0:
        return np.zeros((0, n, 4))
    kernel = vh[n * 2 - nullity :].conj().T
    preferred = []
    if not q.is_real(tol):
        z = complex(q.w, q.imag_modulus)
        restricted = kernel.conj().T @ operators.chi_matrix(T, iota) @ kernel
        _, schur_vectors, selected = scipy.linalg.schur(
            restricted,
            output="complex",
            sort=lambda x: abs(x - z) < abs(x - z.conjugate()),
        )
        eigenvectors = kernel @ schur_vectors[:, :selected]
        lifted = operators.chi_vector_inverse(eigenvectors, iota)
        preferred = list(
            hilbert.gram_schmidt(
                np.swapaxes(lifted, 0, 1), hilbert.SCALARS_H, iota, drop_dependent=True
            )
        )
    return _quaternionic_basis(kernel, nullity // 2, iota, preferred)


def _check_normal(T, tol):
    cls = operators.classify(T, tol)
    if not cls.normal:
        raise OperatorConditionError(
            f"Operator is not normal (|TT* - T*T| > {cls.tol:.3e})."
        )
    return cls


def _kernel_eigenbasis(A, kernel, scale, iota):
    """
    Orthonormal eigenbasis over H of the self-adjoint A restricted to the
    quaternionic subspace given by the complex adjoint image kernel.
    Every eigenspace gets the basis obtained from projected standard vectors.
    """
    if kernel.shape[1] == 0:
        return np.zeros((0, A.shape[0], 4))
    restricted = kernel.conj().T @ operators.chi_matrix(A, iota) @ kernel
    eigenvalues, vectors = np.linalg.eigh((restricted + restricted.conj().T) / 2)
    cluster_tol = 1e-8 * max(1.0, scale)
    bounds = [0] + [
        k + 1 for k in range(len(eigenvalues) - 1)
        if eigenvalues[k + 1] - eigenvalues[k] > cluster_tol
    ] + [len(eigenvalues)]
    basis = []
    for start, end in zip(bounds[:-1], bounds[1:]):
        if (end - start) % 2:
            raise NumericalError(
                f"Eigenvalue {eigenvalues[start]:.6g} of the self-adjoint part "
                f"has odd complex multiplicity {end - start}."
            )
        eigenspace = kernel @ vectors[:, start:end]
        basis.extend(_quaternionic_basis(eigenspace, (end - start) // 2, iota))
    return np.array(basis)


def _ajb(T, iota):
    n = T.shape[0]
    T_star = operators.adjoint(T)
    A = (T + T_star) / 2
    D = T - T_star
    # chi(D) is anti-Hermitian, so chi(|D|) follows from the eigenvectors of -i chi(D)
    image = operators.chi_matrix(D, iota)
    hermitian = -1j * image
    eigenvalues, vectors = np.linalg.eigh((hermitian + hermitian.conj().T) / 2)
    moduli = np.abs(eigenvalues)
    B = operators.chi_inverse((vectors * (moduli / 2)) @ vectors.conj().T, iota)

    cutoff = n * PINV_RTOL * max(operators.operator_norm(D), operators.operator_norm(T))
    in_range = moduli > cutoff
    logging.debug(
        "Pseudo-inverse of 2B: %d of %d directions above cut-off %.3e.",
        np.count_nonzero(in_range),
        2 * n,
        cutoff,
    )
    range_vectors = vectors[:, in_range]
    pinv_2B = (range_vectors / moduli[in_range]) @ range_vectors.conj().T
    J = operators.chi_inverse(image @ pinv_2B, iota)

    kernel_basis = _kernel_eigenbasis(
        A, vectors[:, ~in_range], operators.operator_norm(T), iota
    )
    if len(kernel_basis):
        J = J + hilbert.basis_operator(
            kernel_basis, np.tile(np.array(iota, dtype=float), (len(kernel_basis), 1))
        )
    residual = operators.operator_norm(T - A - operators.matmul(J, B))
    return AJBDecomposition(A, B, J, residual, iota)


def ajb_decompose(T, iota=I, tol=None):
    """
    Split the normal operator T as T = A + JB with A = (T + T*)/2,
    B = |T - T*|/2 and J anti self-adjoint and unitary.
    On Ker(T - T*) the operator J is defined by Jz = z iota on an orthonormal
    eigenbasis of T restricted to that kernel.
    """
    T = operators.as_qmatrix(T)
    _check_normal(T, tol)
    return _ajb(T, iota)


def _restriction_matrix(T, vectors, iota):
    columns = np.swapaxes(vectors, 0, 1)
    products = operators.matmul(operators.adjoint(columns), operators.apply(T, columns))
    return to_complex(products, iota)


def _check_commutes(T, J, tol):
    tol = operators.default_tol(T, tol)
    for name, S in (("T", T), ("T*", operators.adjoint(T))):
        deviation = operators.commutator_norm(J, S)
        if deviation > tol:
            raise OperatorConditionError(
                f"J does not commute with {name} (|[J, {name}]| = {deviation:.3e})."
            )


def complex_restriction(T, dec, iota=None, sign=1, tol=None):
    """
    Return the matrix of T restricted to H+ (sign 1) or H- (sign -1) of dec.J.
    Entry (k, m) is the C_iota coordinate of T b_m along b_k.
    """
    T = operators.as_qmatrix(T)
    iota = dec.iota if iota is None else iota
    if sign not in (1, -1):
        raise ValueError(f"sign must be 1 or -1, got {sign}")
    _check_commutes(T, dec.J, tol)
    basis = hilbert.slice_basis(dec.J, iota, tol)
    restriction = SliceRestriction(None, basis, sign)
    return restriction._replace(matrix=_restriction_matrix(T, restriction.vectors(), iota))


def _lift(vectors, coefficients, iota):
    """Return the vectors sum_k b_k c_km for complex coefficients c embedded in C_iota."""
    c = from_complex(coefficients, iota)
    return qmul(vectors[:, np.newaxis], c[:, :, np.newaxis]).sum(axis=0)


def spectral_decomposition(T, iota=I, tol=None):
    """
    Compute an orthonormal eigenbasis of the normal operator T inside H+
    and eigenvalues in C_iota with T z = z lambda_z.
    """
    T = operators.as_qmatrix(T)
    _check_normal(T, tol)
    restriction = complex_restriction(T, _ajb(T, iota), iota, tol=tol)
    schur_form, schur_vectors = scipy.linalg.schur(restriction.matrix, output="complex")
    vectors = _lift(restriction.vectors(), schur_vectors, iota)
    lambdas = from_complex(np.diag(schur_form), iota)
    basis = hilbert.HilbertBasis.create(vectors)
    residual = operators.operator_norm(T - hilbert.basis_operator(basis, lambdas))
    logging.debug("Spectral decomposition reconstructs T with residual %.3e.", residual)
    return SpectralDecomposition(basis, lambdas, iota, residual)


def canonicalize(dec, iota=None, tol=DEFAULT_TOL):
    """
    Rotate every eigenvalue into the upper half of the slice C_iota
    by replacing (z, lambda) with (z mu, mu^-1 lambda mu) for a unit quaternion mu.
    Eigenvalues in the lower half of the slice use mu = jota.
    """
    iota = dec.iota if iota is None else iota
    iota_vec = np.array(iota[1:], dtype=float)
    jota = complementary_unit(iota)
    vectors = dec.basis.vectors.copy()
    lambdas = np.array(dec.lambdas, dtype=float)
    for index, lam in enumerate(dec.eigenvalues()):
        if lam.is_real(tol):
            continue
        component = float(np.dot(iota_vec, lam[1:]))
        off_slice = np.linalg.norm(np.array(lam[1:]) - component * iota_vec)
        target = slice_representative(CircularPoint(lam.w, lam.imag_modulus, 1), iota)
        if off_slice <= tol:
            if component >= 0:
                continue
            mu = jota
        else:
            mu = similarity_unit(lam, target, tol)
        vectors[index] = qmul(vectors[index], np.array(mu, dtype=float))
        lambdas[index] = np.array(target)
    basis = hilbert.HilbertBasis.create(vectors, dec.basis.scalars)
    return SpectralDecomposition(basis, lambdas, iota, dec.residual)


def _as_basis(basis):
    if isinstance(basis, hilbert.HilbertBasis):
        return basis
    return hilbert.HilbertBasis.create(basis)


def synthesize(basis, lambdas, tol=DEFAULT_TOL):
    """
    Return the operator T x = sum_z z lambda_z <z|x> for an orthonormal
    family z and one quaternion lambda_z per vector.
    """
    basis = _as_basis(basis)
    if basis.gram_residual > tol * max(1, basis.dimension):
        raise OperatorConditionError(
            f"Basis is not orthonormal (Gram residual {basis.gram_residual:.3e})."
        )
    values = np.array([Quaternion.create(lam) for lam in lambdas], dtype=float)
    return hilbert.basis_operator(basis, values.reshape(len(values), 4))


def build_J_from_basis(basis, iota=I, tol=DEFAULT_TOL):
    """Return J x = sum_z z iota <z|x> for a Hilbert basis."""
    basis = _as_basis(basis)
    basis.check(tol * max(1, basis.dimension))
    return synthesize(basis, [iota] * len(basis), tol)


def spectral_map_check(T, coefficients, tol=DEFAULT_TOL):
    """
    Check sigma_S(P(T)) = P(sigma_S(T)) for a self-adjoint T and the real polynomial
    with the given coefficients (lowest degree first).
    """
    T = operators.as_qmatrix(T)
    if not operators.classify(T, operators.scaled_tol(T, tol)).self_adjoint:
        raise OperatorConditionError("Spectral mapping check needs a self-adjoint operator.")
    coefficients = [float(c) for c in coefficients]
    spectrum = point_spectrum(T, tol=tol, normal=True).points
    mapped = CircularSet.from_points(
        (
            CircularPoint(float(np.polynomial.polynomial.polyval(p.re, coefficients)), 0.0, p.mult)
            for p in spectrum
        ),
        tol,
    )
    actual = point_spectrum(operators.polynomial(T, coefficients), tol=tol, normal=True).points
    limit = tol * max(1.0, mapped.max_modulus())
    result = actual.matches(mapped, limit)
    logging.debug("Spectral mapping: %r versus %r", actual, mapped)
    return result


def dominant_eigenpair(T, iota=I, tol=None):
    """Return (lambda, z) with T z = z lambda and |lambda| = |T| for normal T."""
    dec = spectral_decomposition(T, iota, tol)
    index = int(np.argmax(qabs(dec.lambdas)))
    return dec.eigenvalues()[index], dec.basis.vectors[index]


def extend_from_restriction(S, basis):
    """
    Return the unique right-linear operator on H^n whose restriction to H+
    has the complex matrix S with respect to the SliceBasis basis.
    """
    S = np.asarray(S, dtype=complex)
    columns = basis.columns()
    if S.shape != (columns.shape[1], columns.shape[1]):
        raise ValueError(f"Restriction of shape {S.shape} does not fit the slice basis.")
    coefficients = from_complex(S, basis.iota)
    return operators.matmul(
        operators.matmul(columns, coefficients), operators.adjoint(columns)
    )


def split_action(T, J, iota, x, tol=None):
    """
    Compute T x as S+ P+ x + S- P- x from the restrictions S+, S- of T
    to H+ and H- and the projections P+, P-.
    """
    T = operators.as_qmatrix(T)
    x = hilbert.as_qvector(x)
    _check_commutes(T, J, tol)
    basis = hilbert.slice_basis(J, iota, tol)
    result = np.zeros_like(x)
    for sign in (1, -1):
        restriction = SliceRestriction(None, basis, sign)
        vectors = restriction.vectors()
        matrix = _restriction_matrix(T, vectors, iota)
        part = hilbert.project_pm(x, J, iota, sign, check=False)
        coordinates = to_complex(
            qmul(qconj(vectors), part[np.newaxis]).sum(axis=1), iota
        )
        result = result + _lift(vectors, (matrix @ coordinates)[:, np.newaxis], iota)[0]
    return result


def gelfand_sequence(T, k_max=4):
    """Return |T^(2^k)|^(1/2^k) for k = 0..k_max."""
    power = operators.as_qmatrix(T)
    result = []
    for k in range(k_max + 1):
        value = operators.operator_norm(power)
        result.append(value ** (1.0 / 2**k) if value > 0 else 0.0)
        power = operators.matmul(power, power)
    return result
