# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

"""
Right H-linear operators on H^n, stored as quaternion arrays of shape (n, n, 4).

The matrix T acts on column vectors by (Tu)_m = sum_k T_mk u_k, which is
right H-linear. Spectral computations go through the complex adjoint image
chi(T) with respect to an imaginary unit iota: every entry is split as
t = alpha + beta jota with alpha, beta in C_iota, and T = A + B jota is mapped to
the 2n x 2n complex block matrix [[A, B], [-conj(B), conj(A)]].
"""

import collections
import logging

import numpy as np
import scipy.sparse
import scipy.sparse.csgraph

from qspectral import NumericalError, OperatorConditionError
from qspectral.quaternion import (
    DEFAULT_TOL,
    I,
    Quaternion,
    join_frame,
    qabs,
    qconj,
    split_frame,
)


class ComplexAdjointImage(collections.namedtuple("ComplexAdjointImage", "iota matrix")):
    """The complex adjoint image chi(T) of a quaternionic matrix for the slice iota."""

    __slots__ = ()


class OperatorClass(
    collections.namedtuple(
        "OperatorClass",
        "normal self_adjoint anti_self_adjoint unitary positive tol",
    )
):
    """Classification flags of an operator, computed with the given tolerance."""

    __slots__ = ()

    def names(self):
        return [
            name
            for name in self._fields
            if name != "tol" and getattr(self, name) is True
        ]


def as_qmatrix(T, square=True):
    """Convert a value to a quaternion matrix and check its shape."""
    T = np.asarray(T, dtype=float)
    if T.ndim != 3 or T.shape[-1] != 4:
        raise ValueError(f"A quaternion matrix needs shape (n, m, 4), got {T.shape}")
    if square and T.shape[0] != T.shape[1]:
        raise ValueError(f"Operation requires a square matrix, got shape {T.shape}")
    return T


def identity(n):
    T = np.zeros((n, n, 4))
    T[np.arange(n), np.arange(n), 0] = 1.0
    return T


def diag(values):
    """Diagonal quaternion matrix with the given quaternions on the diagonal."""
    values = [Quaternion.create(v) for v in values]
    n = len(values)
    T = np.zeros((n, n, 4))
    if n:
        T[np.arange(n), np.arange(n)] = np.array(values, dtype=float)
    return T


def _split(T):
    return T[..., 0] + 1j * T[..., 1], T[..., 2] + 1j * T[..., 3]


def _join(a, b):
    return np.stack([a.real, a.imag, b.real, b.imag], axis=-1)


def matmul(P, Q):
    """
    Product of quaternion matrices (or of a matrix and a vector).
    With P = Pa + Pb j and Q = Qa + Qb j this is
    (Pa Qa - Pb conj(Qb)) + (Pa Qb + Pb conj(Qa)) j.
    """
    pa, pb = _split(np.asarray(P, dtype=float))
    qa, qb = _split(np.asarray(Q, dtype=float))
    return _join(pa @ qa - pb @ qb.conj(), pa @ qb + pb @ qa.conj())


def apply(T, u):
    """Apply the operator T to the vector (or the column block) u."""
    T = as_qmatrix(T, square=False)
    u = np.asarray(u, dtype=float)
    if u.ndim < 2 or u.shape[-1] != 4 or u.shape[0] != T.shape[1]:
        raise ValueError(
            f"Dimension mismatch: matrix of shape {T.shape[:2]} "
            f"applied to vector of shape {u.shape[:-1]}"
        )
    return matmul(T, u)


def adjoint(T):
    """Quaternionic conjugate transpose: (T*)_mk = conj(T_km)."""
    T = as_qmatrix(T, square=False)
    return qconj(np.swapaxes(T, 0, 1))


def chi_matrix(T, iota=I):
    """Return chi(T) as complex numpy array (see module documentation)."""
    A, B = split_frame(T, iota)
    return np.block([[A, B], [-B.conj(), A.conj()]])


def chi(T, iota=I):
    """Return the complex adjoint image of T for the slice iota."""
    return ComplexAdjointImage(iota, chi_matrix(as_qmatrix(T, square=False), iota))


def chi_inverse(image, iota=None):
    """
    Recover the quaternion matrix from a complex adjoint image.
    Only the upper block row is read, so the result is the quaternionic matrix
    whose image agrees with the given one on [[A, B], ...].
    """
    if isinstance(image, ComplexAdjointImage):
        iota = image.iota if iota is None else iota
        image = image.matrix
    iota = I if iota is None else iota
    image = np.asarray(image)
    rows, cols = image.shape
    if rows % 2 or cols % 2:
        raise ValueError(f"Complex adjoint image needs even shape, got {image.shape}")
    n, m = rows // 2, cols // 2
    return join_frame(image[:n, :m], image[:n, m:], iota)


def chi_vector(u, iota=I):
    """
    Embed vectors u = alpha + beta jota (shape (n, ..., 4)) as complex vectors
    (alpha, -conj(beta)) of length 2n, compatible with chi:
    chi(T) chi_vector(u) = chi_vector(Tu) and chi_vector(u c) = chi_vector(u) c
    for c in C_iota.
    """
    alpha, beta = split_frame(u, iota)
    return np.concatenate([alpha, -beta.conj()], axis=0)


def chi_vector_inverse(v, iota=I):
    """Inverse of chi_vector."""
    v = np.asarray(v, dtype=complex)
    if v.shape[0] % 2:
        raise ValueError(f"Complex vector needs even length, got {v.shape[0]}")
    n = v.shape[0] // 2
    return join_frame(v[:n], -v[n:].conj(), iota)


def diagonal_blocks(T):
    """
    Return the index sets of the irreducible diagonal blocks of T,
    i.e., the connected components of the graph of non-zero entries.
    """
    n = T.shape[0]
    if n == 1:
        return [np.arange(1)]
    pattern = scipy.sparse.csr_matrix(np.any(T != 0, axis=-1))
    count, labels = scipy.sparse.csgraph.connected_components(pattern, directed=False)
    if count == 1:
        return [np.arange(n)]
    order = np.argsort(labels, kind="stable")
    bounds = np.cumsum(np.bincount(labels, minlength=count))[:-1]
    blocks = np.split(order, bounds)
    return sorted(blocks, key=lambda block: block[0])


def operator_norm(T):
    """
    Operator norm sup |Tu| / |u|, computed as largest singular value of chi(T).
    Block-diagonal matrices are handled block by block.
    """
    T = as_qmatrix(T)
    blocks = diagonal_blocks(T)
    if len(blocks) == 1:
        return _block_norm(T)
    return max(_block_norm(T[np.ix_(block, block)]) for block in blocks)


def _block_norm(T):
    if T.shape[0] == 1:
        return float(qabs(T[0, 0]))
    return float(np.linalg.norm(chi_matrix(T), 2))


def operator_abs(S, tol=DEFAULT_TOL):
    """
    Return |S|, the positive square root of S*S, computed from the
    eigendecomposition of the Hermitian matrix chi(S*S).
    """
    S = as_qmatrix(S)
    product = chi_matrix(matmul(adjoint(S), S))
    product = (product + product.conj().T) / 2
    eigenvalues, vectors = np.linalg.eigh(product)
    limit = tol * max(1.0, abs(eigenvalues[-1]))
    if eigenvalues[0] < -limit:
        raise NumericalError(
            f"S*S has negative eigenvalue {eigenvalues[0]:.3e} below -{limit:.3e}"
        )
    roots = np.sqrt(np.clip(eigenvalues, 0, None))
    return chi_inverse((vectors * roots) @ vectors.conj().T)


def delta_q(T, q):
    """Return Delta_q(T) = T^2 - T (q + conj(q)) + I |q|^2."""
    T = as_qmatrix(T)
    q = Quaternion.create(q)
    norm2 = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z
    return matmul(T, T) - T * (2 * q.w) + identity(T.shape[0]) * norm2


def polynomial(T, coefficients):
    """
    Evaluate the real polynomial c_0 + c_1 X + ... + c_d X^d at T (Horner scheme).
    Coefficients are given with the lowest degree first.
    """
    T = as_qmatrix(T)
    n = T.shape[0]
    coefficients = [float(c) for c in coefficients]
    if not coefficients:
        return np.zeros_like(T)
    result = identity(n) * coefficients[-1]
    for c in reversed(coefficients[:-1]):
        result = matmul(result, T) + identity(n) * c
    return result


def commutator_norm(S, T):
    return operator_norm(matmul(S, T) - matmul(T, S))


def scaled_tol(T, tol=DEFAULT_TOL):
    """The tolerance of operator identities on T: tol times the dimension."""
    return tol * max(1, as_qmatrix(T).shape[0])


def default_tol(T, tol=None):
    """The classification tolerance: tol if given, else DEFAULT_TOL times the dimension."""
    return tol if tol is not None else scaled_tol(T)


def classify(T, tol=None):
    """Classify T as normal, self-adjoint, anti self-adjoint, unitary and positive."""
    T = as_qmatrix(T)
    tol = default_tol(T, tol)
    T_star = adjoint(T)
    self_adjoint = operator_norm(T - T_star) <= tol
    positive = False
    if self_adjoint:
        hermitian = chi_matrix((T + T_star) / 2)
        smallest = np.linalg.eigvalsh((hermitian + hermitian.conj().T) / 2)[0]
        positive = bool(smallest >= -tol)
    result = OperatorClass(
        normal=commutator_norm(T, T_star) <= tol,
        self_adjoint=self_adjoint,
        anti_self_adjoint=operator_norm(T + T_star) <= tol,
        unitary=operator_norm(matmul(T_star, T) - identity(T.shape[0])) <= tol,
        positive=positive,
        tol=tol,
    )
    logging.debug("Operator of dimension %d classified as %s.", T.shape[0], result)
    return result


def check_anti_self_adjoint_unitary(J, tol=None):
    """Raise OperatorConditionError unless J is anti self-adjoint and unitary."""
    J = as_qmatrix(J)
    tol = default_tol(J, tol)
    J_star = adjoint(J)
    if operator_norm(J + J_star) > tol:
        raise OperatorConditionError("J is not anti self-adjoint.")
    if operator_norm(matmul(J_star, J) - identity(J.shape[0])) > tol:
        raise OperatorConditionError("J is not unitary.")
