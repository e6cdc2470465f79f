# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

"""
Finite truncations of compact normal operators.

A CompactModel consists of an optional normal head block and a tail rule
n -> lambda_n of eigenvalues that vanish at infinity. The truncation at level N
is the block-diagonal matrix diag(head, lambda_1, ..., lambda_N).
"""

import collections
import logging

import numpy as np

from qspectral import FormatError, util
from qspectral import operators, spectral
from qspectral.hilbert import HilbertBasis
from qspectral.quaternion import (
    DEFAULT_TOL,
    I,
    ImaginaryUnit,
    Quaternion,
    from_complex,
    qconj,
    qmul,
)

HARMONIC = "harmonic"
GEOMETRIC = "geometric"
POWER = "power"
FAMILIES = [HARMONIC, GEOMETRIC, POWER]

MAX_LEVEL = 2000
"""Default upper bound for truncation levels."""

_CHUNK = 1024


class TailRule(
    collections.namedtuple("TailRule", "family params iota rotation_seed")
):
    """
    The eigenvalue tail n -> lambda_n (n >= 1) of a compact model:
    harmonic c/n, geometric c r^n with |r| < 1, power c/n^p with p > 0.
    The coefficient c is a complex number in the slice C_iota.
    If rotation_seed is given, every lambda_n is conjugated by a random unit
    quaternion, which keeps its modulus but moves it off the slice.
    """

    __slots__ = ()

    @classmethod
    def create(cls, family, params=None, iota=I, rotation_seed=None):
        params = dict(params or {})
        if family not in FAMILIES:
            raise FormatError(
                f"Unknown tail family '{family}', expected one of {FAMILIES}"
            )
        allowed = {HARMONIC: {"c"}, GEOMETRIC: {"c", "r"}, POWER: {"c", "p"}}[family]
        unknown = set(params) - allowed
        if unknown:
            raise FormatError(
                f"Unknown parameters {sorted(unknown)} for tail family '{family}'"
            )
        c = params.get("c", [0.0, 1.0])
        try:
            c = complex(*(float(v) for v in c)) if isinstance(c, (list, tuple)) else complex(c)
        except (TypeError, ValueError):
            raise FormatError(f"Invalid tail coefficient c={params.get('c')!r}")
        params["c"] = c
        if family == GEOMETRIC:
            r = _float_param(params, "r", family)
            if not abs(r) < 1:
                raise FormatError(f"Geometric tail needs |r| < 1, got r={r}")
        elif family == POWER:
            p = _float_param(params, "p", family)
            if not p > 0:
                raise FormatError(f"Power tail needs p > 0, got p={p}")
        try:
            iota = ImaginaryUnit.create(iota, normalize=True)
        except ValueError as e:
            raise FormatError(f"Invalid tail slice: {e}")
        return cls(family, params, iota, rotation_seed)

    def moduli(self, indices):
        """Return |lambda_n| for an array of indices n >= 1."""
        return np.abs(self._complex_values(indices))

    def _complex_values(self, indices):
        n = np.asarray(indices, dtype=float)
        c = self.params["c"]
        if self.family == HARMONIC:
            return c / n
        elif self.family == GEOMETRIC:
            return c * self.params["r"] ** n
        else:
            return c / n ** self.params["p"]

    def values(self, indices):
        """Return lambda_n for an array of indices n >= 1 as quaternion array."""
        indices = np.asarray(indices, dtype=int)
        if np.any(indices < 1):
            raise ValueError("Tail indices start at 1.")
        values = from_complex(self._complex_values(indices), self.iota)
        if self.rotation_seed is None or len(indices) == 0:
            return values
        mu = np.array([_rotation(self.rotation_seed, n) for n in indices])
        return qmul(qmul(qconj(mu), values), mu).reshape(values.shape)


def _float_param(params, name, family):
    if name not in params:
        raise FormatError(f"Tail family '{family}' needs parameter '{name}'")
    try:
        params[name] = float(params[name])
    except (TypeError, ValueError):
        raise FormatError(f"Invalid tail parameter {name}={params[name]!r}")
    return params[name]


def _rotation(seed, n):
    """The random unit quaternion for tail index n, independent of the range."""
    q = np.random.default_rng([seed, int(n)]).normal(size=4)
    return q / np.linalg.norm(q)


class CompactModel(collections.namedtuple("CompactModel", "head tail N")):
    """
    A compact normal operator given by a finite normal head block (QMatrix or None),
    a TailRule (or None), and the truncation level N.
    """

    __slots__ = ()

    @property
    def iota(self):
        return self.tail.iota if self.tail is not None else I

    @property
    def head_size(self):
        return 0 if self.head is None else self.head.shape[0]


class TruncationReport(
    collections.namedtuple(
        "TruncationReport", "N tail_norm spectrum min_modulus norm max_modulus"
    )
):
    """Spectral data of the truncation of a CompactModel at level N."""

    __slots__ = ()

    @property
    def min_modulus_rate(self):
        """min_modulus * N, constant for harmonic tails without head."""
        return self.min_modulus * self.N


def tail_values(rule, start, stop):
    """Return lambda_n for start <= n < stop as quaternion array of shape (stop-start, 4)."""
    if start < 1 or stop < start:
        raise ValueError(f"Invalid tail range [{start}, {stop})")
    return rule.values(np.arange(start, stop))


def tail_norm(rule, N):
    """Return sup |lambda_n| for n > N, which is |lambda_{N+1}| as moduli do not increase."""
    if rule is None:
        return 0.0
    return float(rule.moduli([N + 1])[0])


def _check_level(N, max_level):
    if N is None or N < 1:
        raise ValueError(f"Truncation level must be at least 1, got {N}")
    if max_level is not None and N > max_level:
        raise ValueError(f"Truncation level {N} exceeds the maximum {max_level}")


def _tail_block(model, N, max_level):
    if model.tail is None:
        return np.zeros((0, 4))
    _check_level(N, max_level)
    return tail_values(model.tail, 1, N + 1)


def truncate(model, N=None, max_level=MAX_LEVEL):
    """Return the block-diagonal matrix diag(head, lambda_1, ..., lambda_N)."""
    N = model.N if N is None else N
    tail = _tail_block(model, N, max_level)
    h = model.head_size
    size = h + len(tail)
    if size == 0:
        raise FormatError("Compact model has neither head nor tail.")
    T = np.zeros((size, size, 4))
    if h:
        T[:h, :h] = model.head
    T[np.arange(h, size), np.arange(h, size)] = tail
    return T


def _head_decomposition(model, iota=None):
    iota = model.iota if iota is None else iota
    return spectral.spectral_decomposition(model.head, iota)


def lambda_eps(model, eps):
    """
    Return the finite list of eigenvalues lambda of the model with |lambda| >= eps
    (head eigenvalues first, then the tail in order).
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    result = []
    if model.head is not None:
        for lam in _head_decomposition(model).eigenvalues():
            if abs(lam) >= eps:
                result.append(lam)
    if model.tail is None:
        return result
    start = 1
    while True:
        indices = np.arange(start, start + _CHUNK)
        moduli = model.tail.moduli(indices)
        retained = indices[moduli >= eps]
        result.extend(
            Quaternion(*(float(c) for c in value))
            for value in model.tail.values(retained)
        )
        if len(retained) < len(indices):
            break
        start += _CHUNK
    return result


def _truncation_report(model, N, tol=DEFAULT_TOL):
    T = truncate(model, N)
    spectrum = spectral.point_spectrum(T, model.iota, tol, normal=True).points
    report = TruncationReport(
        N=N,
        tail_norm=tail_norm(model.tail, N),
        spectrum=spectrum,
        min_modulus=spectrum.min_modulus(),
        norm=operators.operator_norm(T),
        max_modulus=spectrum.max_modulus(),
    )
    logging.debug(
        "Truncation at N=%d: norm %.17g, min modulus %.17g, tail norm %.17g.",
        N,
        report.norm,
        report.min_modulus,
        report.tail_norm,
    )
    return report


def verify_compact_laws(model, levels, executor=None, tol=DEFAULT_TOL):
    """
    Compute a TruncationReport for every level (ordered like levels).
    Deviations from the laws of compact normal operators are logged
    as warnings; verification.verify_model turns them into checks.
    """
    levels = list(levels)
    if any(a >= b for a, b in zip(levels, levels[1:])):
        raise ValueError(f"Truncation levels must be increasing, got {levels}")
    for N in levels:
        _check_level(N, MAX_LEVEL)
    executor = executor or util.DummyExecutor()
    reports = list(
        executor.map(_truncation_report, [model] * len(levels), levels, [tol] * len(levels))
    )
    previous = None
    for report in reports:
        limit = tol * max(1.0, report.norm)
        if abs(report.norm - report.max_modulus) > limit:
            logging.warning(
                "At N=%d the norm %.17g differs from the largest eigenvalue modulus %.17g.",
                report.N,
                report.norm,
                report.max_modulus,
            )
        if previous is not None and report.min_modulus > previous.min_modulus + limit:
            logging.warning(
                "Minimal eigenvalue modulus increases from N=%d to N=%d.",
                previous.N,
                report.N,
            )
        previous = report
    return reports


def truncation_gap(model, N, M):
    """Return |T_M - T_N| with T_N padded by zeros, for N < M."""
    if not N < M:
        raise ValueError(f"Need N < M, got N={N} and M={M}")
    T_M = truncate(model, M)
    T_N = np.zeros_like(T_M)
    block = truncate(model, N)
    size = block.shape[0]
    T_N[:size, :size] = block
    return operators.operator_norm(T_M - T_N)


def spectral_form(model, N=None, iota=None):
    """
    Return the SpectralDecomposition of the truncation at level N assembled from
    the decomposition of the head and the tail values (eigenvectors e_m).
    Rotated tails yield eigenvalues outside of the slice.
    """
    N = model.N if N is None else N
    iota = model.iota if iota is None else iota
    h = model.head_size
    tail = _tail_block(model, N, MAX_LEVEL)
    size = h + len(tail)
    vectors = np.zeros((size, size, 4))
    lambdas = np.zeros((size, 4))
    if h:
        head = _head_decomposition(model, iota)
        vectors[:h, :h] = head.basis.vectors
        lambdas[:h] = head.lambdas
    vectors[np.arange(h, size), np.arange(h, size), 0] = 1.0
    lambdas[h:] = tail
    basis = HilbertBasis.create(vectors)
    residual = operators.operator_norm(
        truncate(model, N) - spectral.synthesize(basis, lambdas)
    )
    return spectral.SpectralDecomposition(basis, lambdas, iota, residual)


def min_modulus_rate(reports):
    """Return min_modulus * N per report, which is constant for harmonic tails."""
    return [report.min_modulus_rate for report in reports]

