# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

"""
Numerical checks of the laws of quaternionic spectral theory on concrete operators,
random corpora and compact models. Every check yields a CheckResult with a
measured value and the limit it has to stay below.
"""

import collections
import functools
import logging
import math

import numpy as np

from qspectral import QSpectralException, util
from qspectral import compact, corpus, operators, spectral
from qspectral.quaternion import (
    DEFAULT_TOL,
    I,
    CircularPoint,
    CircularSet,
    circularize,
    qabs,
    qmul,
    similarity_unit,
    slice_representative,
)

# CONSTANTS

STATUS_PASS = "PASS"
"""the measured value is within the limit"""

STATUS_FAIL = "FAIL"
"""the measured value exceeds the limit, or the check raised an error"""

STATUS_SKIP = "SKIP"
"""the check does not apply to the operator"""

STATUSES = [STATUS_PASS, STATUS_FAIL, STATUS_SKIP]

NORM_TOL = 1e-8
GELFAND_TOL = 1e-6
EIGEN_TOL = 1e-7
MODEL_TOL = 1e-10


class CheckResult(collections.namedtuple("CheckResult", "name status value limit case")):
    """The outcome of one numerical check."""

    __slots__ = ()

    @classmethod
    def measure(cls, name, value, limit, case=0):
        value = float(value)
        status = STATUS_PASS if value <= limit else STATUS_FAIL
        return cls(name, status, value, limit, case)

    @classmethod
    def skip(cls, name, case=0):
        return cls(name, STATUS_SKIP, math.nan, math.nan, case)

    def format(self):
        if self.status == STATUS_SKIP:
            return f"{self.status} {self.name} case={self.case} value=- limit=-"
        return (
            f"{self.status} {self.name} case={self.case} "
            f"value={self.value:.6e} limit={self.limit:.6e}"
        )


class VerificationConfig(
    collections.namedtuple(
        "VerificationConfig", "tol iota seed non_spectrum_samples sample_vectors"
    )
):
    __slots__ = ()

    @classmethod
    def create(cls, tol=DEFAULT_TOL, iota=I, seed=0, non_spectrum_samples=50, sample_vectors=20):
        return cls(tol, iota, seed, non_spectrum_samples, sample_vectors)


def format_report(results):
    """Return the report text: one line per check and a summary line."""
    lines = [result.format() for result in results]
    counts = collections.Counter(result.status for result in results)
    lines.append(
        f"SUMMARY checks={len(results)} passed={counts[STATUS_PASS]} "
        f"failed={counts[STATUS_FAIL]} skipped={counts[STATUS_SKIP]}"
    )
    return "\n".join(lines) + "\n"


def has_failures(results):
    return any(result.status == STATUS_FAIL for result in results)


def spectrum_distance(a, b):
    """Largest coordinate distance between two circular sets, inf if they do not pair up."""
    if len(a) != len(b):
        return math.inf
    distance = 0.0
    for p, q in zip(a, b):
        if p.mult != q.mult:
            return math.inf
        distance = max(distance, abs(p.re - q.re), abs(p.im - q.im))
    return distance


class _Checks(object):
    """Collects CheckResults, turning exceptions of single checks into failures."""

    def __init__(self, case):
        self.case = case
        self.results = []

    def measure(self, name, compute, limit):
        try:
            value = compute()
        except (QSpectralException, ValueError, np.linalg.LinAlgError) as e:
            logging.warning("Check %s failed for case %s: %s", name, self.case, e)
            value = math.inf
        self.results.append(CheckResult.measure(name, value, limit, self.case))

    def skip(self, name):
        self.results.append(CheckResult.skip(name, self.case))

    def run(self, name, function, *args, **kwargs):
        """Run a group of checks, a failure of the group itself is reported as name."""
        try:
            function(*args, **kwargs)
        except (QSpectralException, ValueError, np.linalg.LinAlgError) as e:
            logging.warning("Checks %s failed for case %s: %s", name, self.case, e)
            self.results.append(CheckResult.measure(name, math.inf, 0, self.case))


def _slice_deviation(lambdas, iota):
    """Largest distance of the given quaternions from the slice C_iota."""
    iota_vec = np.array(iota[1:], dtype=float)
    imag = np.asarray(lambdas, dtype=float)[:, 1:]
    along = imag @ iota_vec
    return float(np.max(np.linalg.norm(imag - along[:, np.newaxis] * iota_vec, axis=-1), initial=0.0))


def _eigen_relation_residual(T, points, tol, iota=I):
    """
    For every spectrum point and its slice representative q, check that the
    eigensphere kernel is non-empty and that its vectors u satisfy T(u mu) = (u mu) q
    for a unit quaternion mu.
    """
    worst = 0.0
    for point in points:
        q = slice_representative(point, iota)
        kernel = spectral.eigensphere_kernel(T, q, tol, iota)
        if len(kernel) == 0:
            return math.inf
        for u in kernel:
            best = math.inf
            for rep in (q, slice_representative(point, iota, "lower")):
                mu = np.array(similarity_unit(rep, q, 1e-6), dtype=float)
                u_mu = qmul(u, mu)
                residual = np.linalg.norm(
                    operators.apply(T, u_mu) - qmul(u_mu, np.array(q, dtype=float))
                )
                best = min(best, residual)
            worst = max(worst, best)
    return worst


def _rank_nullity_deviation(T, points, iota=I):
    """Compare multiplicities with half the complex nullity computed by matrix_rank."""
    n = T.shape[0]
    worst = 0
    for point in points:
        image = operators.chi_matrix(operators.delta_q(T, slice_representative(point, iota)), iota)
        nullity = 2 * n - np.linalg.matrix_rank(image, tol=1e-8 * max(1.0, np.linalg.norm(image, 2)))
        worst = max(worst, abs(nullity - 2 * point.mult))
    return worst


def _non_spectrum_kernels(T, spectrum, rng, samples, tol, iota=I):
    found = 0
    for _ in range(samples):
        q = corpus.non_spectrum_point(rng, spectrum)
        if len(spectral.eigensphere_kernel(T, q, tol, iota)):
            found += 1
    return found


def _norm_sampling_excess(T, rng, samples):
    norm = operators.operator_norm(T)
    excess = 0.0
    for _ in range(samples):
        u = corpus.random_vector(rng, T.shape[0])
        ratio = np.linalg.norm(operators.apply(T, u)) / np.linalg.norm(u)
        excess = max(excess, ratio - norm)
    return excess


def _ajb_checks(checks, T, operator_tol, iota=I):
    dec = spectral.ajb_decompose(T, iota, operator_tol)
    A, B, J = dec.A, dec.B, dec.J
    n = T.shape[0]
    scale = max(1.0, operators.operator_norm(T))
    limit = NORM_TOL * scale
    D = T - operators.adjoint(T)
    checks.measure("ajb-sum", lambda: dec.residual, limit)
    checks.measure("ajb-a-self-adjoint", lambda: operators.operator_norm(A - operators.adjoint(A)), limit)
    checks.measure(
        "ajb-b-positive",
        lambda: max(
            operators.operator_norm(B - operators.adjoint(B)),
            -np.linalg.eigvalsh(operators.chi_matrix((B + operators.adjoint(B)) / 2))[0],
        ),
        limit,
    )
    checks.measure(
        "ajb-j-anti-self-adjoint-unitary",
        lambda: max(
            operators.operator_norm(J + operators.adjoint(J)),
            operators.operator_norm(operators.matmul(operators.adjoint(J), J) - operators.identity(n)),
        ),
        NORM_TOL,
    )
    checks.measure(
        "ajb-commute",
        lambda: max(
            operators.commutator_norm(A, B),
            operators.commutator_norm(A, J),
            operators.commutator_norm(B, J),
            operators.commutator_norm(J, T),
            operators.commutator_norm(J, operators.adjoint(T)),
        ),
        limit,
    )
    checks.measure(
        "ajb-uniqueness",
        lambda: max(
            operators.operator_norm(A - (T + operators.adjoint(T)) / 2),
            operators.operator_norm(
                4 * operators.matmul(B, B) - operators.matmul(operators.adjoint(D), D)
            ) / scale,
            operators.operator_norm(2 * operators.matmul(J, B) - D),
        ),
        limit,
    )
    return dec


def _decomposition_checks(checks, T, spectrum, tol, iota=I, suffix="", operator_tol=None):
    dec = spectral.spectral_decomposition(T, iota, operator_tol)
    scale = max(1.0, operators.operator_norm(T))
    checks.measure("decomposition-residual" + suffix, lambda: dec.residual, NORM_TOL * scale)
    checks.measure("decomposition-in-slice" + suffix, lambda: _slice_deviation(dec.lambdas, iota), NORM_TOL * scale)
    checks.measure(
        "decomposition-spectrum" + suffix,
        lambda: spectrum_distance(
            circularize(dec.lambdas, tol).without_zero(tol), spectrum.without_zero(tol)
        ),
        NORM_TOL * scale,
    )
    J = spectral.ajb_decompose(T, iota, operator_tol).J
    iota_array = np.array(iota, dtype=float)

    def plus_deviation():
        columns = dec.basis.columns()
        return np.max(
            qabs(operators.apply(J, columns) - qmul(columns, iota_array)), initial=0.0
        )

    checks.measure("decomposition-in-plus-space" + suffix, plus_deviation, NORM_TOL)

    def built_j_deviation():
        J_N = spectral.build_J_from_basis(dec.basis, iota)
        cls = operators.classify(J_N)
        if not (cls.anti_self_adjoint and cls.unitary):
            return math.inf
        columns = dec.basis.columns()
        return np.max(
            qabs(operators.apply(J_N, columns) - qmul(columns, iota_array)), initial=0.0
        )

    checks.measure("build-j" + suffix, built_j_deviation, NORM_TOL)

    def canonical_deviation():
        canonical = spectral.canonicalize(dec, iota, tol)
        iota_vec = np.array(iota[1:], dtype=float)
        lower = max(
            (-float(np.dot(lam[1:], iota_vec)) for lam in canonical.lambdas), default=0.0
        )
        return max(
            lower,
            _slice_deviation(canonical.lambdas, iota),
            operators.operator_norm(T - spectral.synthesize(canonical.basis, canonical.lambdas)) / scale,
        )

    checks.measure("canonicalize" + suffix, canonical_deviation, NORM_TOL)
    return dec


def verify_matrix(T, config=None, case=0, rng=None):
    """
    Check all laws that apply to the operator T and return a list of CheckResults.
    The checks depend on the classification of T (normal, self-adjoint, ...).
    """
    config = config or VerificationConfig.create()
    rng = rng or np.random.default_rng(config.seed)
    T = operators.as_qmatrix(T)
    tol = config.tol
    checks = _Checks(case)
    operator_tol = operators.scaled_tol(T, tol)
    cls = operators.classify(T, operator_tol)
    result = spectral.point_spectrum(T, config.iota, tol, normal=cls.normal)
    spectrum = result.points
    scale = max(1.0, operators.operator_norm(T))

    checks.measure(
        "spectrum-adjoint",
        lambda: spectrum_distance(
            spectrum,
            spectral.point_spectrum(operators.adjoint(T), config.iota, tol, cls.normal).points,
        ),
        NORM_TOL * scale,
    )
    checks.measure(
        "norm-sampling", lambda: _norm_sampling_excess(T, rng, config.sample_vectors), NORM_TOL * scale
    )
    if not cls.normal:
        for name in ["norm-equals-radius", "eigen-oracle", "decomposition"]:
            checks.skip(name)
        return checks.results

    checks.measure(
        "norm-equals-radius",
        lambda: abs(result.radius - operators.operator_norm(T)),
        NORM_TOL * scale,
    )
    checks.measure(
        "gelfand",
        lambda: max(abs(g - result.radius) for g in spectral.gelfand_sequence(T, 4)),
        GELFAND_TOL * scale,
    )
    checks.measure("eigen-oracle", lambda: _eigen_relation_residual(T, spectrum, tol, config.iota), EIGEN_TOL * scale)
    checks.measure("eigen-rank-oracle", lambda: _rank_nullity_deviation(T, spectrum, config.iota), 0)
    checks.measure(
        "non-spectrum-oracle",
        lambda: _non_spectrum_kernels(
            T, spectrum, rng, config.non_spectrum_samples, tol, config.iota
        ),
        0,
    )
    checks.run("ajb", _ajb_checks, checks, T, operator_tol, config.iota)
    checks.run(
        "decomposition",
        _decomposition_checks,
        checks,
        T,
        spectrum,
        tol,
        config.iota,
        operator_tol=operator_tol,
    )

    alternative = corpus.slice_test_unit()
    checks.measure(
        "slice-independence",
        lambda: spectrum_distance(
            spectral.point_spectrum(T, alternative, tol, normal=True).points, spectrum
        ),
        NORM_TOL * scale,
    )
    checks.run(
        "decomposition-alt-slice",
        _decomposition_checks,
        checks,
        T,
        spectrum,
        tol,
        alternative,
        suffix="-alt-slice",
        operator_tol=operator_tol,
    )

    points = list(spectrum)
    if cls.self_adjoint:
        checks.measure("self-adjoint-real", lambda: max(p.im for p in points), 1e-9)
        coefficients = corpus.random_real_polynomial(rng)
        checks.measure(
            "spectral-map",
            lambda: 0.0 if spectral.spectral_map_check(T, coefficients, NORM_TOL) else math.inf,
            0,
        )
    else:
        checks.skip("self-adjoint-real")
        checks.skip("spectral-map")
    if cls.anti_self_adjoint:
        checks.measure("anti-self-adjoint-imaginary", lambda: max(abs(p.re) for p in points), 1e-9)
    else:
        checks.skip("anti-self-adjoint-imaginary")
    if cls.unitary:
        checks.measure("unitary-moduli", lambda: max(abs(p.modulus - 1) for p in points), NORM_TOL)
    else:
        checks.skip("unitary-moduli")
    if cls.anti_self_adjoint and cls.unitary:
        checks.measure(
            "anti-self-adjoint-unitary-sphere",
            lambda: spectrum_distance(spectrum, CircularSet([CircularPoint(0.0, 1.0, T.shape[0])])),
            NORM_TOL,
        )
    else:
        checks.skip("anti-self-adjoint-unitary-sphere")
    return checks.results


def _synthesis_checks(rng, n, case, tol):
    """Synthesize an operator from a random basis and scattered eigenvalues."""
    checks = _Checks(case)
    basis = corpus.random_basis(rng, n)
    lambdas = corpus.scattered_lambdas(rng, n)
    T = spectral.synthesize(basis, lambdas)
    scale = max(1.0, float(np.max(qabs(lambdas))))
    checks.measure(
        "synthesis-normal",
        lambda: operators.commutator_norm(T, operators.adjoint(T)) / scale**2,
        1e-9 * max(1, n),
    )
    checks.measure(
        "synthesis-spectrum",
        lambda: spectrum_distance(
            spectral.point_spectrum(T, tol=tol, normal=True).points.without_zero(NORM_TOL),
            circularize(lambdas, tol).without_zero(NORM_TOL),
        ),
        NORM_TOL * scale,
    )
    return checks.results


def _verify_case(n, config, case, rng):
    T = corpus.random_normal(rng, n)
    results = verify_matrix(T, config, case, rng)
    # eigenspheres with a common real part
    results.extend(
        r._replace(name=r.name + "-anti-self-adjoint")
        for r in verify_matrix(corpus.random_anti_self_adjoint(rng, n), config, case, rng)
    )
    results.extend(_synthesis_checks(rng, n, case, config.tol))
    general = corpus.random_matrix(rng, n)
    checks = _Checks(case)
    checks.measure(
        "spectrum-adjoint-general",
        lambda: spectrum_distance(
            spectral.point_spectrum(general, config.iota, config.tol, normal=False).points,
            spectral.point_spectrum(operators.adjoint(general), config.iota, config.tol, normal=False).points,
        ),
        NORM_TOL * max(1.0, operators.operator_norm(general)),
    )
    return results + checks.results


def verify_random(n, count, config=None, executor=None):
    """
    Verify count random normal operators of dimension n, generated from
    independent random streams spawned from config.seed.
    """
    config = config or VerificationConfig.create()
    executor = executor or util.DummyExecutor()
    rngs = corpus.case_generators(config.seed, count)
    results = []
    for case_results in executor.map(
        functools.partial(_verify_case, n, config), range(count), rngs
    ):
        results.extend(case_results)
    return results


def verify_model(model, levels, config=None, executor=None, reports=None):
    """
    Check the laws of compact normal operators on the truncations of a model.
    @param reports: the TruncationReports of the levels, computed if None
    """
    config = config or VerificationConfig.create()
    if reports is None:
        reports = compact.verify_compact_laws(model, levels, executor, config.tol)
    results = []
    previous = None
    for report in reports:
        checks = _Checks(report.N)
        checks.measure(
            "norm-equals-max-modulus",
            lambda: abs(report.norm - report.max_modulus),
            MODEL_TOL * max(1.0, report.norm),
        )
        if model.tail is not None:
            last = float(model.tail.moduli([report.N])[0])
            checks.measure(
                "zero-accumulation", lambda: report.min_modulus - last, MODEL_TOL
            )
        if previous is not None:
            checks.measure(
                "min-modulus-monotone",
                lambda: report.min_modulus - previous.min_modulus,
                MODEL_TOL,
            )
            checks.measure(
                "tail-norm",
                lambda: abs(
                    compact.truncation_gap(model, previous.N, report.N) - previous.tail_norm
                ),
                MODEL_TOL,
            )
            checks.measure(
                "eigensphere-dimensions",
                lambda: _sphere_mismatches(previous, report, previous.tail_norm),
                0,
            )
        results.extend(checks.results)
        previous = report

    last = reports[-1]
    checks = _Checks(last.N)
    for eps in (0.35, 0.035, 0.0035):
        if eps > last.tail_norm:
            checks.measure(
                f"lambda-eps-{eps:g}",
                lambda: abs(
                    len(compact.lambda_eps(model, eps))
                    - sum(p.mult for p in last.spectrum if p.modulus >= eps)
                ),
                0,
            )
    results.extend(checks.results)

    first = reports[0]
    checks = _Checks(first.N)
    iota = model.iota

    def synthesis_round_trip():
        form = compact.spectral_form(model, first.N, iota)
        canonical = spectral.canonicalize(form, iota)
        T = compact.truncate(model, first.N)
        scale = max(1.0, first.norm)
        return max(
            form.residual,
            operators.operator_norm(T - spectral.synthesize(canonical.basis, canonical.lambdas)),
            _slice_deviation(canonical.lambdas, iota),
        ) / scale

    checks.measure("spectral-form-round-trip", synthesis_round_trip, NORM_TOL)
    results.extend(checks.results)
    return results


def _sphere_mismatches(coarse, fine, threshold):
    """Count spheres above threshold whose multiplicities differ between two reports."""
    a = [p for p in coarse.spectrum if p.modulus > threshold]
    b = [p for p in fine.spectrum if p.modulus > threshold]
    if len(a) != len(b):
        return abs(len(a) - len(b))
    return sum(1 for p, q in zip(a, b) if p.mult != q.mult)
