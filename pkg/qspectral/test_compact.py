# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

import math
import sys
import unittest

import numpy as np

from qspectral import FormatError
from qspectral import compact, operators, spectral
from qspectral.compact import CompactModel, TailRule
from qspectral.quaternion import I, Quaternion, qabs

sys.dont_write_bytecode = True  # prevent creation of .pyc files


def harmonic(N=1, head=None, **kwargs):
    return CompactModel(head, TailRule.create(compact.HARMONIC, **kwargs), N)


def imaginary_diagonal(values):
    return operators.diag([Quaternion(0.0, v, 0.0, 0.0) for v in values])


class TestTailRule(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_defaults(self):
        rule = TailRule.create(compact.HARMONIC)
        self.assertEqual(rule.params, {"c": 1j})
        self.assertEqual(rule.iota, I)
        self.assertIsNone(rule.rotation_seed)

    def test_invalid(self):
        self.assertRaises(FormatError, TailRule.create, "exponential")
        self.assertRaises(FormatError, TailRule.create, compact.GEOMETRIC, {"r": 1.0})
        self.assertRaises(FormatError, TailRule.create, compact.GEOMETRIC, {"r": -1.5})
        self.assertRaises(FormatError, TailRule.create, compact.GEOMETRIC, {})
        self.assertRaises(FormatError, TailRule.create, compact.POWER, {"p": 0})
        self.assertRaises(FormatError, TailRule.create, compact.POWER, {"p": "x"})
        self.assertRaises(FormatError, TailRule.create, compact.HARMONIC, {"r": 0.5})
        self.assertRaises(FormatError, TailRule.create, compact.HARMONIC, {"c": "abc"})
        self.assertRaises(
            FormatError, TailRule.create, compact.HARMONIC, iota=Quaternion(1.0, 0.0, 0.0, 0.0)
        )

    def test_values(self):
        rule = TailRule.create(compact.POWER, {"c": [2, 0], "p": 2})
        np.testing.assert_allclose(
            compact.tail_values(rule, 1, 4),
            [[2.0, 0.0, 0.0, 0.0], [0.5, 0.0, 0.0, 0.0], [2 / 9, 0.0, 0.0, 0.0]],
        )
        self.assertEqual(compact.tail_values(rule, 5, 5).shape, (0, 4))
        self.assertRaises(ValueError, compact.tail_values, rule, 0, 3)

    def test_rotation_keeps_moduli(self):
        rule = TailRule.create(compact.HARMONIC, rotation_seed=7)
        values = compact.tail_values(rule, 1, 20)
        np.testing.assert_allclose(qabs(values), 1 / np.arange(1, 20), rtol=1e-12)
        np.testing.assert_allclose(values[:, 0], 0.0, atol=1e-15)
        self.assertGreater(float(np.max(np.abs(values[:, 2:]))), 1e-3)
        # independent of the requested range
        np.testing.assert_array_equal(compact.tail_values(rule, 5, 8), values[4:7])

    def test_tail_norm(self):
        self.assertEqual(compact.tail_norm(None, 10), 0.0)
        rule = TailRule.create(compact.GEOMETRIC, {"r": 0.5})
        self.assertAlmostEqual(compact.tail_norm(rule, 3), 1 / 16, places=15)


class TestTruncation(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_truncate_harmonic(self):
        np.testing.assert_allclose(
            compact.truncate(harmonic(3)), imaginary_diagonal([1, 1 / 2, 1 / 3]), atol=1e-15
        )

    def test_truncate_geometric(self):
        model = CompactModel(None, TailRule.create(compact.GEOMETRIC, {"r": 0.5}), 2)
        np.testing.assert_allclose(
            compact.truncate(model), imaginary_diagonal([0.5, 0.25]), atol=1e-15
        )

    def test_truncate_head_only(self):
        model = CompactModel(operators.diag([2]), None, 1)
        np.testing.assert_array_equal(compact.truncate(model), operators.diag([2]))
        self.assertRaises(FormatError, compact.truncate, CompactModel(None, None, 1))

    def test_truncate_head_and_tail(self):
        head = operators.diag([Quaternion(1.0, 0.0, 1.0, 0.0)])
        T = compact.truncate(harmonic(2, head))
        self.assertEqual(T.shape, (3, 3, 4))
        np.testing.assert_array_equal(T[0, 0], [1.0, 0.0, 1.0, 0.0])
        np.testing.assert_allclose(T[2, 2], [0.0, 0.5, 0.0, 0.0])

    def test_truncate_levels(self):
        model = harmonic()
        self.assertRaises(ValueError, compact.truncate, model, 0)
        self.assertRaises(ValueError, compact.truncate, model, compact.MAX_LEVEL + 1)
        self.assertEqual(compact.truncate(model, 5, max_level=None).shape, (5, 5, 4))

    def test_truncation_gap(self):
        self.assertAlmostEqual(compact.truncation_gap(harmonic(), 10, 20), 1 / 11, places=14)
        self.assertRaises(ValueError, compact.truncation_gap, harmonic(), 20, 10)


class TestLambdaEps(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_harmonic(self):
        values = compact.lambda_eps(harmonic(), 0.1)
        self.assertEqual(len(values), 10)
        self.assertEqual(values[0], Quaternion(0.0, 1.0, 0.0, 0.0))
        self.assertEqual(compact.lambda_eps(harmonic(), 2), [])

    def test_head_first(self):
        values = compact.lambda_eps(harmonic(head=operators.diag([2])), 1.5)
        self.assertEqual(len(values), 1)
        self.assertAlmostEqual(abs(values[0]), 2.0, places=12)
        values = compact.lambda_eps(harmonic(head=operators.diag([2])), 0.5)
        self.assertEqual(len(values), 3)
        self.assertAlmostEqual(abs(values[0]), 2.0, places=12)

    def test_long_tail(self):
        # more eigenvalues than one chunk
        self.assertEqual(len(compact.lambda_eps(harmonic(), 1 / 3000)), 3000)

    def test_invalid_eps(self):
        self.assertRaises(ValueError, compact.lambda_eps, harmonic(), 0)
        self.assertRaises(ValueError, compact.lambda_eps, harmonic(), -1)


class TestCompactLaws(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_harmonic_levels(self):
        reports = compact.verify_compact_laws(harmonic(), [100, 200])
        self.assertEqual([r.N for r in reports], [100, 200])
        self.assertAlmostEqual(reports[0].norm, 1.0, places=12)
        self.assertAlmostEqual(reports[0].max_modulus, 1.0, places=12)
        self.assertAlmostEqual(reports[0].min_modulus, 0.01, places=12)
        self.assertAlmostEqual(reports[1].min_modulus, 0.005, places=12)
        self.assertAlmostEqual(reports[1].tail_norm, 1 / 201, places=14)
        self.assertEqual(reports[1].spectrum.total_multiplicity, 200)
        for rate in compact.min_modulus_rate(reports):
            self.assertAlmostEqual(rate, 1.0, places=10)

    def test_head(self):
        head = operators.diag([Quaternion(1.0, 0.0, 1.0, 0.0)])
        (report,) = compact.verify_compact_laws(harmonic(head=head), [10])
        self.assertAlmostEqual(report.norm, math.sqrt(2), places=12)
        self.assertAlmostEqual(report.max_modulus, math.sqrt(2), places=12)

    def test_invalid_levels(self):
        self.assertRaises(ValueError, compact.verify_compact_laws, harmonic(), [20, 10])
        self.assertRaises(ValueError, compact.verify_compact_laws, harmonic(), [10, 10])
        self.assertRaises(ValueError, compact.verify_compact_laws, harmonic(), [0])


class TestSpectralForm(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_spectral_form(self):
        model = harmonic(5, head=operators.diag([2, -1]))
        dec = compact.spectral_form(model)
        self.assertEqual(len(dec.basis), 7)
        self.assertLessEqual(dec.residual, 1e-12)
        self.assertLessEqual(dec.basis.gram_residual, 1e-12)

    def test_rotated_tail(self):
        model = harmonic(6, rotation_seed=3)
        dec = compact.spectral_form(model)
        self.assertLessEqual(dec.residual, 1e-12)
        canonical = spectral.canonicalize(dec)
        np.testing.assert_allclose(
            canonical.lambdas,
            [[0.0, 1 / n, 0.0, 0.0] for n in range(1, 7)],
            atol=1e-12,
        )
        np.testing.assert_allclose(
            spectral.synthesize(canonical.basis, canonical.lambdas),
            compact.truncate(model),
            atol=1e-12,
        )


if __name__ == "__main__":
    unittest.main()
