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

from qspectral import OperatorConditionError
from qspectral import corpus, operators
from qspectral.quaternion import I, J, K, ImaginaryUnit, Quaternion, qmul

sys.dont_write_bytecode = True  # prevent creation of .pyc files

ONE_J = Quaternion(1.0, 0.0, 1.0, 0.0)
SLICE_111 = ImaginaryUnit.create(Quaternion(0.0, 1.0, 1.0, 1.0), normalize=True)


def matrix(rows):
    return np.array([[Quaternion.create(entry) for entry in row] for row in rows], dtype=float)


class TestOperatorAction(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_apply(self):
        rng = np.random.default_rng(1)
        u = corpus.random_vector(rng, 3)
        np.testing.assert_allclose(operators.apply(operators.identity(3), u), u)
        e2 = np.array([[0.0, 0.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0]])
        np.testing.assert_allclose(
            operators.apply(operators.diag([I, ONE_J]), e2),
            [[0.0, 0.0, 0.0, 0.0], list(ONE_J)],
        )

    def test_apply_right_linear(self):
        rng = np.random.default_rng(2)
        T = corpus.random_matrix(rng, 3)
        u = corpus.random_vector(rng, 3)
        v = corpus.random_vector(rng, 3)
        a = rng.normal(size=4)
        b = rng.normal(size=4)
        np.testing.assert_allclose(
            operators.apply(T, qmul(u, a) + qmul(v, b)),
            qmul(operators.apply(T, u), a) + qmul(operators.apply(T, v), b),
            atol=1e-12,
        )
        e1 = np.zeros((3, 4))
        e1[0, 0] = 1.0
        np.testing.assert_allclose(
            operators.apply(T, qmul(e1, np.array(K))),
            qmul(operators.apply(T, e1), np.array(K)),
            atol=1e-14,
        )

    def test_apply_dimension_mismatch(self):
        self.assertRaises(
            ValueError, operators.apply, operators.identity(2), np.zeros((3, 4))
        )
        self.assertRaises(ValueError, operators.as_qmatrix, np.zeros((2, 3, 4)))
        self.assertRaises(ValueError, operators.as_qmatrix, np.zeros((2, 2)))

    def test_adjoint(self):
        np.testing.assert_array_equal(operators.adjoint(operators.diag([I])), operators.diag([-I]))
        np.testing.assert_array_equal(
            operators.adjoint(matrix([[0, J], [0, 0]])), matrix([[0, 0], [-J, 0]])
        )

    def test_adjoint_anti_homomorphism(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            T = corpus.random_matrix(rng, 3)
            S = corpus.random_matrix(rng, 3)
            np.testing.assert_allclose(
                operators.adjoint(operators.matmul(T, S)),
                operators.matmul(operators.adjoint(S), operators.adjoint(T)),
                atol=1e-12,
            )

    def test_matmul_matches_entrywise_product(self):
        rng = np.random.default_rng(4)
        T = corpus.random_matrix(rng, 2)
        S = corpus.random_matrix(rng, 2)
        expected = np.zeros((2, 2, 4))
        for m in range(2):
            for k in range(2):
                for l in range(2):
                    expected[m, k] += qmul(T[m, l], S[l, k])
        np.testing.assert_allclose(operators.matmul(T, S), expected, atol=1e-12)

    def test_polynomial(self):
        rng = np.random.default_rng(5)
        T = corpus.random_matrix(rng, 3)
        T2 = operators.matmul(T, T)
        np.testing.assert_allclose(
            operators.polynomial(T, [1, -2, 3]),
            operators.identity(3) - 2 * T + 3 * T2,
            atol=1e-12,
        )
        np.testing.assert_array_equal(operators.polynomial(T, []), np.zeros_like(T))


class TestClassification(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_classify_anti_self_adjoint_unitary(self):
        cls = operators.classify(operators.diag([I, J]))
        self.assertTrue(cls.anti_self_adjoint)
        self.assertTrue(cls.unitary)
        self.assertTrue(cls.normal)
        self.assertFalse(cls.self_adjoint)
        self.assertEqual(cls.names(), ["normal", "anti_self_adjoint", "unitary"])

    def test_classify_self_adjoint(self):
        cls = operators.classify(operators.diag([2, -1]))
        self.assertTrue(cls.self_adjoint)
        self.assertTrue(cls.normal)
        self.assertFalse(cls.positive)
        self.assertFalse(cls.unitary)
        self.assertTrue(operators.classify(operators.diag([2, 0])).positive)

    def test_classify_not_normal(self):
        cls = operators.classify(matrix([[0, 1], [0, 0]]))
        self.assertEqual(cls.names(), [])
        self.assertEqual(cls.tol, 2e-9)

    def test_scaled_tol(self):
        self.assertAlmostEqual(operators.scaled_tol(operators.identity(3), 1e-2), 3e-2, places=15)
        self.assertEqual(operators.scaled_tol(operators.identity(1)), 1e-9)
        self.assertAlmostEqual(operators.default_tol(operators.identity(4)), 4e-9, places=20)
        self.assertEqual(operators.default_tol(operators.identity(4), 1e-3), 1e-3)
        T = matrix([[1, 1e-4], [0, 2]])
        self.assertFalse(operators.classify(T).normal)
        cls = operators.classify(T, operators.scaled_tol(T, 1e-2))
        self.assertTrue(cls.normal)
        self.assertEqual(cls.tol, 0.02)

    def test_classify_implications(self):
        rng = np.random.default_rng(6)
        for generator in (
            corpus.random_self_adjoint,
            corpus.random_anti_self_adjoint_unitary,
            corpus.random_unitary_operator,
            corpus.random_normal,
        ):
            cls = operators.classify(generator(rng, 4))
            self.assertTrue(cls.normal, generator.__name__)
        self.assertTrue(operators.classify(corpus.random_self_adjoint(rng, 3)).self_adjoint)
        cls = operators.classify(corpus.random_anti_self_adjoint_unitary(rng, 3))
        self.assertTrue(cls.anti_self_adjoint and cls.unitary)
        self.assertTrue(operators.classify(corpus.random_unitary(rng, 3)).unitary)

    def test_check_anti_self_adjoint_unitary(self):
        operators.check_anti_self_adjoint_unitary(operators.diag([I, K]))
        self.assertRaises(
            OperatorConditionError,
            operators.check_anti_self_adjoint_unitary,
            operators.diag([2 * I]),
        )
        self.assertRaises(
            OperatorConditionError,
            operators.check_anti_self_adjoint_unitary,
            operators.diag([1]),
        )


class TestDeltaAndChi(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_delta_q(self):
        L_j = operators.diag([J])
        np.testing.assert_array_equal(operators.delta_q(L_j, I), np.zeros((1, 1, 4)))
        np.testing.assert_array_equal(
            operators.delta_q(L_j, 2), operators.diag([Quaternion(3.0, 0.0, -4.0, 0.0)])
        )
        rng = np.random.default_rng(7)
        T = corpus.random_matrix(rng, 3)
        np.testing.assert_allclose(operators.delta_q(T, 0), operators.matmul(T, T))

    def test_delta_q_depends_on_class_only(self):
        rng = np.random.default_rng(8)
        T = corpus.random_matrix(rng, 2)
        q = Quaternion(0.5, 1.0, 2.0, 0.0)
        similar = Quaternion(0.5, 0.0, 0.0, math.sqrt(5))
        np.testing.assert_allclose(
            operators.delta_q(T, q), operators.delta_q(T, similar), atol=1e-12
        )

    def test_chi(self):
        image = operators.chi(operators.diag([J]), I)
        self.assertEqual(image.iota, I)
        np.testing.assert_array_equal(image.matrix, [[0, 1], [-1, 0]])
        product = operators.chi_matrix(operators.diag([I])) @ operators.chi_matrix(
            operators.diag([J])
        )
        np.testing.assert_array_equal(product, [[0, 1j], [1j, 0]])
        np.testing.assert_array_equal(product, operators.chi_matrix(operators.diag([K])))
        np.testing.assert_array_equal(operators.chi_matrix(operators.identity(3)), np.eye(6))

    def test_chi_homomorphism(self):
        rng = np.random.default_rng(9)
        for iota in (I, J, SLICE_111):
            T = corpus.random_matrix(rng, 3)
            S = corpus.random_matrix(rng, 3)
            chi_T = operators.chi_matrix(T, iota)
            np.testing.assert_allclose(
                operators.chi_matrix(operators.matmul(T, S), iota),
                chi_T @ operators.chi_matrix(S, iota),
                atol=1e-12,
            )
            np.testing.assert_allclose(
                operators.chi_matrix(operators.adjoint(T), iota), chi_T.conj().T, atol=1e-14
            )
            np.testing.assert_allclose(operators.chi_inverse(operators.chi(T, iota)), T, atol=1e-14)

    def test_chi_vector(self):
        rng = np.random.default_rng(10)
        for iota in (I, SLICE_111):
            T = corpus.random_matrix(rng, 3)
            u = corpus.random_vector(rng, 3)
            np.testing.assert_allclose(
                operators.chi_matrix(T, iota) @ operators.chi_vector(u, iota),
                operators.chi_vector(operators.apply(T, u), iota),
                atol=1e-12,
            )
            np.testing.assert_allclose(
                operators.chi_vector_inverse(operators.chi_vector(u, iota), iota), u, atol=1e-14
            )
            c = complex(*rng.normal(size=2))
            scaled = qmul(u, np.array(Quaternion(c.real, *(c.imag * np.array(iota[1:])))))
            np.testing.assert_allclose(
                operators.chi_vector(scaled, iota), operators.chi_vector(u, iota) * c, atol=1e-12
            )
        self.assertRaises(ValueError, operators.chi_vector_inverse, np.zeros(3))


class TestNorms(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_operator_norm(self):
        self.assertAlmostEqual(
            operators.operator_norm(operators.diag([I, ONE_J])), math.sqrt(2), places=14
        )
        self.assertEqual(operators.operator_norm(np.zeros((3, 3, 4))), 0.0)

    def test_operator_norm_sampling(self):
        rng = np.random.default_rng(11)
        T = corpus.random_matrix(rng, 4)
        norm = operators.operator_norm(T)
        for _ in range(100):
            u = corpus.random_vector(rng, 4)
            self.assertLessEqual(
                np.linalg.norm(operators.apply(T, u)),
                norm * np.linalg.norm(u) * (1 + 1e-12),
            )

    def test_diagonal_blocks(self):
        T = matrix([[1, 0, I], [0, 2, 0], [J, 0, 3]])
        blocks = operators.diagonal_blocks(T)
        self.assertEqual([list(block) for block in blocks], [[0, 2], [1]])
        self.assertAlmostEqual(
            operators.operator_norm(T),
            float(np.linalg.norm(operators.chi_matrix(T), 2)),
            places=12,
        )

    def test_operator_abs(self):
        np.testing.assert_allclose(
            operators.operator_abs(operators.diag([2 * I])), operators.diag([2]), atol=1e-14
        )
        np.testing.assert_allclose(
            operators.operator_abs(np.zeros((2, 2, 4))), np.zeros((2, 2, 4)), atol=1e-14
        )
        np.testing.assert_allclose(
            operators.operator_abs(operators.diag([ONE_J])),
            operators.diag([math.sqrt(2)]),
            atol=1e-14,
        )

    def test_operator_abs_random(self):
        rng = np.random.default_rng(12)
        S = corpus.random_matrix(rng, 3)
        root = operators.operator_abs(S)
        self.assertTrue(operators.classify(root, 1e-9).positive)
        np.testing.assert_allclose(
            operators.matmul(root, root),
            operators.matmul(operators.adjoint(S), S),
            atol=1e-10,
        )

    def test_commutator_norm(self):
        self.assertAlmostEqual(
            operators.commutator_norm(operators.diag([I]), operators.diag([J])), 2.0, places=14
        )
        self.assertEqual(
            operators.commutator_norm(operators.diag([I, 2]), operators.diag([3 * I, 5])), 0.0
        )


if __name__ == "__main__":
    unittest.main()
