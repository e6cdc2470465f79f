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

from qspectral import quaternion
from qspectral.quaternion import (
    I,
    J,
    K,
    ONE,
    CircularPoint,
    CircularSet,
    ImaginaryUnit,
    Quaternion,
)

sys.dont_write_bytecode = True  # prevent creation of .pyc files


def random_quaternion(rng):
    return Quaternion(*(float(c) for c in rng.normal(size=4)))


class TestQuaternionAlgebra(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def assertQuaternionAlmostEqual(self, actual, expected, places=12):
        for a, e in zip(actual, Quaternion.create(expected)):
            self.assertAlmostEqual(a, e, places=places, msg=f"{actual} != {expected}")

    def test_mul(self):
        self.assertEqual(I * J, K)
        self.assertEqual(J * I, -K)
        self.assertEqual(K * K, Quaternion(-1.0, 0.0, 0.0, 0.0))
        p = Quaternion(1.0, 1.0, 0.0, 0.0)
        q = Quaternion(1.0, 0.0, 1.0, 0.0)
        self.assertEqual(p * q, Quaternion(1.0, 1.0, 1.0, 1.0))
        self.assertAlmostEqual(abs(p * q), 2.0, places=14)

    def test_mul_with_scalars(self):
        self.assertEqual(2 * I, Quaternion(0.0, 2.0, 0.0, 0.0))
        self.assertEqual(I + 1, Quaternion(1.0, 1.0, 0.0, 0.0))
        self.assertEqual(1 - J, Quaternion(1.0, 0.0, -1.0, 0.0))
        self.assertQuaternionAlmostEqual(K / J, I)

    def test_mul_associative_and_norm_multiplicative(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            p, q, r = (random_quaternion(rng) for _ in range(3))
            left = (p * q) * r
            right = p * (q * r)
            scale = abs(p) * abs(q) * abs(r)
            for a, b in zip(left, right):
                self.assertLessEqual(abs(a - b), 1e-12 * scale)
            self.assertAlmostEqual(
                abs(p * q) / (abs(p) * abs(q)), 1.0, delta=1e-12
            )

    def test_unary_algebra(self):
        conj, norm, inverse = quaternion.unary_algebra(Quaternion(1.0, 2.0, 0.0, 0.0))
        self.assertEqual(conj, Quaternion(1.0, -2.0, 0.0, 0.0))
        self.assertAlmostEqual(norm, math.sqrt(5), places=14)
        self.assertQuaternionAlmostEqual(inverse, Quaternion(0.2, -0.4, 0.0, 0.0))

        self.assertEqual(quaternion.unary_algebra(J)[2], -J)

        conj, norm, inverse = quaternion.unary_algebra(2)
        self.assertEqual(conj, Quaternion(2.0, 0.0, 0.0, 0.0))
        self.assertEqual(inverse, Quaternion(0.5, 0.0, 0.0, 0.0))

    def test_unary_algebra_zero(self):
        self.assertRaises(ZeroDivisionError, quaternion.unary_algebra, 0)

    def test_conj_product_is_norm_squared(self):
        rng = np.random.default_rng(2)
        q = random_quaternion(rng)
        self.assertQuaternionAlmostEqual(q * q.conj(), abs(q) ** 2)

    def test_create(self):
        self.assertEqual(Quaternion.create(3), Quaternion(3.0, 0.0, 0.0, 0.0))
        self.assertEqual(Quaternion.create(1 + 2j), Quaternion(1.0, 2.0, 0.0, 0.0))
        self.assertEqual(Quaternion.create([0, 0, 1, 0]), J)
        self.assertRaises(ValueError, Quaternion.create, [1, 2, 3])

    def test_imaginary_unit(self):
        self.assertEqual(ImaginaryUnit.create(J), J)
        self.assertEqual(
            ImaginaryUnit.create(Quaternion(0.0, 0.0, 3.0, 4.0), normalize=True),
            Quaternion(0.0, 0.0, 0.6, 0.8),
        )
        self.assertRaises(ValueError, ImaginaryUnit.create, Quaternion(0.0, 0.0, 3.0, 4.0))
        self.assertRaises(ValueError, ImaginaryUnit.create, ONE)
        self.assertRaises(ValueError, ImaginaryUnit.create, 0, normalize=True)

        rng = np.random.default_rng(3)
        for _ in range(10):
            v = rng.normal(size=3)
            unit = ImaginaryUnit.create(Quaternion(0.0, *v), normalize=True)
            self.assertQuaternionAlmostEqual(unit * unit, -1)


class TestSimilarity(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_is_similar(self):
        self.assertTrue(quaternion.is_similar(I, J))
        self.assertTrue(
            quaternion.is_similar(
                Quaternion(1.0, 2.0, 0.0, 0.0), Quaternion(1.0, -2.0, 0.0, 0.0)
            )
        )
        self.assertFalse(
            quaternion.is_similar(
                Quaternion(1.0, 1.0, 0.0, 0.0), Quaternion(2.0, 1.0, 0.0, 0.0)
            )
        )

    def test_is_similar_to_conjugates(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            q = random_quaternion(rng)
            lam = random_quaternion(rng)
            self.assertTrue(quaternion.is_similar(q, lam.inverse() * q * lam))

    def test_is_similar_equivalence(self):
        rng = np.random.default_rng(5)
        samples = [random_quaternion(rng) for _ in range(5)]
        samples += [Quaternion(q.w, q.z, q.x, -q.y) for q in samples]
        for p in samples:
            self.assertTrue(quaternion.is_similar(p, p))
            for q in samples:
                self.assertEqual(quaternion.is_similar(p, q), quaternion.is_similar(q, p))
                for r in samples:
                    if quaternion.is_similar(p, q) and quaternion.is_similar(q, r):
                        self.assertTrue(quaternion.is_similar(p, r))

    def test_similarity_unit(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            p = random_quaternion(rng)
            lam = random_quaternion(rng)
            q = lam.inverse() * p * lam
            mu = quaternion.similarity_unit(p, q)
            self.assertAlmostEqual(abs(mu), 1.0, places=12)
            for a, b in zip(mu.inverse() * p * mu, q):
                self.assertAlmostEqual(a, b, places=10)

    def test_similarity_unit_antipodal(self):
        mu = quaternion.similarity_unit(I, -I)
        for a, b in zip(mu.inverse() * I * mu, -I):
            self.assertAlmostEqual(a, b, places=12)

    def test_similarity_unit_real(self):
        self.assertEqual(quaternion.similarity_unit(2, 2), ONE)
        self.assertRaises(ValueError, quaternion.similarity_unit, I, 2 * I)

    def test_complementary_unit(self):
        self.assertEqual(quaternion.complementary_unit(I), J)
        self.assertEqual(quaternion.complementary_unit(J), I)
        rng = np.random.default_rng(7)
        for _ in range(20):
            iota = ImaginaryUnit.create(Quaternion(0.0, *rng.normal(size=3)), normalize=True)
            jota = quaternion.complementary_unit(iota)
            self.assertAlmostEqual(abs(jota), 1.0, places=12)
            self.assertAlmostEqual(float(np.dot(iota[1:], jota[1:])), 0.0, places=12)

    def test_slice_frame_is_orthonormal(self):
        iota = ImaginaryUnit.create(Quaternion(0.0, 1.0, 1.0, 1.0), normalize=True)
        frame = quaternion.slice_frame(iota)
        np.testing.assert_allclose(frame @ frame.T, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(np.linalg.det(frame), 1.0, atol=1e-12)


class TestCircularization(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_circularize(self):
        self.assertEqual(quaternion.circularize([I]).points, (CircularPoint(0.0, 1.0, 1),))
        self.assertEqual(quaternion.circularize([2]).points, (CircularPoint(2.0, 0.0, 1),))
        self.assertEqual(
            quaternion.circularize(
                [Quaternion(1.0, 1.0, 0.0, 0.0), Quaternion(1.0, -1.0, 0.0, 0.0)]
            ).points,
            (CircularPoint(1.0, 1.0, 2),),
        )

    def test_circularize_orders_and_merges(self):
        result = quaternion.circularize([3, I, J, Quaternion(-1.0, 0.0, 0.0, 2.0), 3])
        self.assertEqual(
            result.points,
            (
                CircularPoint(-1.0, 2.0, 1),
                CircularPoint(0.0, 1.0, 2),
                CircularPoint(3.0, 0.0, 2),
            ),
        )
        self.assertEqual(result.total_multiplicity, 5)

    def test_circularize_snaps_real_classes(self):
        result = quaternion.circularize([Quaternion(2.0, 1e-12, 0.0, 0.0)])
        self.assertEqual(result[0].im, 0.0)
        self.assertTrue(result[0].is_real())

    def test_circularize_noisy_real_parts(self):
        result = quaternion.circularize(
            [
                Quaternion(-2e-16, 0.0, 3.0, 0.0),
                Quaternion(3e-18, 1.0, 0.0, 0.0),
                Quaternion(4e-16, 0.0, 0.0, 2.0),
            ]
        )
        self.assertEqual(
            result.points,
            (
                CircularPoint(0.0, 1.0, 1),
                CircularPoint(0.0, 2.0, 1),
                CircularPoint(0.0, 3.0, 1),
            ),
        )
        result = quaternion.circularize(
            [Quaternion(1.0 + 1e-15, 0.0, 0.0, 2.0), Quaternion(1.0 - 1e-15, 1.0, 0.0, 0.0)]
        )
        self.assertEqual(result[0].re, result[1].re)
        self.assertEqual([p.im for p in result], [1.0, 2.0])

    def test_circularize_idempotent(self):
        rng = np.random.default_rng(8)
        values = [random_quaternion(rng) for _ in range(10)]
        first = quaternion.circularize(values)
        representatives = [p.representative(J) for p in first for _ in range(p.mult)]
        self.assertTrue(quaternion.circularize(representatives).matches(first))

    def test_slice_representative(self):
        self.assertEqual(
            quaternion.slice_representative(CircularPoint(0.0, 1.0, 1), I), I
        )
        self.assertEqual(
            quaternion.slice_representative(
                CircularPoint(1.0, 1.0, 1), J, quaternion.LOWER
            ),
            Quaternion(1.0, 0.0, -1.0, 0.0),
        )
        self.assertEqual(
            quaternion.slice_representative(CircularPoint(2.0, 0.0, 1), K),
            Quaternion(2.0, 0.0, 0.0, 0.0),
        )
        self.assertRaises(
            ValueError,
            quaternion.slice_representative,
            CircularPoint(2.0, 0.0, 1),
            I,
            "middle",
        )

    def test_slice_representatives_are_conjugate(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            point = CircularPoint(float(rng.normal()), float(abs(rng.normal())), 1)
            iota = ImaginaryUnit.create(Quaternion(0.0, *rng.normal(size=3)), normalize=True)
            upper = quaternion.slice_representative(point, iota, quaternion.UPPER)
            lower = quaternion.slice_representative(point, iota, quaternion.LOWER)
            self.assertEqual(upper.conj(), lower)
            self.assertTrue(quaternion.is_similar(upper, lower))
            self.assertTrue(point.contains(upper))

    def test_circular_set(self):
        points = CircularSet([CircularPoint(1.0, 0.0, 1), CircularPoint(0.0, 2.0, 1)])
        self.assertEqual(points[0], CircularPoint(0.0, 2.0, 1))
        self.assertEqual(points.max_modulus(), 2.0)
        self.assertEqual(points.min_modulus(), 1.0)
        self.assertTrue(points.contains(Quaternion(0.0, 0.0, 0.0, -2.0)))
        self.assertFalse(points.contains(2))
        self.assertEqual(CircularSet().max_modulus(), 0.0)

    def test_circular_set_matches(self):
        a = CircularSet([CircularPoint(0.0, 1.0, 1), CircularPoint(2.0, 0.0, 2)])
        b = CircularSet([CircularPoint(0.0, 1.0 + 1e-10, 1), CircularPoint(2.0, 0.0, 2)])
        c = CircularSet([CircularPoint(0.0, 1.0, 1), CircularPoint(2.0, 0.0, 1)])
        self.assertTrue(a.matches(b))
        self.assertFalse(a.matches(c))
        self.assertTrue(a.matches(c, multiplicities=False))
        self.assertFalse(a.matches(CircularSet([CircularPoint(0.0, 1.0, 1)])))

    def test_without_zero(self):
        points = quaternion.circularize([0, 0, I])
        self.assertEqual(points.without_zero().points, (CircularPoint(0.0, 1.0, 1),))


class TestQuaternionArrays(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.longMessage = True
        cls.maxDiff = None

    def test_qmul_matches_mul(self):
        rng = np.random.default_rng(10)
        p = rng.normal(size=(5, 4))
        q = rng.normal(size=(5, 4))
        product = quaternion.qmul(p, q)
        for a, b, c in zip(p, q, product):
            np.testing.assert_allclose(
                c, quaternion.mul(Quaternion(*a), Quaternion(*b)), atol=1e-14
            )

    def test_qconj_qabs(self):
        q = np.array([[1.0, 2.0, 2.0, 4.0]])
        np.testing.assert_array_equal(quaternion.qconj(q), [[1.0, -2.0, -2.0, -4.0]])
        np.testing.assert_allclose(quaternion.qabs(q), [5.0])

    def test_as_qarray(self):
        self.assertRaises(ValueError, quaternion.as_qarray, [1.0, 2.0, 3.0])
        self.assertRaises(ValueError, quaternion.as_qarray, 1.0)

    def test_split_and_join_frame(self):
        rng = np.random.default_rng(11)
        q = rng.normal(size=(3, 2, 4))
        for iota in [I, ImaginaryUnit.create(Quaternion(0.0, 1.0, 1.0, 1.0), normalize=True)]:
            alpha, beta = quaternion.split_frame(q, iota)
            np.testing.assert_allclose(quaternion.join_frame(alpha, beta, iota), q, atol=1e-14)
            jota = np.array(quaternion.complementary_unit(iota))
            assembled = quaternion.from_complex(alpha, iota) + quaternion.qmul(
                quaternion.from_complex(beta, iota), jota
            )
            np.testing.assert_allclose(assembled, q, atol=1e-14)

    def test_from_complex(self):
        np.testing.assert_array_equal(quaternion.from_complex([1 + 2j]), [[1.0, 2.0, 0.0, 0.0]])
        np.testing.assert_allclose(
            quaternion.from_complex([1 + 2j], K), [[1.0, 0.0, 0.0, 2.0]], atol=1e-15
        )
        self.assertEqual(quaternion.to_complex(np.array([1.0, 2.0, 3.0, 4.0])), 1 + 2j)


if __name__ == "__main__":
    unittest.main()
