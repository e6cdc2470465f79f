# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

"""
Quaternion algebra, slice geometry, eigenspheres and circularization.

Scalars are instances of Quaternion, a named tuple (w, x, y, z) for
w + x i + y j + z k. Arrays of quaternions are numpy arrays with a trailing
axis of length 4; the array functions of this module (qmul, qconj, qabs, ...)
work elementwise on such arrays and broadcast like numpy.
"""

import collections
import math

import numpy as np


DEFAULT_TOL = 1e-9
"""Default absolute tolerance for comparing real and imaginary parts."""

UPPER = "upper"
LOWER = "lower"

_ANTIPODAL_TOL = 1e-6


class Quaternion(collections.namedtuple("Quaternion", "w x y z")):
    """A quaternion w + x i + y j + z k with real components."""

    __slots__ = ()  # reduce per-instance memory consumption

    @classmethod
    def create(cls, value):
        """
        Create a Quaternion from a Quaternion, a 4-sequence, a real or a complex
        number (complex numbers are read in the standard slice C_i).
        """
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, (int, float, np.integer, np.floating)):
            return cls(float(value), 0.0, 0.0, 0.0)
        if isinstance(value, (complex, np.complexfloating)):
            return cls(float(value.real), float(value.imag), 0.0, 0.0)
        components = np.asarray(value, dtype=float)
        if components.shape != (4,):
            raise ValueError(f"A quaternion needs 4 components, got {value!r}")
        return cls(*(float(c) for c in components))

    @property
    def re(self):
        return self.w

    @property
    def imag(self):
        """The pure imaginary part as a Quaternion."""
        return Quaternion(0.0, self.x, self.y, self.z)

    @property
    def imag_modulus(self):
        return math.hypot(self.x, self.y, self.z)

    def conj(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self):
        return math.hypot(self.w, self.x, self.y, self.z)

    def inverse(self):
        norm2 = self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
        if norm2 == 0:
            raise ZeroDivisionError("The quaternion 0 has no inverse.")
        return Quaternion(
            self.w / norm2, -self.x / norm2, -self.y / norm2, -self.z / norm2
        )

    def is_real(self, tol=DEFAULT_TOL):
        return self.imag_modulus <= tol

    def __add__(self, other):
        other = Quaternion.create(other)
        return Quaternion(
            self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = Quaternion.create(other)
        return Quaternion(
            self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z
        )

    def __rsub__(self, other):
        return Quaternion.create(other) - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        return mul(self, Quaternion.create(other))

    def __rmul__(self, other):
        return mul(Quaternion.create(other), self)

    def __truediv__(self, other):
        """Right division p / q = p q^-1."""
        return mul(self, Quaternion.create(other).inverse())

    def __abs__(self):
        return self.norm()

    def __str__(self):
        return f"{self.w:g}{self.x:+g}i{self.y:+g}j{self.z:+g}k"


ZERO = Quaternion(0.0, 0.0, 0.0, 0.0)
ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)  # noqa: E741 quaternion unit i
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


class ImaginaryUnit(Quaternion):
    """A quaternion on the sphere S of imaginary units (w = 0, |q| = 1)."""

    __slots__ = ()

    @classmethod
    def create(cls, value, tol=DEFAULT_TOL, normalize=False):
        """
        Validate a quaternion as imaginary unit.
        @param normalize: if set, a non-zero pure imaginary input is scaled to norm 1
        """
        q = Quaternion.create(value)
        modulus = q.imag_modulus
        if abs(q.w) > tol:
            raise ValueError(f"Imaginary unit must have real part 0, got {q}")
        if normalize:
            if modulus <= tol:
                raise ValueError("Cannot normalize the zero quaternion.")
            return cls(0.0, q.x / modulus, q.y / modulus, q.z / modulus)
        if abs(modulus - 1) > tol:
            raise ValueError(f"Imaginary unit must have norm 1, got {q}")
        return cls(0.0, q.x, q.y, q.z)


def mul(p, q):
    """Hamilton product of two quaternions."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def unary_algebra(q):
    """
    Return the conjugate, the norm and the inverse of a quaternion.
    Raises ZeroDivisionError for q = 0.
    """
    q = Quaternion.create(q)
    return q.conj(), q.norm(), q.inverse()


def is_similar(p, q, tol=DEFAULT_TOL):
    """
    Check whether p and q lie in the same conjugation class (eigensphere),
    i.e., whether they agree in real part and in the modulus of the imaginary part.
    """
    p = Quaternion.create(p)
    q = Quaternion.create(q)
    return abs(p.w - q.w) <= tol and abs(p.imag_modulus - q.imag_modulus) <= tol


def complementary_unit(iota):
    """
    Return the fixed imaginary unit jota orthogonal to iota:
    the first of i, j, k with a substantial component orthogonal to iota,
    made orthogonal by one Gram-Schmidt step and normalized.
    For iota = i this is j.
    """
    iota_vec = np.array(iota[1:], dtype=float)
    for unit in np.eye(3):
        residual = unit - iota_vec * np.dot(iota_vec, unit)
        norm = np.linalg.norm(residual)
        if norm > 0.5:
            residual /= norm
            return ImaginaryUnit(0.0, *(float(c) for c in residual))
    raise AssertionError(f"no unit orthogonal to {iota}")  # unreachable for |iota| = 1


def slice_frame(iota):
    """
    Return the orthonormal frame of Im(H) attached to iota as a 3x3 array
    with rows (iota, jota, iota*jota).
    """
    jota = complementary_unit(iota)
    iota_vec = np.array(iota[1:], dtype=float)
    jota_vec = np.array(jota[1:], dtype=float)
    return np.array([iota_vec, jota_vec, np.cross(iota_vec, jota_vec)])


def similarity_unit(p, q, tol=DEFAULT_TOL):
    """
    Return a unit quaternion mu with mu^-1 p mu = q for similar p and q.
    For real classes mu = 1.
    """
    p = Quaternion.create(p)
    q = Quaternion.create(q)
    if not is_similar(p, q, tol):
        raise ValueError(f"{p} and {q} are not in the same eigensphere")
    if p.imag_modulus <= tol or q.imag_modulus <= tol:
        return ONE
    a = np.array(p[1:]) / p.imag_modulus
    b = np.array(q[1:]) / q.imag_modulus
    # mu = 1 - a b for unit imaginaries a, b, which rotates b onto a
    mu = np.concatenate(([1.0 + np.dot(a, b)], -np.cross(a, b)))
    norm = np.linalg.norm(mu)
    if norm < _ANTIPODAL_TOL:
        return complementary_unit(Quaternion(0.0, *b))
    return Quaternion(*(float(c) for c in mu / norm))


class CircularPoint(collections.namedtuple("CircularPoint", "re im mult")):
    """
    The eigensphere {re + u im | u in S} with a multiplicity.
    im >= 0; im = 0 encodes the real singleton class.
    """

    __slots__ = ()

    @property
    def modulus(self):
        return math.hypot(self.re, self.im)

    def is_real(self):
        return self.im == 0

    def contains(self, q, tol=DEFAULT_TOL):
        return is_similar(Quaternion(self.re, self.im, 0.0, 0.0), q, tol)

    def representative(self, iota=I, half=UPPER):
        return slice_representative(self, iota, half)


class CircularSet(object):
    """
    A finite union of eigenspheres, i.e., a circular subset of H,
    stored as CircularPoints ordered lexicographically by (re, im).
    """

    def __init__(self, points=()):
        self.points = tuple(sorted(points, key=lambda p: (p.re, p.im)))

    @classmethod
    def from_points(cls, points, tol=DEFAULT_TOL):
        """Create a CircularSet from CircularPoints, merging those that coincide."""
        return cls(_merge_points(points, tol))

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, index):
        return self.points[index]

    def __repr__(self):
        return "CircularSet(" + ", ".join(
            f"({p.re:.6g}, {p.im:.6g}, x{p.mult})" for p in self.points
        ) + ")"

    @property
    def total_multiplicity(self):
        return sum(p.mult for p in self.points)

    def max_modulus(self):
        return max((p.modulus for p in self.points), default=0.0)

    def min_modulus(self):
        return min((p.modulus for p in self.points), default=0.0)

    def contains(self, q, tol=DEFAULT_TOL):
        return any(p.contains(q, tol) for p in self.points)

    def without_zero(self, tol=DEFAULT_TOL):
        return CircularSet(p for p in self.points if p.modulus > tol)

    def matches(self, other, tol=DEFAULT_TOL, multiplicities=True):
        """
        Check whether two circular sets coincide within tolerance.
        Points are compared pairwise in order, so both sets must have been merged
        with a tolerance not larger than tol.
        """
        if len(self) != len(other):
            return False
        for p, q in zip(self.points, other.points):
            if abs(p.re - q.re) > tol or abs(p.im - q.im) > tol:
                return False
            if multiplicities and p.mult != q.mult:
                return False
        return True


def _weighted_mean(values, weights):
    if all(v == values[0] for v in values):
        return float(values[0])
    return float(sum(v * w for v, w in zip(values, weights)) / sum(weights))


def _merge_points(points, tol):
    """
    Merge CircularPoints that agree within tol, summing their multiplicities.
    Points whose real parts agree within tol share one real part afterwards
    (0 if it is at most tol), so each real class is ordered by im.
    """
    classes = []  # lists of points, real parts within tol of the first one
    for p in sorted(points, key=lambda p: p.re):
        if classes and p.re - classes[-1][0].re <= tol:
            classes[-1].append(p)
        else:
            classes.append([p])

    merged = []
    for members in classes:
        re = _weighted_mean([p.re for p in members], [p.mult for p in members])
        if abs(re) <= tol:
            re = 0.0
        clusters = []  # lists of points, im within tol of the first one
        for p in sorted(members, key=lambda p: p.im):
            im = 0.0 if p.im <= tol else float(p.im)
            if clusters and im - clusters[-1][0][1] <= tol:
                clusters[-1].append((p, im))
            else:
                clusters.append([(p, im)])
        for cluster in clusters:
            mults = [p.mult for p, _ in cluster]
            im = cluster[0][1]
            if im != 0.0:
                im = _weighted_mean([value for _, value in cluster], mults)
            merged.append(CircularPoint(re, im, sum(mults)))
    return merged


def circularize(values, tol=DEFAULT_TOL):
    """
    Compute the circularization of a finite set of quaternions:
    every q contributes the eigensphere (Re q, |Im q|); coinciding spheres
    are merged with their multiplicities summed.
    Values may be Quaternions, 4-sequences, reals or complex numbers.
    """
    points = []
    for value in values:
        q = Quaternion.create(value)
        points.append(CircularPoint(q.w, q.imag_modulus, 1))
    return CircularSet.from_points(points, tol)


def slice_representative(point, iota=I, half=UPPER):
    """
    Return the element re + iota im (upper half) or re - iota im (lower half)
    of the eigensphere, i.e., its intersection with the slice C_iota.
    """
    if half not in (UPPER, LOWER):
        raise ValueError(f"half must be '{UPPER}' or '{LOWER}', not {half!r}")
    im = point.im if half == UPPER else -point.im
    return Quaternion(point.re, iota[1] * im, iota[2] * im, iota[3] * im)


# Array functions for numpy arrays of quaternions (trailing axis of length 4).


def as_qarray(value):
    """Convert a value to a float array with a trailing axis of length 4."""
    array = np.asarray(value, dtype=float)
    if array.ndim == 0 or array.shape[-1] != 4:
        raise ValueError(f"Quaternion arrays need a last axis of length 4, got {array.shape}")
    return array


def qmul(p, q):
    """Elementwise Hamilton product of two broadcastable quaternion arrays."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pw, px, py, pz = np.moveaxis(p, -1, 0)
    qw, qx, qy, qz = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy - px * qz + py * qw + pz * qx,
            pw * qz + px * qy - py * qx + pz * qw,
        ],
        axis=-1,
    )


def qconj(q):
    """Elementwise conjugate of a quaternion array."""
    return np.asarray(q, dtype=float) * np.array([1.0, -1.0, -1.0, -1.0])


def qabs(q):
    """Elementwise modulus of a quaternion array."""
    q = np.asarray(q, dtype=float)
    return np.hypot(np.hypot(q[..., 0], q[..., 1]), np.hypot(q[..., 2], q[..., 3]))


def split_frame(q, iota=I):
    """
    Split a quaternion array as q = alpha + beta jota with alpha, beta in C_iota
    and return alpha, beta as complex arrays (iota is read as the complex unit).
    """
    q = np.asarray(q, dtype=float)
    if tuple(iota) == tuple(I):
        coords = q[..., 1:]
    else:
        coords = q[..., 1:] @ slice_frame(iota).T
    alpha = q[..., 0] + 1j * coords[..., 0]
    beta = coords[..., 1] + 1j * coords[..., 2]
    return alpha, beta


def join_frame(alpha, beta, iota=I):
    """Inverse of split_frame: assemble alpha + beta jota as quaternion array."""
    alpha = np.asarray(alpha)
    beta = np.asarray(beta)
    coords = np.stack([alpha.imag, beta.real, beta.imag], axis=-1)
    if tuple(iota) != tuple(I):
        coords = coords @ slice_frame(iota)
    return np.concatenate([alpha.real[..., np.newaxis], coords], axis=-1)


def to_complex(q, iota=I):
    """Project a quaternion array onto the slice C_iota, read as complex numbers."""
    return split_frame(q, iota)[0]


def from_complex(c, iota=I):
    """Embed complex numbers into the slice C_iota as quaternion array."""
    c = np.asarray(c, dtype=complex)
    return join_frame(c, np.zeros_like(c), iota)
