"""Group arithmetic and geometry for SU(2) stored as unit 4-vectors.

An element [[a1+i*a2, b1+i*b2], [-b1+i*b2, a1-i*a2]] is kept as the real
4-vector (a1, a2, b1, b2).  Under this identification matrix multiplication
is the Hamilton quaternion product and the bi-invariant metric is the plain
Euclidean distance in R^4.
"""

import math
from typing import NamedTuple

import numpy as np

UNIT_TOL = 1e-12
# Construction accepts mildly off-unit input and renormalizes; beyond this the
# 4-vector does not describe a group element and is rejected.
_CONSTRUCT_TOL = 1e-6


class SphericalCoords(NamedTuple):
    """Chart (phi, theta, psi) in [0,pi] x [0,pi] x [0,2pi]; theta is the eigen-angle."""

    phi: float
    theta: float
    psi: float

    def validate(self):
        if not (0.0 <= self.phi <= math.pi):
            raise ValueError(f"phi out of range [0, pi]: {self.phi}")
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta out of range [0, pi]: {self.theta}")
        if not (0.0 <= self.psi <= 2.0 * math.pi):
            raise ValueError(f"psi out of range [0, 2pi]: {self.psi}")
        return self


class GroupElement:
    """Immutable point of SU(2); unit norm restored on construction."""

    __slots__ = ("a1", "a2", "b1", "b2")

    def __init__(self, a1, a2, b1, b2):
        n2 = a1 * a1 + a2 * a2 + b1 * b1 + b2 * b2
        if abs(n2 - 1.0) > _CONSTRUCT_TOL:
            raise ValueError(f"not a unit 4-vector (|v|^2 = {n2!r})")
        inv = 1.0 / math.sqrt(n2)
        object.__setattr__(self, "a1", a1 * inv)
        object.__setattr__(self, "a2", a2 * inv)
        object.__setattr__(self, "b1", b1 * inv)
        object.__setattr__(self, "b2", b2 * inv)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    def as_array(self):
        return np.array([self.a1, self.a2, self.b1, self.b2])

    def as_matrix(self):
        """The underlying 2x2 complex matrix (for oracle checks)."""
        a = self.a1 + 1j * self.a2
        b = self.b1 + 1j * self.b2
        return np.array([[a, b], [-b.conjugate(), a.conjugate()]])

    @staticmethod
    def from_array(v):
        return GroupElement(float(v[0]), float(v[1]), float(v[2]), float(v[3]))

    def __repr__(self):
        return f"GroupElement({self.a1:.12g}, {self.a2:.12g}, {self.b1:.12g}, {self.b2:.12g})"

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return distance(self, other) < 1e-12

    def __hash__(self):
        raise TypeError("GroupElement compares by tolerance; not hashable")


IDENTITY = GroupElement(1.0, 0.0, 0.0, 0.0)
NEG_IDENTITY = GroupElement(-1.0, 0.0, 0.0, 0.0)


def multiply(x: GroupElement, y: GroupElement) -> GroupElement:
    """Group product (equals the 2x2 matrix product read back as a 4-vector)."""
    p0, p1, p2, p3 = x.a1, x.a2, x.b1, x.b2
    q0, q1, q2, q3 = y.a1, y.a2, y.b1, y.b2
    return GroupElement(
        p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
        p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
        p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
        p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
    )


def inverse(x: GroupElement) -> GroupElement:
    """Conjugate transpose: (a1, -a2, -b1, -b2)."""
    return GroupElement(x.a1, -x.a2, -x.b1, -x.b2)


def distance(x: GroupElement, y: GroupElement) -> float:
    """Bi-invariant metric: Euclidean distance of the 4-vectors, in [0, 2]."""
    return math.sqrt(
        (x.a1 - y.a1) ** 2 + (x.a2 - y.a2) ** 2 + (x.b1 - y.b1) ** 2 + (x.b2 - y.b2) ** 2
    )


def eigen_angle(x: GroupElement) -> float:
    """The theta in [0, pi] with eigenvalues exp(+-i*theta); arccos of a1, clamped."""
    return math.acos(min(1.0, max(-1.0, x.a1)))


def diag_element(theta: float) -> GroupElement:
    """The diagonal element diag(exp(i*theta), exp(-i*theta)) = (cos t, sin t, 0, 0)."""
    if not (0.0 <= theta <= math.pi):
        raise ValueError(f"theta out of range [0, pi]: {theta}")
    return GroupElement(math.cos(theta), math.sin(theta), 0.0, 0.0)


def from_spherical(coords) -> GroupElement:
    """Chart point (cos t, sin t cos phi, sin t sin phi cos psi, sin t sin phi sin psi)."""
    if not isinstance(coords, SphericalCoords):
        coords = SphericalCoords(*coords)
    coords.validate()
    phi, theta, psi = coords
    st = math.sin(theta)
    sp = math.sin(phi)
    return GroupElement(
        math.cos(theta), st * math.cos(phi), st * sp * math.cos(psi), st * sp * math.sin(psi)
    )


def to_spherical(x: GroupElement) -> SphericalCoords:
    """Inverse chart; phi and psi default to 0 where the chart degenerates."""
    theta = eigen_angle(x)
    st = math.sin(theta)
    if st < 1e-14:
        return SphericalCoords(0.0, theta, 0.0)
    phi = math.acos(min(1.0, max(-1.0, x.a2 / st)))
    sp = math.sin(phi)
    if st * sp < 1e-14:
        return SphericalCoords(phi, theta, 0.0)
    psi = math.atan2(x.b2, x.b1)
    if psi < 0.0:
        psi += 2.0 * math.pi
    return SphericalCoords(phi, theta, psi)


def random_element(rng) -> GroupElement:
    """Haar-uniform sample (normalized Gaussian 4-vector)."""
    v = rng.standard_normal(4)
    v /= np.linalg.norm(v)
    return GroupElement.from_array(v)


def random_elements(rng, count) -> np.ndarray:
    """Haar-uniform samples as an array of shape (count, 4)."""
    v = rng.standard_normal((count, 4))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v


def mul_array(z, pts):
    """Product z * p for every 4-vector row p of ``pts`` (shape (..., 4))."""
    z = z.as_array() if isinstance(z, GroupElement) else np.asarray(z, dtype=float)
    p0, p1, p2, p3 = z
    q0, q1, q2, q3 = pts[..., 0], pts[..., 1], pts[..., 2], pts[..., 3]
    return np.stack(
        [
            p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
            p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
            p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
            p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
        ],
        axis=-1,
    )


def invert_array(pts):
    """Rowwise inverse of unit 4-vectors."""
    return pts * np.array([1.0, -1.0, -1.0, -1.0])
