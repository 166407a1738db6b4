"""The 3-sphere side: rotation frames, spherical translation, and the
integral modulus of continuity driving the almost-everywhere convergence test.

A group element IS a unit 4-vector here, so the identification map is the
identity on coordinates.  The spherical translation of F at angle theta
around a base point equals the spherical mean of the corresponding field on
the group: with the frame below the two integrands agree pointwise, not just
in the mean.
"""

import math

import numpy as np

from .group import GroupElement, invert_array, mul_array
from .quadrature import (
    Field,
    HaarRule,
    gauss_legendre,
    haar_integral,
    periodic_trapezoid,
)
from .spectral import _plane_arrays, _plane_rules

FOUR_PI = 4.0 * math.pi


def to_unit_vector(x: GroupElement) -> np.ndarray:
    """The (a1, a2, b1, b2) coordinates verbatim; preserves distance exactly."""
    return x.as_array()


class RotationFrame:
    """Orthogonal 4x4 matrix sending e1 = (1,0,0,0) to the base point."""

    __slots__ = ("matrix", "coords")

    def __init__(self, matrix, coords):
        self.matrix = matrix
        self.coords = coords

    @property
    def base_vector(self):
        return self.matrix[:, 0].copy()


def frame_matrix(coords) -> RotationFrame:
    """Assemble the frame cos(t0) diag(1,-1,-1,-1) + sin(t0) S for the base point.

    S depends only on (phi0, psi0); orthogonality and the first-column
    property are verified at construction (failure signals a transcription
    bug, not a numerical one).
    """
    phi0, theta0, psi0 = coords
    cp, sp = math.cos(phi0), math.sin(phi0)
    cs, ss = math.cos(psi0), math.sin(psi0)
    S = np.array(
        [
            [0.0, cp, sp * cs, sp * ss],
            [cp, 0.0, sp * ss, -sp * cs],
            [sp * cs, -sp * ss, 0.0, cp],
            [sp * ss, sp * cs, -cp, 0.0],
        ]
    )
    O = math.cos(theta0) * np.diag([1.0, -1.0, -1.0, -1.0]) + math.sin(theta0) * S
    if not np.allclose(O.T @ O, np.eye(4), atol=1e-8):
        raise ValueError("frame assembly failed the orthogonality check")
    base = np.array(
        [
            math.cos(theta0),
            math.sin(theta0) * cp,
            math.sin(theta0) * sp * cs,
            math.sin(theta0) * sp * ss,
        ]
    )
    if not np.allclose(O[:, 0], base, atol=1e-8):
        raise ValueError("frame assembly failed the base-point check")
    return RotationFrame(O, coords)


def spherical_translate(F, frame: RotationFrame, theta, phi_rule=None, psi_rule=None) -> float:
    """(1/4 pi) mean of F over cos(t) x + sin(t) O v on the tilted subsphere.

    ``F`` maps arrays of unit 4-vectors, shape (..., 4), to values (a Field
    works too).
    """
    if not 0.0 < theta < math.pi:
        raise ValueError("theta must lie in (0, pi)")
    phi_rule, psi_rule = _plane_rules(phi_rule, psi_rule)
    cphi, spcps, spsps, w2 = _plane_arrays(phi_rule, psi_rule)
    v = np.stack([np.zeros_like(cphi), cphi, spcps, spsps], axis=-1)
    pts = math.cos(theta) * frame.base_vector[None, :] + math.sin(theta) * (v @ frame.matrix.T)
    if isinstance(F, Field):
        vals = F.evaluate_many(pts)
    else:
        vals = np.asarray(F(pts), dtype=float)
    return float(np.dot(vals, w2)) / FOUR_PI


def mean_difference_field(f: Field, theta, phi_rule=None, psi_rule=None) -> Field:
    """The field x -> f(x) - (spherical mean of f at angle theta around x).

    Every evaluation performs one 2D quadrature.  Spherical means commute
    with conjugation, so the difference of a central field is central.
    """
    if not 0.0 < theta < math.pi:
        raise ValueError("theta must lie in (0, pi)")
    phi_rule, psi_rule = _plane_rules(phi_rule, psi_rule)
    cphi, spcps, spsps, w2 = _plane_arrays(phi_rule, psi_rule)
    ct, st = math.cos(theta), math.sin(theta)

    if f.is_central:

        def cos_fn(c):
            c = np.clip(np.asarray(c, dtype=float), -1.0, 1.0)
            shape = c.shape
            c = c.ravel()
            s = np.sqrt(np.maximum(1.0 - c * c, 0.0))
            # representative point (c, s, 0, 0); cos-angle over the slab
            rows = ct * c[:, None] + st * s[:, None] * cphi[None, :]
            means = f.evaluate_from_cos(rows) @ w2 / FOUR_PI
            return (f.evaluate_from_cos(c) - means).reshape(shape)

        return Field(cos_fn=cos_fn, is_central=True, name=f"delta[{theta:g}]({f.name})")

    yinv = invert_array(
        np.stack([np.full(cphi.size, ct), st * cphi, st * spcps, st * spsps], axis=-1)
    )

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        shape = pts.shape[:-1]
        flat = pts.reshape(-1, 4)
        out = np.empty(flat.shape[0])
        for i in range(flat.shape[0]):
            vals = f.evaluate_many(mul_array(flat[i], yinv))
            out[i] = np.dot(vals, w2) / FOUR_PI
        return f.evaluate_many(pts) - out.reshape(shape)

    return Field(fn, name=f"delta[{theta:g}]({f.name})")


def l2_mean_difference(f: Field, theta, outer_theta_rule=None, outer_rule=None,
                       phi_rule=None, psi_rule=None) -> float:
    """L^2 Haar norm of f - (spherical mean at angle theta).

    Central fields reduce to a 1D outer integral over the eigen-angle (the
    difference field is central); noncentral fields integrate the squared
    difference field over a full product rule.
    """
    delta = mean_difference_field(f, theta, phi_rule, psi_rule)
    if f.is_central:
        if outer_theta_rule is None:
            outer_theta_rule = gauss_legendre(64, 0.0, math.pi)
        t = outer_theta_rule.nodes
        vals = delta.evaluate_central(t) ** 2
        sq = (2.0 / math.pi) * float(np.dot(outer_theta_rule.weights * np.sin(t) ** 2, vals))
    else:
        if outer_rule is None:
            outer_rule = HaarRule(
                gauss_legendre(16, 0.0, math.pi),
                gauss_legendre(16, 0.0, math.pi),
                periodic_trapezoid(16),
            )
        sq_field = Field(
            lambda pts: delta.evaluate_many(pts) ** 2, name=f"sq({delta.name})"
        )
        sq = haar_integral(sq_field, outer_rule)
    return math.sqrt(max(sq, 0.0))


def _theta_grid(t, points):
    """Geometric grid in (0, t]; the sup estimator samples it (lower bound of sup)."""
    return np.geomspace(t * 1e-2, t, points)


def integral_modulus(f: Field, t, theta_points=32, **norm_kwargs) -> float:
    """Omega(f, t): sup over a geometric theta grid in (0, t] of the L^2 norm
    of f minus its theta-mean."""
    if not 0.0 < t <= math.pi:
        raise ValueError("t must lie in (0, pi]")
    return max(l2_mean_difference(f, th, **norm_kwargs) for th in _theta_grid(t, theta_points))


def ae_convergence_criterion(f: Field, t_min, grid_points=48, **norm_kwargs):
    """Estimate int_{t_min}^1 Omega^2(f, t) / t dt on a log grid.

    Returns (estimate, converged); converged means halving t_min moves the
    estimate by < 5%, indicating the full integral down to 0 is finite in the
    measured regime.
    """
    if not 0.0 < t_min < 1.0:
        raise ValueError("t_min must lie in (0, 1)")
    # master grid covers the halved lower limit so both estimates share norms
    grid = np.geomspace(t_min / 2.0, 1.0, grid_points)
    norms = np.array([l2_mean_difference(f, th, **norm_kwargs) for th in grid])
    omega = np.maximum.accumulate(norms)

    def estimate(lo):
        mask = grid >= lo * (1.0 - 1e-12)
        return float(np.trapezoid(omega[mask] ** 2, np.log(grid[mask])))

    est = estimate(t_min)
    est_half = estimate(t_min / 2.0)
    converged = abs(est_half - est) <= 0.05 * est + 1e-300
    return est, converged
