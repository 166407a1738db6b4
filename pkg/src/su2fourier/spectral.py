"""Characters, Dirichlet kernels, and Fourier partial sums on SU(2).

Partial sums are computed by three routes:

* direct  -- convolution against the degree-N Dirichlet kernel over the full
  3D product grid (slow oracle path),
* reduced -- a 1D integral of the kernel derivative against the profile of
  spherical means around the evaluation point (one 2D profile serves every
  N up to the rule's degree),
* central -- for central fields, the Chebyshev partial sum of the associated
  profile on [-1, 1].

The n-th character evaluates to sin((n+1)t)/sin(t) at eigen-angle t, i.e. the
Chebyshev polynomial of the second kind in cos(t).
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .group import GroupElement, invert_array, mul_array
from .quadrature import (
    Field,
    HaarRule,
    Rule1D,
    convolve,
    gauss_legendre,
    periodic_trapezoid,
    theta_rule_for,
    warn_if_undersized,
    TWO_PI_SQ,
)

FOUR_PI = 4.0 * math.pi

# Below this, sin(theta) in the quotient form loses too many digits; switch to
# the exact cosine-sum form of the character.
_POLE_TOL = 1e-6


def chebyshev_u(n, t):
    """Chebyshev polynomial of the second kind U_n on scalars or arrays."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    t = np.asarray(t, dtype=float)
    return backend.chebu_design(t.ravel(), n)[n].reshape(t.shape)


def character(n, theta):
    """Trace of the (n+1)-dimensional irreducible representation at eigen-angle theta.

    Quotient form sin((n+1)t)/sin(t) away from the poles; the removable
    singularities at t in {0, pi} use the cosine-sum form, which is exact.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    theta = np.asarray(theta, dtype=float)
    scalar = theta.ndim == 0
    t = np.atleast_1d(theta)
    s = np.sin(t)
    near = np.abs(s) < _POLE_TOL
    safe = np.where(near, 1.0, s)
    out = np.sin((n + 1) * t) / safe
    if np.any(near):
        k = np.arange(n + 1)
        tn = t[near]
        out[near] = np.cos(np.outer(tn, n - 2 * k)).sum(axis=1)
    return float(out[0]) if scalar else out


def dirichlet_scalar(m, t):
    """Dirichlet kernel 1 + 2 sum_{j<=m} cos(jt) = sin((2m+1)t/2) / sin(t/2)."""
    if m < 0:
        raise ValueError("index must be >= 0")
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    s = np.sin(0.5 * t)
    near = np.abs(s) < 1e-12
    out = np.where(near, float(2 * m + 1), np.sin((m + 0.5) * t) / np.where(near, 1.0, s))
    return float(out[0]) if scalar else out


def dirichlet_scalar_deriv(m, t):
    """Termwise derivative -2 sum_{j<=m} j sin(jt) (stable near t = 0)."""
    if m < 0:
        raise ValueError("index must be >= 0")
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    if m == 0:
        out = np.zeros_like(t)
    else:
        j = np.arange(1, m + 1)
        out = -2.0 * np.sin(t[:, None] * j[None, :]) @ j.astype(float)
    return float(out[0]) if scalar else out


def _dirichlet_su2_from_cos(N, c):
    """sum_{n<=N} (n+1) U_n at cos(eigen-angle) values, by recurrence."""
    c = np.asarray(c, dtype=float)
    tot = np.ones_like(c)
    if N >= 1:
        um2 = np.ones_like(c)
        um1 = 2.0 * c
        tot = tot + 2.0 * um1
        for k in range(2, N + 1):
            um2, um1 = um1, 2.0 * c * um1 - um2
            tot += (k + 1) * um1
    return tot


def dirichlet_su2(N, theta):
    """Group-side Dirichlet kernel sum_{n<=N} (n+1) chi_n at eigen-angle theta.

    Computed by the explicit sum (defined at the endpoints); equals
    -D'_{N+1}(theta) / (2 sin theta) away from them.
    """
    if N < 0:
        raise ValueError("degree must be >= 0")
    theta = np.asarray(theta, dtype=float)
    out = _dirichlet_su2_from_cos(N, np.cos(theta))
    return float(out) if theta.ndim == 0 else out


def dirichlet_deriv_table(Nmax, thetas):
    """Rows N = 0..Nmax of D'_{N+1} at the given angles (cumulative sine sums)."""
    thetas = np.asarray(thetas, dtype=float)
    out = np.empty((Nmax + 1, thetas.size))
    acc = -2.0 * np.sin(thetas)
    out[0] = acc
    for N in range(1, Nmax + 1):
        acc = acc - 2.0 * (N + 1) * np.sin((N + 1) * thetas)
        out[N] = acc
    return out


def character_field(n) -> Field:
    """The n-th character as a central Field."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    return Field(
        cos_fn=lambda c: backend.chebu_design(np.asarray(c, dtype=float).ravel(), n)[n].reshape(
            np.shape(c)
        ),
        is_central=True,
        name=f"character:{n}",
        degree_hint=n,
    )


def dirichlet_su2_field(N) -> Field:
    """The degree-N group Dirichlet kernel as a central Field."""
    if N < 0:
        raise ValueError("degree must be >= 0")
    return Field(
        cos_fn=lambda c: _dirichlet_su2_from_cos(N, c),
        is_central=True,
        name=f"dirichlet:{N}",
        degree_hint=N,
    )


def partial_sum_direct(f: Field, N, x: GroupElement, rule: HaarRule = None) -> float:
    """S_N f(x) by convolution with the Dirichlet kernel over the 3D grid (oracle path)."""
    if rule is None:
        rule = HaarRule.for_degree(N)
    warn_if_undersized(rule, N, "partial_sum_direct")
    return convolve(f, dirichlet_su2_field(N), rule, x)


@dataclass
class MeanProfile:
    """Spherical means of a field around a point, tabulated on a theta grid."""

    thetas: np.ndarray
    values: np.ndarray
    point: np.ndarray  # source point as a unit 4-vector


def _plane_rules(phi_rule, psi_rule):
    if phi_rule is None:
        phi_rule = gauss_legendre(64, 0.0, math.pi)
    if psi_rule is None:
        psi_rule = periodic_trapezoid(64, 0.0, 2.0 * math.pi)
    return phi_rule, psi_rule


def _plane_arrays(phi_rule, psi_rule):
    """(cos phi, sin phi cos psi, sin phi sin psi, w2) raveled over the plane."""
    phi, wphi = phi_rule.nodes, phi_rule.weights
    psi, wpsi = psi_rule.nodes, psi_rule.weights
    sp = np.sin(phi)
    cphi = np.repeat(np.cos(phi), psi.size)
    spcps = np.outer(sp, np.cos(psi)).ravel()
    spsps = np.outer(sp, np.sin(psi)).ravel()
    w2 = np.outer(wphi * sp, wpsi).ravel()
    return cphi, spcps, spsps, w2


def _cos_angle_rows(xv, thetas, plane):
    """Rows over theta of cos(eigen-angle of x y^{-1}) = <x, y> on the plane grid."""
    cphi, spcps, spsps, _ = plane
    base = xv[1] * cphi + xv[2] * spcps + xv[3] * spsps
    thetas = np.asarray(thetas, dtype=float)
    return xv[0] * np.cos(thetas)[:, None] + np.sin(thetas)[:, None] * base[None, :]


def spherical_means(f: Field, x: GroupElement, thetas, phi_rule=None, psi_rule=None) -> MeanProfile:
    """Profile theta -> (1/4 pi) mean of f over the slab x y^{-1}(phi, theta, psi).

    For central fields only cos(eigen-angle of x y^{-1}) = <x, y> is needed;
    noncentral fields get the full product points.
    """
    phi_rule, psi_rule = _plane_rules(phi_rule, psi_rule)
    plane = _plane_arrays(phi_rule, psi_rule)
    cphi, spcps, spsps, w2 = plane
    xv = x.as_array()
    thetas = np.asarray(thetas, dtype=float)
    values = np.empty(thetas.size)
    if f.is_central:
        rows = _cos_angle_rows(xv, thetas, plane)
        for i in range(thetas.size):
            values[i] = np.dot(f.evaluate_from_cos(rows[i]), w2)
    else:
        for i, theta in enumerate(thetas):
            st, ct = math.sin(theta), math.cos(theta)
            ypts = np.stack(
                [np.full(cphi.size, ct), st * cphi, st * spcps, st * spsps], axis=-1
            )
            vals = f.evaluate_many(mul_array(xv, invert_array(ypts)))
            values[i] = np.dot(vals, w2)
    return MeanProfile(thetas=thetas, values=values / FOUR_PI, point=xv)


def reduced_from_profile(profile: MeanProfile, theta_rule: Rule1D, N) -> float:
    """-(1/pi) integral of D'_{N+1}(t) sin(t) times the profile, on the rule."""
    if profile.thetas.size != len(theta_rule) or not np.allclose(
        profile.thetas, theta_rule.nodes
    ):
        raise ValueError("profile grid does not match the theta rule nodes")
    t = theta_rule.nodes
    kernel = dirichlet_scalar_deriv(N + 1, t) * np.sin(t) * theta_rule.weights
    return -float(np.dot(kernel, profile.values)) / math.pi


def reduced_rules(N, theta_breakpoints=None) -> HaarRule:
    """Default rules for the reduced path: theta sized for degree N, plane for the field."""
    theta = theta_rule_for(N, theta_breakpoints)
    return HaarRule(theta, gauss_legendre(64, 0.0, math.pi), periodic_trapezoid(64))


def partial_sum_reduced(f: Field, N, x: GroupElement, rules: HaarRule = None) -> float:
    """S_N f(x) via the 1D reduction over the spherical-mean profile (fast path)."""
    if rules is None:
        rules = reduced_rules(N)
    profile = spherical_means(f, x, rules.theta_rule.nodes, rules.phi_rule, rules.psi_rule)
    return reduced_from_profile(profile, rules.theta_rule, N)


def character_sums(nmax, Nmax, x: GroupElement, rule: HaarRule = None):
    """S_N chi_n(x) for all n <= nmax, N <= Nmax, via both partial-sum paths.

    Returns (direct, reduced), each of shape (nmax+1, Nmax+1).  One fused
    sweep over the product grid serves every (n, N) pair: the plane sums of
    U_n(<x, y>) are shared, and since the Dirichlet kernels are constant on
    each theta slab the direct-path plane sum factorizes exactly (summation
    reassociation only -- pinned against the scalar ops in the tests).
    """
    if rule is None:
        rule = HaarRule.for_degree(max(nmax, Nmax))
    warn_if_undersized(rule, max(nmax, Nmax), "character_sums")
    plane = _plane_arrays(rule.phi_rule, rule.psi_rule)
    w2 = plane[3]
    t = rule.theta_rule.nodes
    rows = _cos_angle_rows(x.as_array(), t, plane)
    pslab = backend.chebu_segment_sums(rows, w2, nmax)  # (nmax+1, K_theta)

    wt_sin2 = rule.theta_weights()
    dtab = np.empty((Nmax + 1, t.size))
    acc = np.ones_like(t)
    um2, um1 = np.ones_like(t), 2.0 * np.cos(t)
    dtab[0] = acc
    for k in range(1, Nmax + 1):
        u = um1 if k == 1 else 2.0 * np.cos(t) * um1 - um2
        if k > 1:
            um2, um1 = um1, u
        acc = acc + (k + 1) * u
        dtab[k] = acc
    direct = pslab @ (dtab * wt_sin2).T / TWO_PI_SQ

    dptab = dirichlet_deriv_table(Nmax, t)
    red_w = -(rule.theta_rule.weights * np.sin(t)) / math.pi
    reduced = (pslab / FOUR_PI) @ (dptab * red_w).T
    return direct, reduced


def character_gram(nmax, rule: HaarRule = None):
    """Gram matrix G[n, m] of chi_n chi_m under the product Haar rule.

    The integrand is constant on every (phi, psi) plane, so the plane sum
    factorizes exactly out of the product-grid quadrature; only the theta
    sweep remains (verified against literal haar_integral in the tests).
    """
    if rule is None:
        rule = HaarRule.for_degree(2 * nmax)
    w2 = rule.plane()[3]
    u = backend.chebu_design(np.cos(rule.theta_rule.nodes), nmax)
    w = rule.theta_weights() * (w2.sum() / TWO_PI_SQ)
    return (u * w) @ u.T


@dataclass
class ChebyshevSeries:
    """Coefficients against U_0..U_{n_max} for a map on [-1, 1]."""

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(1))

    @property
    def n_max(self):
        return self.coeffs.size - 1


def chebyshev_coeffs(F, n_max, theta_rule: Rule1D = None) -> ChebyshevSeries:
    """Coefficients c_n = (2/pi) int F(t) U_n(t) sqrt(1-t^2) dt.

    Computed in theta space (t = cos theta) against sin^2(theta), which
    removes the endpoint-singular weight.
    """
    if theta_rule is None:
        theta_rule = theta_rule_for(n_max)
    t = theta_rule.nodes
    vals = np.asarray(F(np.cos(t)), dtype=float)
    w = theta_rule.weights * np.sin(t) ** 2 * vals
    coeffs = (2.0 / math.pi) * backend.chebu_weighted_sums(np.cos(t), w, n_max)
    return ChebyshevSeries(coeffs=coeffs)


def chebyshev_partial_sum(series: ChebyshevSeries, N, t):
    """Partial sum sum_{n<=N} c_n U_n(t); N must not exceed the series degree."""
    if N > series.n_max:
        raise ValueError(f"N={N} exceeds series degree {series.n_max}")
    t = np.asarray(t, dtype=float)
    design = backend.chebu_design(t.ravel(), N)
    out = (series.coeffs[: N + 1] @ design).reshape(t.shape)
    return float(out) if t.ndim == 0 else out


def central_partial_sum(f: Field, N, x: GroupElement, n_max=None, theta_rule=None) -> float:
    """S_N f(x) for central f via the Chebyshev series of its profile."""
    if not f.is_central:
        raise ValueError(f"{f.name}: central path requires a central field")
    if n_max is None:
        n_max = N
    series = chebyshev_coeffs(lambda c: f.evaluate_from_cos(c), max(N, n_max), theta_rule)
    return float(chebyshev_partial_sum(series, N, min(1.0, max(-1.0, x.a1))))


def dini_lipschitz_profile(F, h_grid, base_points=2048, offsets=64, seed=0):
    """Sampled products omega(F, h) * log(1/h) on a decreasing h grid.

    omega is estimated as the max of |F(t) - F(s)| over ``offsets`` sampled
    pairs with |t - s| <= h around ``base_points`` base points: an estimator
    (a lower bound of the true modulus), not an exact supremum.
    """
    h_grid = np.asarray(h_grid, dtype=float)
    if np.any(h_grid <= 0.0) or np.any(h_grid >= 1.0):
        raise ValueError("h grid must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    t = rng.uniform(-1.0, 1.0, base_points)
    Ft = np.asarray(F(t), dtype=float)
    out = []
    for h in h_grid:
        du = rng.uniform(-h, h, (offsets, base_points))
        s = np.clip(t[None, :] + du, -1.0, 1.0)
        omega = float(np.max(np.abs(np.asarray(F(s), dtype=float) - Ft[None, :])))
        out.append((float(h), omega * math.log(1.0 / h)))
    return out
