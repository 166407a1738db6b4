"""Quadrature rules realizing normalized Haar measure on SU(2).

The measure in the (phi, theta, psi) chart has density sin^2(theta) sin(phi)
/ (2 pi^2); theta and phi use Gauss-Legendre, psi a periodic trapezoid rule
(spectrally accurate for the 2pi-periodic integrand).  Product integration is
performed slab-by-slab in theta with fixed accumulation order, so results are
reproducible bit-for-bit for a fixed configuration.
"""

import functools
import math
import warnings

import numpy as np
from numpy.polynomial.legendre import leggauss

from .group import GroupElement, eigen_angle, invert_array, mul_array

TWO_PI_SQ = 2.0 * math.pi**2


class Rule1D:
    """Immutable 1D rule: nodes, positive weights, interval; sum w = b - a."""

    __slots__ = ("nodes", "weights", "interval", "kind")

    def __init__(self, nodes, weights, interval, kind):
        self.nodes = np.ascontiguousarray(nodes, dtype=float)
        self.weights = np.ascontiguousarray(weights, dtype=float)
        self.interval = (float(interval[0]), float(interval[1]))
        self.kind = kind
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return self.nodes.size

    def integrate(self, values):
        return float(np.dot(values, self.weights))

    def __repr__(self):
        return f"Rule1D({self.kind}, K={len(self)}, interval={self.interval})"


@functools.lru_cache(maxsize=None)
def _leggauss_base(K):
    return leggauss(K)


@functools.lru_cache(maxsize=None)
def gauss_legendre(K, a=-1.0, b=1.0) -> Rule1D:
    """K-node Gauss-Legendre rule on [a, b]; exact for polynomial degree 2K-1."""
    if K < 1:
        raise ValueError("node count must be >= 1")
    if not a < b:
        raise ValueError("need a < b")
    x, w = _leggauss_base(K)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return Rule1D(mid + half * x, half * w, (a, b), "gauss")


@functools.lru_cache(maxsize=None)
def periodic_trapezoid(K, a=0.0, b=2.0 * math.pi) -> Rule1D:
    """Uniform rule without the duplicated endpoint; spectral for periodic maps."""
    if K < 1:
        raise ValueError("node count must be >= 1")
    h = (b - a) / K
    return Rule1D(a + h * np.arange(K), np.full(K, h), (a, b), "trapezoid")


def composite_gauss(breakpoints, order) -> Rule1D:
    """Per-panel Gauss-Legendre between consecutive breakpoints."""
    breakpoints = np.asarray(breakpoints, dtype=float)
    if breakpoints.size < 2 or np.any(np.diff(breakpoints) <= 0):
        raise ValueError("breakpoints must be strictly increasing, >= 2 entries")
    x, w = _leggauss_base(order)
    lo, hi = breakpoints[:-1], breakpoints[1:]
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return Rule1D(nodes, weights, (breakpoints[0], breakpoints[-1]), "composite")


def default_node_count(degree):
    """Default sizing rule: enough nodes for trigonometric degree + safety margin."""
    return max(64, 4 * (degree + 2))


def theta_rule_for(degree, breakpoints=None) -> Rule1D:
    """Rule on [0, pi] resolving oscillation of the given trigonometric degree.

    With breakpoints the rule is panel-aligned (for piecewise-smooth
    integrands) with per-panel order scaled to the phase swept per panel.
    """
    if breakpoints is None:
        return gauss_legendre(default_node_count(degree), 0.0, math.pi)
    pts = np.unique(np.clip(np.asarray(breakpoints, dtype=float), 0.0, math.pi))
    if pts[0] > 1e-15:
        pts = np.insert(pts, 0, 0.0)
    if pts[-1] < math.pi - 1e-15:
        pts = np.append(pts, math.pi)
    width = float(np.max(np.diff(pts)))
    order = max(8, int(math.ceil(0.75 * width * (degree + 2))) + 4)
    return composite_gauss(pts, order)


class HaarRule:
    """Product rule (theta, phi, psi) with the 1/(2 pi^2) normalization."""

    __slots__ = ("theta_rule", "phi_rule", "psi_rule", "degree", "_cache")

    def __init__(self, theta_rule, phi_rule, psi_rule, degree=None):
        self.theta_rule = theta_rule
        self.phi_rule = phi_rule
        self.psi_rule = psi_rule
        self.degree = degree
        self._cache = {}

    @classmethod
    @functools.lru_cache(maxsize=32)
    def for_degree(cls, degree):
        K = default_node_count(degree)
        return cls(
            gauss_legendre(K, 0.0, math.pi),
            gauss_legendre(K, 0.0, math.pi),
            periodic_trapezoid(K, 0.0, 2.0 * math.pi),
            degree=degree,
        )

    def with_theta(self, theta_rule):
        return HaarRule(theta_rule, self.phi_rule, self.psi_rule, degree=None)

    def supports_degree(self, degree):
        if self.degree is not None:
            return self.degree >= degree
        return len(self.theta_rule) >= 2 * (degree + 2)

    def node_count(self):
        return len(self.theta_rule) * len(self.phi_rule) * len(self.psi_rule)

    def plane(self):
        """(cos phi, sin phi cos psi, sin phi sin psi, w2) on the (phi, psi) grid.

        w2 = (w_phi sin phi) x w_psi raveled; sums to ~4 pi.
        """
        if "plane" not in self._cache:
            phi, wphi = self.phi_rule.nodes, self.phi_rule.weights
            psi, wpsi = self.psi_rule.nodes, self.psi_rule.weights
            sp, cp = np.sin(phi), np.cos(phi)
            cpsi, spsi = np.cos(psi), np.sin(psi)
            cphi = np.repeat(cp, psi.size)
            spcps = np.outer(sp, cpsi).ravel()
            spsps = np.outer(sp, spsi).ravel()
            w2 = np.outer(wphi * sp, wpsi).ravel()
            self._cache["plane"] = (cphi, spcps, spsps, w2)
        return self._cache["plane"]

    def slab_points(self, theta):
        """Chart points of the (phi, psi) plane at fixed theta, shape (M, 4)."""
        cphi, spcps, spsps, _ = self.plane()
        st, ct = math.sin(theta), math.cos(theta)
        pts = np.empty((cphi.size, 4))
        pts[:, 0] = ct
        pts[:, 1] = st * cphi
        pts[:, 2] = st * spcps
        pts[:, 3] = st * spsps
        return pts

    def theta_weights(self):
        """w_theta sin^2(theta) vector."""
        if "tw" not in self._cache:
            t = self.theta_rule.nodes
            self._cache["tw"] = self.theta_rule.weights * np.sin(t) ** 2
        return self._cache["tw"]

    def cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]


class Field:
    """Deterministic real evaluator on SU(2) with centrality metadata.

    ``fn`` maps an array of unit 4-vectors, shape (..., 4), to values of shape
    (...).  Central fields may instead provide ``cos_fn`` (values from
    cos(eigen-angle)) or ``central_fn`` (values from the eigen-angle); the
    4-vector path is derived.  Evaluators must be pure and reentrant; ``evals``
    counts evaluated points (instrumentation, not part of the value contract).
    """

    def __init__(
        self,
        fn=None,
        *,
        is_central=False,
        claimed_alpha=None,
        name="field",
        central_fn=None,
        cos_fn=None,
        theta_breakpoints=None,
        degree_hint=None,
    ):
        if claimed_alpha is not None and not 0.0 < claimed_alpha < 1.0:
            raise ValueError("claimed_alpha must lie in (0, 1)")
        if fn is None and cos_fn is None and central_fn is None:
            raise ValueError("need one of fn, cos_fn, central_fn")
        if (cos_fn is not None or central_fn is not None) and not is_central:
            raise ValueError("cos_fn/central_fn imply a central field")
        self.is_central = is_central
        self.claimed_alpha = claimed_alpha
        self.name = name
        self.theta_breakpoints = theta_breakpoints
        self.degree_hint = degree_hint
        self.evals = 0
        if cos_fn is None and central_fn is not None:
            cos_fn = lambda c: central_fn(np.arccos(np.clip(c, -1.0, 1.0)))
        self._cos_fn = cos_fn
        self._central_fn = central_fn
        if fn is None:
            fn = lambda pts: cos_fn(np.clip(pts[..., 0], -1.0, 1.0))
        self._fn = fn

    def evaluate(self, x: GroupElement) -> float:
        self.evals += 1
        return float(self._fn(x.as_array()[None, :])[0])

    def evaluate_many(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        self.evals += pts[..., 0].size
        return self._fn(pts)

    def evaluate_from_cos(self, c) -> np.ndarray:
        """Central fast path: values from cos(eigen-angle)."""
        if self._cos_fn is None:
            raise ValueError(f"{self.name}: not a central field")
        c = np.asarray(c, dtype=float)
        self.evals += c.size
        return self._cos_fn(np.clip(c, -1.0, 1.0))

    def evaluate_central(self, theta) -> np.ndarray:
        """Central fast path: values from the eigen-angle."""
        if self._central_fn is not None:
            theta = np.asarray(theta, dtype=float)
            self.evals += theta.size
            return self._central_fn(theta)
        return self.evaluate_from_cos(np.cos(theta))

    def __call__(self, x):
        return self.evaluate(x)

    def __repr__(self):
        return f"Field({self.name!r}, central={self.is_central})"


def haar_integral(f: Field, rule: HaarRule) -> float:
    """(1/2 pi^2) sum of f over the full product grid against sin^2 t sin phi.

    Evaluates the field at every grid node (no centrality shortcut); the
    theta-slab accumulation order is fixed.
    """
    _, _, _, w2 = rule.plane()
    slab = np.empty(len(rule.theta_rule))
    for i, theta in enumerate(rule.theta_rule.nodes):
        vals = f.evaluate_many(rule.slab_points(theta))
        slab[i] = np.dot(vals, w2)
    return float(np.dot(rule.theta_weights(), slab)) / TWO_PI_SQ


def central_integral(g, theta_rule: Rule1D) -> float:
    """(2/pi) integral of g(theta) sin^2(theta) over [0, pi].

    ``g`` is a vectorized map on [0, pi] or a central Field.  For central f
    this equals the Haar integral; the two routes are kept independent so they
    can cross-check each other.
    """
    if isinstance(g, Field):
        if not g.is_central:
            raise ValueError(f"{g.name}: central_integral requires a central field")
        vals = g.evaluate_central(theta_rule.nodes)
    else:
        vals = np.asarray(g(theta_rule.nodes), dtype=float)
    t = theta_rule.nodes
    return (2.0 / math.pi) * float(np.dot(theta_rule.weights * np.sin(t) ** 2, vals))


def convolve(f: Field, g: Field, rule: HaarRule, x: GroupElement) -> float:
    """(f * g)(x): Haar integral of y -> f(x y^{-1}) g(y) over the product grid."""
    _, _, _, w2 = rule.plane()
    xv = x.as_array()
    slab = np.empty(len(rule.theta_rule))
    for i, theta in enumerate(rule.theta_rule.nodes):
        ypts = rule.slab_points(theta)
        xy = mul_array(xv, invert_array(ypts))
        vals = f.evaluate_many(xy) * g.evaluate_many(ypts)
        slab[i] = np.dot(vals, w2)
    return float(np.dot(rule.theta_weights(), slab)) / TWO_PI_SQ


def warn_if_undersized(rule: HaarRule, degree, what):
    if not rule.supports_degree(degree):
        warnings.warn(
            f"{what}: quadrature rule (degree {rule.degree}, "
            f"{len(rule.theta_rule)} theta nodes) may under-resolve degree {degree}",
            RuntimeWarning,
            stacklevel=3,
        )
        return True
    return False
