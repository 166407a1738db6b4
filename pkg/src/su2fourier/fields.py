"""Shipped test fields and the CLI field-spec parser.

Specs: ``constant``, ``constant:c``, ``character:n``, ``witness:n``,
``lip:alpha``, ``profile:PATH`` (two-column theta,value file defining a
central piecewise-linear profile).
"""

import numpy as np

from .quadrature import Field
from .spectral import character_field
from .witness import witness_field
from . import backend


def constant_field(c=1.0) -> Field:
    c = float(c)
    return Field(
        cos_fn=lambda a: np.full(np.shape(a), c, dtype=float),
        is_central=True,
        name=f"constant:{c:g}",
        degree_hint=0,
    )


def lip_field(alpha) -> Field:
    """Central field (distance to the identity)^alpha = (2 - 2 cos t)^(alpha/2).

    Holder-continuous with exponent exactly alpha (constant 1).
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    return Field(
        cos_fn=lambda c: np.maximum(2.0 - 2.0 * np.asarray(c, dtype=float), 0.0) ** (alpha / 2.0),
        is_central=True,
        claimed_alpha=alpha,
        name=f"lip:{alpha:g}",
    )


def central_series_field(coeffs, name=None) -> Field:
    """Finite character sum sum_n coeffs[n] * chi_n (smooth central field)."""
    coeffs = np.asarray(coeffs, dtype=float)
    nmax = coeffs.size - 1

    def cos_fn(c):
        c = np.asarray(c, dtype=float)
        return (coeffs @ backend.chebu_design(c.ravel(), nmax)).reshape(c.shape)

    return Field(
        cos_fn=cos_fn,
        is_central=True,
        name=name or f"central-series:{nmax}",
        degree_hint=nmax,
    )


def central_profile_field(thetas, values, name="profile") -> Field:
    """Central field interpolating (theta, value) samples piecewise-linearly."""
    thetas = np.asarray(thetas, dtype=float)
    values = np.asarray(values, dtype=float)
    if thetas.ndim != 1 or thetas.size < 2 or np.any(np.diff(thetas) <= 0):
        raise ValueError("profile thetas must be strictly increasing, >= 2 samples")
    if thetas[0] < 0.0 or thetas[-1] > np.pi:
        raise ValueError("profile thetas must lie in [0, pi]")
    return Field(
        central_fn=lambda t: np.interp(t, thetas, values),
        is_central=True,
        name=name,
        theta_breakpoints=thetas.copy(),
    )


def random_central_field(degree, rng, name=None) -> Field:
    """Random smooth central field: character series with decaying coefficients."""
    n = np.arange(degree + 1)
    coeffs = rng.standard_normal(degree + 1) / (1.0 + n) ** 2
    return central_series_field(coeffs, name=name or f"random-central:{degree}")


def random_smooth_field(degree, rng, name=None) -> Field:
    """Random noncentral polynomial in the 4-vector coordinates (degree <= 3)."""
    if not 1 <= degree <= 3:
        raise ValueError("degree must be 1..3")
    exps = [
        (e0, e1, e2, e3)
        for e0 in range(degree + 1)
        for e1 in range(degree + 1)
        for e2 in range(degree + 1)
        for e3 in range(degree + 1)
        if 0 < e0 + e1 + e2 + e3 <= degree
    ]
    coeffs = rng.standard_normal(len(exps)) / len(exps)

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(pts.shape[:-1])
        for c, (e0, e1, e2, e3) in zip(coeffs, exps):
            out += c * pts[..., 0] ** e0 * pts[..., 1] ** e1 * pts[..., 2] ** e2 * pts[..., 3] ** e3
        return out

    return Field(fn, name=name or f"random-poly:{degree}", degree_hint=degree)


def parse_field_spec(spec) -> Field:
    """Build a shipped field from its CLI spec string; raises ValueError on bad specs."""
    spec = spec.strip()
    head, _, arg = spec.partition(":")
    head = head.lower()
    try:
        if head == "constant":
            return constant_field(float(arg) if arg else 1.0)
        if head == "character":
            return character_field(int(arg))
        if head == "witness":
            return witness_field(int(arg))
        if head == "lip":
            return lip_field(float(arg))
        if head == "profile":
            data = np.loadtxt(arg, delimiter=",", ndmin=2)
            return central_profile_field(data[:, 0], data[:, 1], name=f"profile:{arg}")
    except (ValueError, OSError, IndexError) as exc:
        raise ValueError(f"bad field spec {spec!r}: {exc}") from None
    raise ValueError(
        f"unknown field spec {spec!r}; expected constant[:c], character:n, "
        "witness:n, lip:alpha, or profile:PATH"
    )
