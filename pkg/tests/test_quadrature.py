import math

import numpy as np
import pytest

from su2fourier import group, quadrature, spectral
from su2fourier.fields import central_series_field, constant_field, random_smooth_field
from su2fourier.quadrature import (
    Field,
    HaarRule,
    central_integral,
    composite_gauss,
    convolve,
    gauss_legendre,
    haar_integral,
    periodic_trapezoid,
)


def product_field(n, m):
    """chi_n * chi_m as a central field (for literal Gram integrals)."""
    return Field(
        cos_fn=lambda c: spectral.chebyshev_u(n, c) * spectral.chebyshev_u(m, c),
        is_central=True,
        name=f"chi{n}*chi{m}",
    )


def test_gauss_two_point_closed_form():
    # moment equations on [-1, 1] give nodes +-1/sqrt(3), weights 1, 1
    rule = gauss_legendre(2)
    assert np.allclose(sorted(rule.nodes), [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    assert np.allclose(rule.weights, [1.0, 1.0], atol=1e-15)


def test_gauss_exactness_degree():
    rule = gauss_legendre(2, 0.0, 1.0)
    assert abs(rule.integrate(rule.nodes**2) - 1.0 / 3.0) < 1e-15
    rule = gauss_legendre(8, 0.0, 1.0)
    # exact through degree 15, not 16
    assert abs(rule.integrate(rule.nodes**15) - 1.0 / 16.0) < 1e-14
    assert abs(rule.integrate(rule.nodes**16) - 1.0 / 17.0) > 1e-13


def test_gauss_sin_squared():
    rule = gauss_legendre(32, 0.0, math.pi)
    assert abs(rule.integrate(np.sin(rule.nodes) ** 2) - math.pi / 2) < 1e-12


def test_gauss_rejects_bad_args():
    with pytest.raises(ValueError):
        gauss_legendre(0, 0.0, 1.0)
    with pytest.raises(ValueError):
        gauss_legendre(4, 1.0, 0.0)


def test_weight_sums_and_ranges():
    for rule in (
        gauss_legendre(17, 0.0, math.pi),
        periodic_trapezoid(21, 0.0, 2 * math.pi),
        composite_gauss([0.0, 0.3, 1.1, math.pi], 6),
    ):
        a, b = rule.interval
        assert abs(rule.weights.sum() - (b - a)) < 1e-12
        assert np.all(rule.weights > 0)
        assert np.all((rule.nodes >= a) & (rule.nodes <= b))


def test_periodic_trapezoid_spectral_accuracy():
    rule = periodic_trapezoid(16)
    assert abs(rule.integrate(np.cos(3 * rule.nodes) ** 2) - math.pi) < 1e-13


def test_composite_gauss_rejects_bad_breakpoints():
    with pytest.raises(ValueError):
        composite_gauss([0.0], 4)
    with pytest.raises(ValueError):
        composite_gauss([0.0, 1.0, 0.5], 4)


def test_haar_normalization():
    for degree in (0, 8):
        rule = HaarRule.for_degree(degree)
        assert abs(haar_integral(constant_field(1.0), rule) - 1.0) < 1e-10


def test_haar_character_orthogonality_examples():
    rule = HaarRule.for_degree(4)
    # chi_1^2 integrates to 1, chi_2 against 1 to 0 (Schur orthogonality);
    # oracle: values stable under quadrature refinement
    fine = HaarRule.for_degree(16)
    for f, want in ((product_field(1, 1), 1.0), (product_field(2, 0), 0.0)):
        got = haar_integral(f, rule)
        assert abs(got - want) < 1e-10
        assert abs(got - haar_integral(f, fine)) < 1e-10


def test_character_gram_matches_literal_haar_integral():
    # the batched Gram sweep factorizes the plane sum; it must equal the
    # literal product-grid integral to summation-reassociation accuracy
    rule = HaarRule.for_degree(8)
    gram = spectral.character_gram(4, rule)
    for n, m in ((0, 0), (1, 1), (2, 1), (4, 3), (4, 4)):
        literal = haar_integral(product_field(n, m), rule)
        assert abs(gram[n, m] - literal) < 1e-12


def test_character_orthonormality_invariant():
    # G[n, m] = integral of chi_n chi_m for n, m <= 32 with the rule sized for
    # the product degree 64
    gram = spectral.character_gram(32, HaarRule.for_degree(64))
    assert float(np.max(np.abs(gram - np.eye(33)))) < 1e-8


def test_central_integral_examples():
    rule = gauss_legendre(64, 0.0, math.pi)
    assert abs(central_integral(lambda t: np.ones_like(t), rule) - 1.0) < 1e-12
    for n in (1, 2, 5):
        assert abs(central_integral(lambda t: spectral.character(n, t), rule)) < 1e-10


def test_central_integral_agrees_with_haar():
    f = central_series_field([0.7, -0.3, 0.4, 0.0, 0.2])
    rule = HaarRule.for_degree(4)
    a = haar_integral(f, rule)
    b = central_integral(f, rule.theta_rule)
    assert abs(a - b) < 1e-10


def test_central_integral_rejects_noncentral():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        central_integral(random_smooth_field(2, rng), gauss_legendre(8, 0.0, math.pi))


def test_refinement_convergence():
    rng = np.random.default_rng(1)
    for f in (central_series_field([0.2, 0.1, -0.4]), random_smooth_field(3, rng)):
        coarse = haar_integral(f, HaarRule.for_degree(4))
        fine = haar_integral(f, HaarRule.for_degree(12))
        assert abs(coarse - fine) < 1e-10


def test_convolution_with_constant_is_mean():
    rng = np.random.default_rng(2)
    f = random_smooth_field(2, rng)
    rule = HaarRule.for_degree(4)
    x = group.random_element(rng)
    got = convolve(f, constant_field(1.0), rule, x)
    assert abs(got - haar_integral(f, rule)) < 1e-12


def test_convolution_schur_orthogonality():
    rule = HaarRule.for_degree(6)
    # chi_n * chi_n at e equals chi_n(e)/(n+1) = 1
    for n in (1, 2):
        got = convolve(
            spectral.character_field(n), spectral.character_field(n), rule, group.IDENTITY
        )
        assert abs(got - 1.0) < 1e-10
    rng = np.random.default_rng(3)
    x = group.random_element(rng)
    assert abs(convolve(spectral.character_field(1), spectral.character_field(2), rule, x)) < 1e-8


def test_field_validation_and_counting():
    with pytest.raises(ValueError):
        Field(cos_fn=lambda c: c, is_central=False)
    with pytest.raises(ValueError):
        Field(lambda pts: pts[..., 0], claimed_alpha=1.5)
    f = constant_field(2.0)
    f.evals = 0
    rule = HaarRule.for_degree(0)
    haar_integral(f, rule)
    assert f.evals == rule.node_count()


def test_centrality_flag_matches_conjugation():
    # claimed-central fields are constant on conjugacy classes
    rng = np.random.default_rng(4)
    f = central_series_field([0.1, 0.5, -0.2, 0.3])
    for _ in range(50):
        x, y = group.random_element(rng), group.random_element(rng)
        conj = group.multiply(group.multiply(y, x), group.inverse(y))
        assert abs(f.evaluate(x) - f.evaluate(conj)) < 1e-10


def test_theta_rule_for_panels():
    breaks = np.array([0.0, 0.5, 1.5, math.pi])
    rule = quadrature.theta_rule_for(10, breaks)
    assert rule.kind == "composite"
    # panel-aligned rules integrate a kinked piecewise-smooth map exactly
    vals = np.minimum(rule.nodes, 1.5)
    want = 1.5**2 / 2 + (math.pi - 1.5) * 1.5
    assert abs(rule.integrate(vals) - want) < 1e-12
