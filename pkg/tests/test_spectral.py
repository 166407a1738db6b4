import math

import numpy as np
import pytest

from su2fourier import group, spectral
from su2fourier.fields import (
    central_series_field,
    constant_field,
    lip_field,
    random_central_field,
    random_smooth_field,
)
from su2fourier.quadrature import HaarRule, gauss_legendre, periodic_trapezoid
from su2fourier.spectral import (
    character,
    character_field,
    character_sums,
    chebyshev_coeffs,
    chebyshev_partial_sum,
    chebyshev_u,
    dini_lipschitz_profile,
    dirichlet_scalar,
    dirichlet_scalar_deriv,
    dirichlet_su2,
    partial_sum_direct,
    partial_sum_reduced,
    reduced_from_profile,
    reduced_rules,
    spherical_means,
)


def coordinate_grid(m=6):
    """Small (phi, theta, psi) product grid of group elements."""
    pts = []
    for phi in np.linspace(0.2, math.pi - 0.2, m):
        for theta in np.linspace(0.15, math.pi - 0.15, m):
            for psi in np.linspace(0.0, 2 * math.pi, m, endpoint=False):
                pts.append(group.from_spherical((phi, theta, psi)))
    return pts


def test_character_trivial_cases():
    t = np.linspace(0, math.pi, 65)
    assert np.allclose(character(0, t), 1.0)
    for n in (1, 4, 9):
        assert abs(character(n, 0.0) - (n + 1)) < 1e-12
        assert abs(character(n, math.pi) - (-1.0) ** n * (n + 1)) < 1e-12


def test_character_quotient_and_polynomial_forms_agree():
    t = np.linspace(1e-8, math.pi - 1e-8, 257)
    for n in (1, 3, 8):
        quotient = np.sin((n + 1) * t) / np.sin(t)
        assert np.max(np.abs(character(n, t) - quotient)) < 1e-6
        assert np.max(np.abs(chebyshev_u(n, np.cos(t)) - quotient)) < 1e-6


def test_character_rejects_negative_degree():
    with pytest.raises(ValueError):
        character(-1, 0.5)
    with pytest.raises(ValueError):
        chebyshev_u(-2, 0.1)


def test_dirichlet_scalar_values():
    for m in (0, 1, 5, 20):
        assert abs(dirichlet_scalar(m, 0.0) - (2 * m + 1)) < 1e-12
    assert abs(dirichlet_scalar(1, math.pi) - (-1.0)) < 1e-12
    t = np.linspace(-math.pi, math.pi, 41)
    assert np.max(np.abs(dirichlet_scalar(4, -t) - dirichlet_scalar(4, t))) < 1e-12


def test_dirichlet_deriv_values_and_fd_oracle():
    assert dirichlet_scalar_deriv(7, 0.0) == 0.0
    assert abs(dirichlet_scalar_deriv(1, math.pi / 2) - (-2.0)) < 1e-14
    t = np.linspace(0.05, math.pi - 0.05, 50)
    h = 1e-6
    for m in (1, 4, 12):
        fd = (dirichlet_scalar(m, t + h) - dirichlet_scalar(m, t - h)) / (2 * h)
        assert np.max(np.abs(dirichlet_scalar_deriv(m, t) - fd)) < 1e-6


def test_dirichlet_su2_endpoint_and_identity():
    for N in (0, 3, 10):
        want = (N + 1) * (N + 2) * (2 * N + 3) / 6.0
        assert abs(dirichlet_su2(N, 0.0) - want) < 1e-9 * want
    t = np.linspace(0, math.pi, 9)
    assert np.allclose(dirichlet_su2(0, t), 1.0)


def test_su2_kernel_identity():
    t = np.linspace(0.1, math.pi - 0.1, 400)
    for N in (0, 5, 33, 64):
        lhs = dirichlet_su2(N, t)
        rhs = -dirichlet_scalar_deriv(N + 1, t) / (2.0 * np.sin(t))
        assert np.max(np.abs(lhs - rhs)) < 1e-8


def test_partial_sum_of_constant():
    rng = np.random.default_rng(0)
    x = group.random_element(rng)
    f = constant_field(1.0)
    assert abs(partial_sum_direct(f, 3, x) - 1.0) < 1e-10
    assert abs(partial_sum_reduced(f, 3, x) - 1.0) < 1e-10


def test_projection_and_annihilation_small_grid():
    # S_N chi_n = chi_n for n <= N and 0 for n > N, by both paths
    rule = HaarRule(
        gauss_legendre(72, 0.0, math.pi),
        gauss_legendre(64, 0.0, math.pi),
        periodic_trapezoid(64),
    )
    rng = np.random.default_rng(1)
    pts = [group.random_element(rng) for _ in range(6)] + [group.IDENTITY]
    worst = 0.0
    for x in pts:
        direct, reduced = character_sums(8, 6, x, rule)
        for n in range(9):
            truth = chebyshev_u(n, x.a1)
            for N in range(7):
                want = truth if n <= N else 0.0
                worst = max(worst, abs(direct[n, N] - want), abs(reduced[n, N] - want))
    assert worst < 1e-6


def test_character_sums_pin_scalar_ops():
    # the batched sweep must reproduce the per-call operations on the same rule
    rng = np.random.default_rng(2)
    x = group.random_element(rng)
    rule = HaarRule.for_degree(8)
    direct, reduced = character_sums(4, 3, x, rule)
    for n, N in ((0, 0), (2, 3), (4, 1), (3, 3)):
        f = character_field(n)
        assert abs(direct[n, N] - partial_sum_direct(f, N, x, rule)) < 1e-11
        assert abs(reduced[n, N] - partial_sum_reduced(f, N, x, rule)) < 1e-11


def test_partial_sum_projection_via_scalar_ops():
    rng = np.random.default_rng(3)
    x = group.random_element(rng)
    f = character_field(2)
    truth = chebyshev_u(2, x.a1)
    assert abs(partial_sum_direct(f, 5, x) - truth) < 1e-8
    assert abs(partial_sum_direct(f, 1, x)) < 1e-8
    assert abs(partial_sum_reduced(f, 5, x) - truth) < 1e-7


def test_partial_sum_warns_on_undersized_rule():
    rng = np.random.default_rng(4)
    x = group.random_element(rng)
    with pytest.warns(RuntimeWarning):
        partial_sum_direct(constant_field(1.0), 40, x, HaarRule.for_degree(2))


def test_spherical_means_examples():
    thetas = np.linspace(0.1, math.pi - 0.1, 9)
    prof = spherical_means(constant_field(1.0), group.IDENTITY, thetas)
    assert np.max(np.abs(prof.values - 1.0)) < 1e-12
    # central f at the identity: the mean collapses to the profile itself
    f = central_series_field([0.3, -0.4, 0.2])
    prof = spherical_means(f, group.IDENTITY, thetas)
    assert np.max(np.abs(prof.values - f.evaluate_central(thetas))) < 1e-12
    # chi_1 gives 2 cos(theta)
    prof = spherical_means(character_field(1), group.IDENTITY, thetas)
    assert np.max(np.abs(prof.values - 2.0 * np.cos(thetas))) < 1e-12


def test_spherical_means_noncentral_matches_central_encoding():
    # the same function given with and without centrality metadata must agree
    rng = np.random.default_rng(5)
    coeffs = [0.2, 0.4, -0.1, 0.3]
    central = central_series_field(coeffs)
    opaque = spectral.Field(
        lambda pts: central.evaluate_many(pts), name="opaque"
    )
    x = group.random_element(rng)
    thetas = np.linspace(0.2, 3.0, 7)
    a = spherical_means(central, x, thetas).values
    b = spherical_means(opaque, x, thetas).values
    assert np.max(np.abs(a - b)) < 1e-12


def test_path_equivalence_on_random_fields():
    rng = np.random.default_rng(6)
    rule = HaarRule.for_degree(12)
    for make in (lambda: random_central_field(5, rng), lambda: random_smooth_field(3, rng)):
        f = make()
        for _ in range(2):
            x = group.random_element(rng)
            for N in (0, 4, 12):
                a = partial_sum_direct(f, N, x, rule)
                b = partial_sum_reduced(f, N, x, rule)
                assert abs(a - b) < 1e-7


def test_reduced_profile_reuse_across_degrees():
    rng = np.random.default_rng(7)
    f = random_central_field(4, rng)
    x = group.random_element(rng)
    rules = reduced_rules(10)
    prof = spherical_means(f, x, rules.theta_rule.nodes, rules.phi_rule, rules.psi_rule)
    for N in (0, 3, 10):
        a = reduced_from_profile(prof, rules.theta_rule, N)
        b = partial_sum_reduced(f, N, x, rules)
        assert abs(a - b) < 1e-13


def test_reduced_from_profile_checks_grid():
    rng = np.random.default_rng(8)
    f = random_central_field(2, rng)
    rules = reduced_rules(4)
    prof = spherical_means(f, group.IDENTITY, np.linspace(0.1, 3.0, 11))
    with pytest.raises(ValueError):
        reduced_from_profile(prof, rules.theta_rule, 2)


def test_chebyshev_coeffs_orthonormal_basis():
    for k in (0, 2, 5):
        series = chebyshev_coeffs(lambda t, k=k: chebyshev_u(k, t), 8)
        want = np.zeros(9)
        want[k] = 1.0
        assert np.max(np.abs(series.coeffs - want)) < 1e-10


def test_chebyshev_coeffs_examples():
    series = chebyshev_coeffs(lambda t: np.ones_like(t), 6)
    assert abs(series.coeffs[0] - 1.0) < 1e-12
    assert np.max(np.abs(series.coeffs[1:])) < 1e-12
    # t = U_1(t)/2
    series = chebyshev_coeffs(lambda t: t, 6)
    want = np.zeros(7)
    want[1] = 0.5
    assert np.max(np.abs(series.coeffs - want)) < 1e-12


def test_chebyshev_partial_sum_basics():
    series = chebyshev_coeffs(lambda t: np.ones_like(t), 4)
    t = np.linspace(-1, 1, 17)
    for N in (0, 2, 4):
        assert np.max(np.abs(chebyshev_partial_sum(series, N, t) - 1.0)) < 1e-12
    assert chebyshev_partial_sum(series, 0, 0.3) == pytest.approx(series.coeffs[0])
    with pytest.raises(ValueError):
        chebyshev_partial_sum(series, 5, 0.0)


def test_central_correspondence():
    # s_N of the profile at cos(eigen-angle) equals the partial sum on the group
    rng = np.random.default_rng(9)
    for f in (central_series_field([0.5, 0.2, -0.3, 0.1, 0.05]), lip_smooth()):
        series = chebyshev_coeffs(lambda c: f.evaluate_from_cos(c), 40)
        for _ in range(3):
            x = group.random_element(rng)
            for N in (2, 8, 16):
                a = chebyshev_partial_sum(series, N, x.a1)
                b = partial_sum_reduced(f, N, x, HaarRule.for_degree(40))
                assert abs(a - b) < 1e-7


def lip_smooth():
    # smooth central field (Holder of every exponent): exp(cos theta)
    return spectral.Field(
        cos_fn=lambda c: np.exp(c), is_central=True, name="exp-cos", degree_hint=None
    )


def test_dini_lipschitz_profile_cases():
    h = np.geomspace(0.2, 1e-3, 10)
    flat = dini_lipschitz_profile(lambda t: np.full(np.shape(t), 3.0), h)
    assert all(v == 0.0 for _, v in flat)
    prods = [v for _, v in dini_lipschitz_profile(lambda t: np.abs(t) ** 0.5, h, seed=1)]
    # omega ~ h^{1/2}, so the product h^{1/2} log(1/h) decays
    assert prods[-1] < prods[0] / 3
    with pytest.raises(ValueError):
        dini_lipschitz_profile(lambda t: t, [0.5, 1.5])


def test_dini_lipschitz_witness_tail_decreases():
    from su2fourier.witness import SawtoothWitness, sawtooth_eval

    w = SawtoothWitness(6)
    F = lambda t: sawtooth_eval(w, np.arccos(np.clip(t, -1, 1)))
    h = np.geomspace(0.3, 1e-4, 12)
    prods = [v for _, v in dini_lipschitz_profile(F, h, seed=2)]
    assert prods[-1] < prods[2]
