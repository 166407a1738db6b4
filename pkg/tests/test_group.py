import math

import numpy as np
import pytest

from su2fourier import group


def matrix_product_oracle(x, y):
    """Brute-force 2x2 complex matrix product, read back as a 4-vector."""
    m = x.as_matrix() @ y.as_matrix()
    return np.array([m[0, 0].real, m[0, 0].imag, m[0, 1].real, m[0, 1].imag])


def test_multiply_identity():
    rng = np.random.default_rng(0)
    x = group.random_element(rng)
    assert group.multiply(group.IDENTITY, x) == x
    assert group.multiply(x, group.IDENTITY) == x


def test_multiply_basis_case():
    got = group.multiply(group.GroupElement(0, 1, 0, 0), group.GroupElement(0, 0, 1, 0))
    assert np.allclose(got.as_array(), [0, 0, 0, 1], atol=1e-15)


def test_multiply_matches_matrix_oracle():
    rng = np.random.default_rng(1)
    for _ in range(200):
        x, y = group.random_element(rng), group.random_element(rng)
        got = group.multiply(x, y).as_array()
        assert np.max(np.abs(got - matrix_product_oracle(x, y))) < 1e-14


def test_unit_norm_preserved():
    rng = np.random.default_rng(2)
    for _ in range(200):
        x, y = group.random_element(rng), group.random_element(rng)
        v = group.multiply(x, y).as_array()
        assert abs(v @ v - 1.0) < 1e-12
        v = group.inverse(x).as_array()
        assert abs(v @ v - 1.0) < 1e-12


def test_construction_rejects_non_unit():
    with pytest.raises(ValueError):
        group.GroupElement(1.0, 1.0, 0.0, 0.0)


def test_inverse_cases():
    assert group.inverse(group.IDENTITY) == group.IDENTITY
    got = group.inverse(group.GroupElement(0, 1, 0, 0))
    assert np.allclose(got.as_array(), [0, -1, 0, 0])
    rng = np.random.default_rng(3)
    for _ in range(100):
        x = group.random_element(rng)
        assert group.distance(group.multiply(group.inverse(x), x), group.IDENTITY) < 1e-12
        # inverse equals the matrix conjugate transpose
        want = x.as_matrix().conj().T
        got = group.inverse(x).as_matrix()
        assert np.max(np.abs(got - want)) < 1e-14


def test_distance_basics():
    rng = np.random.default_rng(4)
    x = group.random_element(rng)
    assert group.distance(x, x) == 0.0
    assert group.distance(group.IDENTITY, group.NEG_IDENTITY) == 2.0


def test_distance_trace_formula():
    # d^2 = tr((x-y)(x-y)^*) / 2 on the matrix side
    rng = np.random.default_rng(5)
    for _ in range(100):
        x, y = group.random_element(rng), group.random_element(rng)
        diff = x.as_matrix() - y.as_matrix()
        want = math.sqrt(np.trace(diff @ diff.conj().T).real / 2.0)
        assert abs(group.distance(x, y) - want) < 1e-12


def test_distance_bi_invariance():
    rng = np.random.default_rng(6)
    for _ in range(100):
        x, y, z = (group.random_element(rng) for _ in range(3))
        d = group.distance(x, y)
        assert abs(group.distance(group.multiply(z, x), group.multiply(z, y)) - d) < 1e-12
        assert abs(group.distance(group.multiply(x, z), group.multiply(y, z)) - d) < 1e-12


def test_from_spherical_poles():
    for phi in (0.0, 1.0, math.pi):
        for psi in (0.0, 2.0, 2 * math.pi):
            assert group.from_spherical((phi, 0.0, psi)) == group.IDENTITY
            assert group.from_spherical((phi, math.pi, psi)) == group.NEG_IDENTITY


def test_spherical_roundtrip():
    rng = np.random.default_rng(7)
    for _ in range(200):
        c = group.SphericalCoords(
            rng.uniform(0, math.pi), rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        )
        x = group.from_spherical(c)
        assert abs(group.eigen_angle(x) - c.theta) < 1e-12
        back = group.from_spherical(group.to_spherical(x))
        assert group.distance(back, x) < 1e-10


def test_coords_range_validation():
    with pytest.raises(ValueError):
        group.from_spherical((-0.1, 1.0, 1.0))
    with pytest.raises(ValueError):
        group.from_spherical((1.0, 4.0, 1.0))
    with pytest.raises(ValueError):
        group.from_spherical((1.0, 1.0, 7.0))


def test_eigen_angle_cases():
    assert group.eigen_angle(group.IDENTITY) == 0.0
    assert group.eigen_angle(group.NEG_IDENTITY) == math.pi
    for theta in np.linspace(0, math.pi, 33):
        assert abs(group.eigen_angle(group.diag_element(theta)) - theta) < 1e-12


def test_eigen_angle_matches_eigenvalues():
    # arccos(a1) reproduces the phase of the matrix eigenvalues
    rng = np.random.default_rng(8)
    for _ in range(50):
        x = group.random_element(rng)
        ev = np.linalg.eigvals(x.as_matrix())
        want = abs(math.atan2(ev[0].imag, ev[0].real))
        assert abs(group.eigen_angle(x) - want) < 1e-10


def test_diag_element_cases():
    assert group.diag_element(0.0) == group.IDENTITY
    assert np.allclose(group.diag_element(math.pi / 2).as_array(), [0, 1, 0, 0])
    with pytest.raises(ValueError):
        group.diag_element(-0.5)


def test_conjugation_preserves_eigen_angle():
    rng = np.random.default_rng(9)
    for _ in range(100):
        theta = rng.uniform(0, math.pi)
        y = group.random_element(rng)
        conj = group.multiply(group.multiply(y, group.diag_element(theta)), group.inverse(y))
        assert abs(group.eigen_angle(conj) - theta) < 1e-10


def test_chart_grid_is_a_net():
    # a modest chart grid leaves no point further than twice its angular spacing
    m = 16
    phis = np.linspace(0, math.pi, m)
    thetas = np.linspace(0, math.pi, m)
    psis = np.linspace(0, 2 * math.pi, 2 * m, endpoint=False)
    pts = np.stack(
        [
            np.cos(thetas)[None, :, None] * np.ones((m, 1, 2 * m)),
            (np.sin(thetas)[None, :, None] * np.cos(phis)[:, None, None])
            * np.ones((1, 1, 2 * m)),
            np.sin(thetas)[None, :, None]
            * np.sin(phis)[:, None, None]
            * np.cos(psis)[None, None, :],
            np.sin(thetas)[None, :, None]
            * np.sin(phis)[:, None, None]
            * np.sin(psis)[None, None, :],
        ],
        axis=-1,
    ).reshape(-1, 4)
    rng = np.random.default_rng(10)
    samples = group.random_elements(rng, 500)
    d2 = ((samples[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    covering_radius = np.sqrt(d2.min(axis=1)).max()
    assert covering_radius < 2.0 * (math.pi / (m - 1))


def test_mul_array_matches_scalar():
    rng = np.random.default_rng(11)
    z = group.random_element(rng)
    pts = group.random_elements(rng, 64)
    out = group.mul_array(z, pts)
    for i in range(64):
        want = group.multiply(z, group.GroupElement.from_array(pts[i])).as_array()
        assert np.max(np.abs(out[i] - want)) < 1e-13
    inv = group.invert_array(pts)
    for i in range(8):
        want = group.inverse(group.GroupElement.from_array(pts[i])).as_array()
        assert np.max(np.abs(inv[i] - want)) < 1e-15
