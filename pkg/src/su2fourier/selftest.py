"""Built-in invariant suite (the ``selftest`` CLI verb).

Each check is a small, fast version of a module invariant; ``full`` runs all
of them, ``quick`` a subset.  Checks resolve module attributes at call time
so an injected defect (e.g. a patched kernel derivative) is caught.
"""

import math

import numpy as np

from . import fields, group, quadrature, spectral, sphere, witness

_CHECKS = []


def _check(name, quick=False):
    def deco(fn):
        _CHECKS.append((name, quick, fn))
        return fn

    return deco


def _ok(cond, detail=""):
    return bool(cond), detail


@_check("group.unit-norm-after-products", quick=True)
def _unit_norm():
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(64):
        x = group.random_element(rng)
        y = group.random_element(rng)
        z = group.multiply(group.multiply(x, y), group.inverse(x))
        v = z.as_array()
        worst = max(worst, abs(float(v @ v) - 1.0))
    return _ok(worst < 1e-12, f"max |norm^2 - 1| = {worst:.2e}")


@_check("group.product-matches-matrix-oracle", quick=True)
def _product_oracle():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(32):
        x, y = group.random_element(rng), group.random_element(rng)
        m = x.as_matrix() @ y.as_matrix()
        got = group.multiply(x, y)
        want = np.array([m[0, 0].real, m[0, 0].imag, m[0, 1].real, m[0, 1].imag])
        worst = max(worst, float(np.max(np.abs(got.as_array() - want))))
    return _ok(worst < 1e-12, f"max deviation = {worst:.2e}")


@_check("group.inverse-is-group-inverse", quick=True)
def _inverse():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(64):
        x = group.random_element(rng)
        worst = max(worst, group.distance(group.multiply(group.inverse(x), x), group.IDENTITY))
    return _ok(worst < 1e-12, f"max distance to identity = {worst:.2e}")


@_check("group.metric-bi-invariance", quick=True)
def _bi_invariance():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(64):
        x, y, z = (group.random_element(rng) for _ in range(3))
        d = group.distance(x, y)
        worst = max(worst, abs(group.distance(group.multiply(z, x), group.multiply(z, y)) - d))
        worst = max(worst, abs(group.distance(group.multiply(x, z), group.multiply(y, z)) - d))
    return _ok(worst < 1e-12, f"max |translated - original| = {worst:.2e}")


@_check("group.eigen-angle-conjugation-invariant")
def _conjugation():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(64):
        x, y = group.random_element(rng), group.random_element(rng)
        conj = group.multiply(group.multiply(y, x), group.inverse(y))
        worst = max(worst, abs(group.eigen_angle(conj) - group.eigen_angle(x)))
    return _ok(worst < 1e-10, f"max angle deviation = {worst:.2e}")


@_check("group.chart-round-trip")
def _chart():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(64):
        c = group.SphericalCoords(rng.uniform(0, math.pi), rng.uniform(0, math.pi),
                                  rng.uniform(0, 2 * math.pi))
        worst = max(worst, abs(group.eigen_angle(group.from_spherical(c)) - c.theta))
    return _ok(worst < 1e-12, f"max |theta round-trip| = {worst:.2e}")


@_check("quadrature.gauss-exactness", quick=True)
def _gl_exact():
    rule = quadrature.gauss_legendre(6, 0.0, 1.0)
    got = rule.integrate(rule.nodes**11)
    return _ok(abs(got - 1.0 / 12.0) < 1e-14, f"|err| = {abs(got - 1/12):.2e}")


@_check("quadrature.weight-sums", quick=True)
def _weight_sums():
    worst = 0.0
    for rule in (
        quadrature.gauss_legendre(32, 0.0, math.pi),
        quadrature.periodic_trapezoid(32, 0.0, 2 * math.pi),
        quadrature.composite_gauss([0.0, 0.5, 2.0, math.pi], 8),
    ):
        a, b = rule.interval
        worst = max(worst, abs(rule.weights.sum() - (b - a)))
    return _ok(worst < 1e-12, f"max |sum w - (b-a)| = {worst:.2e}")


@_check("quadrature.haar-normalization", quick=True)
def _haar_norm():
    rule = quadrature.HaarRule.for_degree(0)
    got = quadrature.haar_integral(fields.constant_field(1.0), rule)
    return _ok(abs(got - 1.0) < 1e-10, f"|haar(1) - 1| = {abs(got - 1):.2e}")


@_check("quadrature.central-consistency")
def _central_consistency():
    rule = quadrature.HaarRule.for_degree(4)
    f = fields.central_series_field([0.3, -0.2, 0.5, 0.1])
    a = quadrature.haar_integral(f, rule)
    b = quadrature.central_integral(f, rule.theta_rule)
    return _ok(abs(a - b) < 1e-10, f"|haar - central| = {abs(a - b):.2e}")


@_check("quadrature.character-orthonormality", quick=True)
def _gram_small():
    g = spectral.character_gram(8, quadrature.HaarRule.for_degree(16))
    err = float(np.max(np.abs(g - np.eye(9))))
    return _ok(err < 1e-8, f"max |G - I| = {err:.2e}")


@_check("quadrature.refinement-stability")
def _refinement():
    f = fields.central_series_field([0.2, 0.4, -0.3])
    a = quadrature.haar_integral(f, quadrature.HaarRule.for_degree(2))
    b = quadrature.haar_integral(f, quadrature.HaarRule.for_degree(20))
    return _ok(abs(a - b) < 1e-10, f"|coarse - fine| = {abs(a - b):.2e}")


@_check("spectral.character-endpoint-limits", quick=True)
def _char_limits():
    worst = 0.0
    for n in (0, 1, 5, 12):
        worst = max(worst, abs(spectral.character(n, 0.0) - (n + 1)))
        worst = max(worst, abs(spectral.character(n, math.pi) - (-1.0) ** n * (n + 1)))
    return _ok(worst < 1e-9, f"max endpoint deviation = {worst:.2e}")


@_check("spectral.dirichlet-closed-form")
def _dirichlet_forms():
    t = np.linspace(0.05, math.pi - 0.05, 64)
    worst = 0.0
    for m in (1, 3, 9):
        j = np.arange(1, m + 1)
        cos_sum = 1.0 + 2.0 * np.cos(np.outer(t, j)).sum(axis=1)
        worst = max(worst, float(np.max(np.abs(spectral.dirichlet_scalar(m, t) - cos_sum))))
    return _ok(worst < 1e-10, f"max |quotient - cosine sum| = {worst:.2e}")


@_check("spectral.kernel-derivative-vs-finite-differences", quick=True)
def _deriv_fd():
    t = np.linspace(0.1, math.pi - 0.1, 40)
    h = 1e-6
    worst = 0.0
    for m in (2, 7):
        fd = (spectral.dirichlet_scalar(m, t + h) - spectral.dirichlet_scalar(m, t - h)) / (2 * h)
        worst = max(worst, float(np.max(np.abs(spectral.dirichlet_scalar_deriv(m, t) - fd))))
    return _ok(worst < 1e-5, f"max |deriv - FD| = {worst:.2e}")


@_check("spectral.kernel-identity", quick=True)
def _kernel_identity():
    t = np.linspace(0.1, math.pi - 0.1, 128)
    worst = 0.0
    for N in (0, 3, 16):
        lhs = spectral.dirichlet_su2(N, t)
        rhs = -spectral.dirichlet_scalar_deriv(N + 1, t) / (2.0 * np.sin(t))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return _ok(worst < 1e-8, f"max |D_N + D'/(2 sin)| = {worst:.2e}")


@_check("spectral.projection-both-paths")
def _projection():
    rng = np.random.default_rng(7)
    x = group.random_element(rng)
    direct, reduced = spectral.character_sums(6, 4, x, quadrature.HaarRule.for_degree(12))
    worst = 0.0
    for n in range(7):
        truth = spectral.chebyshev_u(n, x.a1)
        for N in range(5):
            want = truth if n <= N else 0.0
            worst = max(worst, abs(direct[n, N] - want), abs(reduced[n, N] - want))
    return _ok(worst < 1e-6, f"max |S_N chi_n - target| = {worst:.2e}")


@_check("spectral.path-equivalence")
def _paths():
    rng = np.random.default_rng(8)
    f = fields.random_smooth_field(2, rng)
    x = group.random_element(rng)
    rule = quadrature.HaarRule.for_degree(8)
    a = spectral.partial_sum_direct(f, 5, x, rule)
    b = spectral.partial_sum_reduced(f, 5, x, rule)
    return _ok(abs(a - b) < 1e-7, f"|direct - reduced| = {abs(a - b):.2e}")


@_check("spectral.central-chebyshev-equivalence")
def _central_path():
    rng = np.random.default_rng(9)
    f = fields.random_central_field(6, rng)
    x = group.random_element(rng)
    a = spectral.partial_sum_reduced(f, 4, x, quadrature.HaarRule.for_degree(8))
    b = spectral.central_partial_sum(f, 4, x, n_max=8)
    return _ok(abs(a - b) < 1e-7, f"|reduced - chebyshev| = {abs(a - b):.2e}")


@_check("spectral.chebyshev-orthonormal-coeffs")
def _cheb_coeffs():
    series = spectral.chebyshev_coeffs(lambda t: spectral.chebyshev_u(3, t), 6)
    want = np.zeros(7)
    want[3] = 1.0
    err = float(np.max(np.abs(series.coeffs - want)))
    return _ok(err < 1e-10, f"max coefficient error = {err:.2e}")


@_check("witness.sawtooth-breakpoints", quick=True)
def _sawtooth():
    w = witness.SawtoothWitness(6)
    k = np.arange(8)
    vals = witness.sawtooth_eval(w, 2.0 * k * math.pi / 15.0)
    ok = np.allclose(vals, (-1.0) ** k) and witness.sawtooth_eval(w, math.pi) == 0.0
    diffs = np.abs(np.diff(vals))
    return _ok(ok and np.allclose(diffs, 2.0), "alternation and terminal value")


@_check("witness.sign-alignment")
def _alignment():
    n = 9
    w = witness.SawtoothWitness(n)
    worst = 0.0
    for lo, hi in zip(w.breakpoints[:-1], w.breakpoints[1:]):
        t = np.linspace(lo, hi, 16)
        prod = witness.sawtooth_eval(w, t) * np.cos((n + 1.5) * t)
        worst = min(worst, float(prod.min()))
    return _ok(worst >= -1e-12, f"min of g * cos = {worst:.2e}")


@_check("witness.growth-above-corrected-floor", quick=True)
def _growth():
    ok = True
    detail = []
    for n in (8, 32):
        lam = abs(witness.partial_sum_at_identity(witness.witness_field(n), n))
        floor = witness.growth_lower_bound_corrected(n)
        ok = ok and lam >= floor
        detail.append(f"n={n}: {lam:.3f} >= {floor:.3f}")
    return _ok(ok, "; ".join(detail))


@_check("witness.translation-reduces-to-identity")
def _translation():
    rng = np.random.default_rng(10)
    n = 3
    x = group.random_element(rng)
    f = witness.witness_field(n)
    rule = quadrature.HaarRule.for_degree(n).with_theta(
        quadrature.theta_rule_for(n, f.theta_breakpoints)
    )
    at_e = spectral.partial_sum_direct(f, n, group.IDENTITY, rule)
    moved = spectral.partial_sum_direct(witness.translate_field(f, group.inverse(x)), n, x, rule)
    return _ok(abs(at_e - moved) < 1e-7, f"|S_n f(e) - S_n L f(x)| = {abs(at_e - moved):.2e}")


@_check("witness.l1-monotone-growth")
def _l1_monotone():
    vals = [witness.dirichlet_l1(m) for m in range(0, 17)]
    ok = all(b > a for a, b in zip(vals, vals[1:]))
    return _ok(ok and abs(vals[0] - 1.0) < 1e-12, f"L1 range {vals[0]:.3f}..{vals[-1]:.3f}")


@_check("sphere.frame-orthogonality", quick=True)
def _frame():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(32):
        c = group.SphericalCoords(rng.uniform(0, math.pi), rng.uniform(0, math.pi),
                                  rng.uniform(0, 2 * math.pi))
        fr = sphere.frame_matrix(c)
        worst = max(worst, float(np.max(np.abs(fr.matrix.T @ fr.matrix - np.eye(4)))))
        worst = max(
            worst,
            float(np.max(np.abs(fr.matrix @ np.array([1.0, 0, 0, 0])
                                - sphere.to_unit_vector(group.from_spherical(c))))),
        )
        worst = max(worst, abs(abs(np.linalg.det(fr.matrix)) - 1.0))
    return _ok(worst < 1e-10, f"max frame defect = {worst:.2e}")


@_check("sphere.translation-equals-group-mean", quick=True)
def _translation_identity():
    rng = np.random.default_rng(12)
    f = fields.random_smooth_field(2, rng)
    c = group.SphericalCoords(1.1, 0.8, 2.5)
    x = group.from_spherical(c)
    fr = sphere.frame_matrix(c)
    worst = 0.0
    for theta in (0.3, 1.0, 2.5):
        a = sphere.spherical_translate(lambda pts: f.evaluate_many(pts), fr, theta)
        b = spectral.spherical_means(f, x, [theta]).values[0]
        worst = max(worst, abs(a - b))
    return _ok(worst < 1e-8, f"max |T_theta - mean| = {worst:.2e}")


@_check("sphere.zonal-eigenvalue-law")
def _zonal():
    worst = 0.0
    x = group.from_spherical(group.SphericalCoords(0.9, 1.3, 0.4))
    for n in (1, 4, 8):
        f = spectral.character_field(n)
        for theta in (0.7, 1.9):
            got = spectral.spherical_means(f, x, [theta]).values[0]
            want = spectral.chebyshev_u(n, x.a1) * spectral.character(n, theta) / (n + 1)
            worst = max(worst, abs(got - want))
    return _ok(worst < 1e-7, f"max eigenvalue-law deviation = {worst:.2e}")


@_check("sphere.modulus-of-constant-vanishes")
def _modulus_constant():
    f = fields.constant_field(2.5)
    om = sphere.integral_modulus(f, 1.0, theta_points=8)
    est, flag = sphere.ae_convergence_criterion(f, 0.05, grid_points=12)
    return _ok(om < 1e-12 and est == 0.0 and flag, f"omega={om:.2e}, estimate={est:.2e}")


@_check("performance.profile-beats-direct-count")
def _perf_counting():
    # the degree-tied sizing only separates the paths above the 64-node floor
    rng = np.random.default_rng(13)
    f = fields.random_central_field(3, rng)
    x = group.random_element(rng)
    N_max = 32
    rules = spectral.reduced_rules(N_max)
    f.evals = 0
    profile = spectral.spherical_means(f, x, rules.theta_rule.nodes, rules.phi_rule,
                                       rules.psi_rule)
    for N in range(N_max + 1):
        spectral.reduced_from_profile(profile, rules.theta_rule, N)
    profile_evals = f.evals
    f.evals = 0
    spectral.partial_sum_direct(f, N_max, x, quadrature.HaarRule.for_degree(N_max))
    direct_evals = f.evals
    return _ok(profile_evals < direct_evals, f"{profile_evals} < {direct_evals}")


def run_selftest(level="quick", out=print):
    """Run the invariant suite; returns 0 iff every selected check passes."""
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    failures = 0
    for name, quick, fn in _CHECKS:
        if level == "quick" and not quick:
            continue
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        status = "PASS" if ok else "FAIL"
        if not ok:
            failures += 1
        out(f"{status} {name}" + (f" ({detail})" if detail else ""))
    out(f"{'OK' if failures == 0 else 'FAILED'}: "
        f"{failures} failure(s) out of {sum(1 for _, q, _ in _CHECKS if level == 'full' or q)}")
    return 0 if failures == 0 else 1
