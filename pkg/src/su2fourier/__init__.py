"""Fourier analysis on SU(2): partial sums by independent routes, sawtooth
divergence witnesses with quantitative growth, and integral-modulus
diagnostics for almost-everywhere convergence."""

from .backend import backend_name
from .group import (
    IDENTITY,
    NEG_IDENTITY,
    GroupElement,
    SphericalCoords,
    diag_element,
    distance,
    eigen_angle,
    from_spherical,
    inverse,
    multiply,
    random_element,
    to_spherical,
)
from .quadrature import (
    Field,
    HaarRule,
    Rule1D,
    central_integral,
    composite_gauss,
    convolve,
    gauss_legendre,
    haar_integral,
    periodic_trapezoid,
    theta_rule_for,
)
from .spectral import (
    ChebyshevSeries,
    MeanProfile,
    central_partial_sum,
    character,
    character_field,
    character_gram,
    character_sums,
    chebyshev_coeffs,
    chebyshev_partial_sum,
    chebyshev_u,
    dini_lipschitz_profile,
    dirichlet_scalar,
    dirichlet_scalar_deriv,
    dirichlet_su2,
    dirichlet_su2_field,
    partial_sum_direct,
    partial_sum_reduced,
    reduced_from_profile,
    reduced_rules,
    spherical_means,
)
from .witness import (
    SawtoothWitness,
    dirichlet_l1,
    dirichlet_su2_l1,
    divergence_table,
    growth_lower_bound,
    growth_lower_bound_corrected,
    growth_lower_bound_crude,
    holder_seminorm_bound,
    holder_seminorm_bound_corrected,
    partial_sum_at_identity,
    sawtooth_eval,
    translate_field,
    translated_witness,
    witness_field,
)
from .sphere import (
    RotationFrame,
    ae_convergence_criterion,
    frame_matrix,
    integral_modulus,
    l2_mean_difference,
    mean_difference_field,
    spherical_translate,
    to_unit_vector,
)
from .fields import (
    central_profile_field,
    central_series_field,
    constant_field,
    lip_field,
    parse_field_spec,
    random_central_field,
    random_smooth_field,
)

__version__ = "0.1.0"
