"""ellog: elliptic-logarithmic integrals of the Gradshteyn-Ryzhik 4.242 family.

A library and CLI that evaluates the special functions behind entries 4.242.4
and 4.242.1 (complete and incomplete elliptic integrals, the Weierstrass
sigma lattice, the harmonic central-binomial series F) along independent
routes, and machine-verifies every identity tying those routes together:
numerically against tanh-sinh quadrature and exactly over big rationals
(telescoping certificate, fourth-order ODE, harmonic identities).
"""

from .elliptic import (
    AgmState,
    Modulus,
    agm,
    agm_trace,
    carlson_rf,
    elliptic_e,
    elliptic_k,
    elliptic_k_from_complement,
    incomplete_first_kind,
    k_imaginary_modulus,
)
from .errors import ConsistencyError, ConvergenceError, DomainError
from .exact_series import (
    RationalPolynomial,
    RationalSeries,
    binomial_half,
    central_binomial,
    closure_ode_check_k_branch,
    closure_ode_check_log_branch,
    eval_f,
    f_coeff,
    f_ode_residual_coeffs,
    f_series,
    fourth_order_ode_residual,
    harmonic,
    harmonic_binomial_identity_check,
    harmonic_recurrence_check,
    k_taylor_coeff,
    standard_k_ode_residual,
    telescope_check,
)
from .identities import (
    CheckResult,
    GridSpec,
    VerificationReport,
    entry_4242_1_closed,
    f_closed,
    f_via_j,
    i_closed,
    i_via_f,
    j_via_f,
    make_check,
    run_verification,
    symbolic_entry_reduction_check,
)
from .kdv_phase import (
    ShockParams,
    theta0,
    theta0_third_term_closed,
    theta0_third_term_quadrature,
)
from .quadrature import (
    QuadratureResult,
    integral_4242_1_numeric,
    integral_i_numeric,
    integral_j_numeric,
    log_moment_integral_closed,
    log_moment_integral_numeric,
    sinh_sinh,
    tanh_sinh,
)
from .weierstrass import (
    EllipticData,
    j_closed,
    j_via_sigma,
    lattice_from_c,
    legendre_residual,
    quasi_periodicity_residual,
    sigma,
    sigma_modulus_identity_residual,
    sigma_product_identity_residual,
    theta1,
)

__version__ = "1.0.0"
