"""Cross-route equality engine for the Gradshteyn-Ryzhik 4.242 family.

The integrals under test, in the package's fixed notation:

    I(a,b) = integral_0^b log(x) dx / sqrt((a^2-x^2)(b^2-x^2)),  0 < b < a
    J(c)   = integral_0^1 log(x) dx / sqrt((1-x^2)(1-c^2 x^2)),  0 <= c < 1
    F(x)   = sum_{n>=0} (-1)^n C(2n,n)^2 H_n x^n,                |x| < 1/16

and the closed forms they are checked against:

    entry 4.242.4:  I(a,b) = (1/2a) [ K(b/a) log(ab) - (pi/2) K(sqrt(a^2-b^2)/a) ]
    entry 4.242.1:  integral_0^inf log(x) dx / sqrt((a^2+x^2)(b^2+x^2))
                           = (1/2a) K(sqrt(a^2-b^2)/a) log(ab)
    J(c)   = -(pi/4) K(sqrt(1-c^2)) - (1/2) K(c) log c
    F(x)   = (1/(pi sqrt(1+16x))) [ log(x/(1+16x)) K(sqrt(16x/(1+16x)))
                                    + pi K(1/sqrt(1+16x)) ]

Each quantity is computable along several independent routes (direct
quadrature, AGM closed forms, the F series, the Weierstrass sigma lattice);
run_verification executes every pairwise comparison on deterministic grids
and assembles a machine-readable report.  Nothing here ever crashes on a bad
grid point: domain errors become failing CheckResults with a note.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import exact_series, quadrature, weierstrass
from .elliptic import elliptic_k, elliptic_k_from_complement
from .errors import ConsistencyError, ConvergenceError, DomainError
from .exact_series import EVAL_F_MARGIN, F_SERIES_RADIUS, eval_f
from .weierstrass import j_closed, j_via_sigma

F_CLOSED_MIN_X = 1e-8
_SERIES_DOMAIN_MARGIN = 1e-4


# ----------------------------------------------------------------------------
# check bookkeeping
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    """One named identity check: both sides, errors, verdict."""

    name: str
    inputs: tuple[tuple[str, float], ...]
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
    note: str = ""


def make_check(name: str, inputs, lhs: float, rhs: float, tol: float,
               note: str = "") -> CheckResult:
    """Build a CheckResult; passes iff abs_err <= tol or rel_err <= tol."""
    abs_err = abs(lhs - rhs)
    denom = max(abs(lhs), abs(rhs))
    rel_err = abs_err / denom if denom > 0.0 else 0.0
    return CheckResult(
        name=name,
        inputs=tuple((str(k), float(v)) for k, v in inputs),
        lhs=float(lhs),
        rhs=float(rhs),
        abs_err=abs_err,
        rel_err=rel_err,
        tol=float(tol),
        passed=(abs_err <= tol or rel_err <= tol),
        note=note,
    )


def failed_check(name: str, inputs, tol: float, note: str) -> CheckResult:
    """A failing placeholder for a check that could not be evaluated."""
    return CheckResult(
        name=name,
        inputs=tuple((str(k), float(v)) for k, v in inputs),
        lhs=math.nan,
        rhs=math.nan,
        abs_err=math.inf,
        rel_err=math.inf,
        tol=float(tol),
        passed=False,
        note=note,
    )


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]
    n_pass: int
    n_fail: int
    config: tuple[tuple[str, object], ...]

    @classmethod
    def from_checks(cls, checks, config) -> "VerificationReport":
        ordered = tuple(sorted(checks, key=lambda c: (c.name, c.inputs)))
        n_pass = sum(1 for c in ordered if c.passed)
        return cls(ordered, n_pass, len(ordered) - n_pass, tuple(config))


# ----------------------------------------------------------------------------
# closed forms and alternative routes
# ----------------------------------------------------------------------------

def i_closed(a: float, b: float) -> float:
    """Entry 4.242.4 closed form, (1/2a)[K(b/a) log(ab) - (pi/2) K(k')].

    The complementary modulus sqrt(a^2-b^2)/a is the complement of b/a, so it
    is evaluated from the exactly known ratio.
    """
    if not 0.0 < b < a:
        raise DomainError(f"requires 0 < b < a, got a={a}, b={b}")
    k = b / a
    return (
        elliptic_k(k) * math.log(a * b)
        - 0.5 * math.pi * elliptic_k_from_complement(k)
    ) / (2.0 * a)


def i_via_f(a: float, b: float) -> float:
    """I(a,b) through the F series:

        I = (1/a) log(b/2) K(b/a) - (pi / (4 sqrt(a^2-b^2))) F(b^2/(16(a^2-b^2))).

    Valid where the series argument stays inside its disk, i.e. a > sqrt(2) b
    (up to the evaluation margin)."""
    if not 0.0 < b < a:
        raise DomainError(f"requires 0 < b < a, got a={a}, b={b}")
    diff = (a - b) * (a + b)
    x = b * b / (16.0 * diff)
    if x >= float(F_SERIES_RADIUS) - EVAL_F_MARGIN:
        raise DomainError(
            f"series route needs a > sqrt(2) b (series argument {x} too close "
            f"to the radius 1/16)"
        )
    return (
        math.log(0.5 * b) * elliptic_k(b / a) / a
        - 0.25 * math.pi * eval_f(x) / math.sqrt(diff)
    )


def j_via_f(c: float) -> float:
    """J(c) through the F series:

        J(c) = -log(2) K(c) - (pi / (4 sqrt(1-c^2))) F(c^2/(16(1-c^2))),

    valid for c < 1/sqrt(2) (up to the evaluation margin)."""
    if not 0.0 <= c < 1.0:
        raise DomainError(f"requires 0 <= c < 1, got {c}")
    omc = (1.0 - c) * (1.0 + c)
    x = c * c / (16.0 * omc)
    if x >= float(F_SERIES_RADIUS) - EVAL_F_MARGIN:
        raise DomainError(
            f"series route needs c < 1/sqrt(2) (series argument {x} too close "
            f"to the radius 1/16)"
        )
    return -math.log(2.0) * elliptic_k(c) - 0.25 * math.pi * eval_f(x) / math.sqrt(omc)


def f_closed(x: float) -> float:
    """Closed form of F, valid for all x > 0 by analytic continuation:

        F(x) = (1/(pi s)) [ log(x/s^2) K(sqrt(16x)/s) + pi K(1/s) ],
        s = sqrt(1+16x).

    K(1/s) is evaluated from its exactly known complement sqrt(16x)/s; a
    floor of 1e-8 on x keeps the log factors in a sensibly scaled regime.
    """
    if x < F_CLOSED_MIN_X:
        raise DomainError(f"closed form requires x >= {F_CLOSED_MIN_X}, got {x}")
    s2 = 1.0 + 16.0 * x
    s = math.sqrt(s2)
    m = math.sqrt(16.0 * x / s2)
    return (
        math.log(x / s2) * elliptic_k(m) + math.pi * elliptic_k_from_complement(m)
    ) / (math.pi * s)


def f_via_j(x: float, tol: float = 1e-12) -> float:
    """F from the quadrature route for J:

        F(x) = -(4/(pi s)) [ J(16x/s^2) + log(2) K(sqrt(16x)/s) ],  s^2 = 1+16x.

    Uses integral_j_numeric for J, making this an independent continuation of
    the series beyond |x| = 1/16.
    """
    if x <= 0.0:
        raise DomainError(f"requires x > 0, got {x}")
    s2 = 1.0 + 16.0 * x
    c = math.sqrt(16.0 * x / s2)
    j_val = quadrature.integral_j_numeric(c, tol).value
    return -4.0 * (j_val + math.log(2.0) * elliptic_k(c)) / (math.pi * math.sqrt(s2))


def entry_4242_1_closed(a: float, b: float) -> float:
    """Entry 4.242.1 closed form, (1/2a) K(sqrt(a^2-b^2)/a) log(ab)."""
    if not 0.0 < b < a:
        raise DomainError(f"requires 0 < b < a, got a={a}, b={b}")
    return elliptic_k_from_complement(b / a) * math.log(a * b) / (2.0 * a)


def symbolic_entry_reduction_check() -> bool:
    """Exact-coefficient verification that substituting the closed form of J
    into a I(a,b) = log(b) K(c) + J(c), c = b/a, reproduces the closed form
    of entry 4.242.4.

    Work in the formal basis {K(c) log a, K(c) log b, pi K(c')} with rational
    coefficients (log c = log b - log a).  Both routes must produce the same
    exact coefficient vector {1/2, 1/2, -1/4}.
    """
    route = {
        "K log b": Fraction(1),          # log(b) K(c)
        "K log a": Fraction(0),
        "pi Kp": Fraction(-1, 4),        # J contributes -(1/4) pi K(c')
    }
    # J also contributes -(1/2) K(c) log c = -(1/2) K (log b - log a)
    route["K log b"] += Fraction(-1, 2)
    route["K log a"] += Fraction(1, 2)
    closed = {
        "K log a": Fraction(1, 2),
        "K log b": Fraction(1, 2),
        "pi Kp": Fraction(-1, 4),
    }
    return route == closed


# ----------------------------------------------------------------------------
# the verification battery
# ----------------------------------------------------------------------------

def _linspace(lo: float, hi: float, n: int) -> list[float]:
    if n <= 0:
        return []
    if n == 1:
        return [lo]
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


@dataclass(frozen=True)
class GridSpec:
    """Deterministic grid and tolerance configuration for run_verification.

    Degenerate neighborhoods (c near 0 or 1, b/a near 1, b near 0) are
    excluded from the default ranges; dedicated limit checks cover them.
    """

    a_values: tuple[float, ...] = (1.5, 2.0, 2.5, 3.0, 3.5)
    b_values: tuple[float, ...] = (0.2, 0.4, 0.6, 0.8, 1.0)
    n_c: int = 25
    c_range_full: tuple[float, float] = (0.05, 0.7)
    c_range_wide: tuple[float, float] = (0.05, 0.95)
    f_arguments: tuple[float, ...] = (0.005, 0.01, 0.02, 0.05)
    f_arguments_continued: tuple[float, ...] = (0.25, 0.8)
    closure_points: tuple[float, ...] = tuple(_linspace(0.01, 0.5, 10))
    theta0_a_values: tuple[float, ...] = (0.3, 0.5, 0.8, 0.9, 0.95)
    log_moment_orders: tuple[int, ...] = (0, 1, 2, 5, 8)
    tol_numeric: float = 1e-9
    tol_closed: float = 1e-12
    tol_closure: float = 1e-6
    tol_limit: float = 1e-6
    quad_tol: float = 1e-12
    telescope_max_n: int = 100
    harmonic_max_n: int = 100
    ode_terms: int = 200
    identity_max_j: int = 60

    def c_grid_full(self) -> list[float]:
        return _linspace(*self.c_range_full, self.n_c)

    def c_grid_wide(self) -> list[float]:
        return _linspace(*self.c_range_wide, self.n_c)

    def as_config(self) -> tuple[tuple[str, object], ...]:
        return tuple(sorted(asdict(self).items()))


def _guarded(checks: list[CheckResult], name: str, inputs, tol: float, fn) -> None:
    """Run one check body; convert domain/convergence failures into failing
    CheckResults instead of crashing the battery."""
    try:
        checks.append(fn())
    except (DomainError, ConvergenceError, ConsistencyError) as exc:
        checks.append(failed_check(name, inputs, tol, f"{type(exc).__name__}: {exc}"))


def _entry_checks(spec: GridSpec, checks: list[CheckResult]) -> None:
    for a in spec.a_values:
        for b in spec.b_values:
            inputs = (("a", a), ("b", b))
            name = "entry_4242_4/closed_vs_quadrature"
            if not 0.0 < b < a:
                checks.append(failed_check(name, inputs, spec.tol_numeric,
                                           "requires 0 < b < a"))
                continue

            def check_quad(a=a, b=b, inputs=inputs, name=name):
                quad = quadrature.integral_i_numeric(a, b, spec.quad_tol)
                return make_check(name, inputs, i_closed(a, b), quad.value,
                                  spec.tol_numeric)

            _guarded(checks, name, inputs, spec.tol_numeric, check_quad)

            if a > math.sqrt(2.0) * b * (1.0 + _SERIES_DOMAIN_MARGIN):
                def check_series(a=a, b=b, inputs=inputs):
                    return make_check("entry_4242_4/series_vs_closed", inputs,
                                      i_via_f(a, b), i_closed(a, b),
                                      spec.tol_numeric)

                _guarded(checks, "entry_4242_4/series_vs_closed", inputs,
                         spec.tol_numeric, check_series)

            def check_41(a=a, b=b, inputs=inputs):
                quad = quadrature.integral_4242_1_numeric(a, b, spec.quad_tol)
                return make_check("entry_4242_1/closed_vs_quadrature", inputs,
                                  entry_4242_1_closed(a, b), quad.value,
                                  max(spec.tol_numeric, 1e-10))

            _guarded(checks, "entry_4242_1/closed_vs_quadrature", inputs,
                     max(spec.tol_numeric, 1e-10), check_41)


def _j_route_checks(spec: GridSpec, checks: list[CheckResult]) -> None:
    for c in spec.c_grid_full():
        inputs = (("c", c),)
        values: dict[str, float] = {}

        def compute(c=c, values=values):
            values["closed"] = j_closed(c)
            values["quadrature"] = quadrature.integral_j_numeric(c, spec.quad_tol).value
            values["series"] = j_via_f(c)
            values["sigma"] = j_via_sigma(c)
            return None

        try:
            compute()
        except (DomainError, ConvergenceError, ConsistencyError) as exc:
            checks.append(failed_check("j_routes/pairwise", inputs,
                                       spec.tol_numeric,
                                       f"{type(exc).__name__}: {exc}"))
            continue
        names = sorted(values)
        for i, first in enumerate(names):
            for second in names[i + 1:]:
                checks.append(make_check(
                    f"j_routes/{first}_vs_{second}", inputs,
                    values[first], values[second], spec.tol_numeric,
                ))
    for c in spec.c_grid_wide():
        inputs = (("c", c),)

        def check_wide(c=c, inputs=inputs):
            return make_check("j_routes/sigma_vs_closed_wide", inputs,
                              j_via_sigma(c), j_closed(c), spec.tol_numeric)

        _guarded(checks, "j_routes/sigma_vs_closed_wide", inputs,
                 spec.tol_numeric, check_wide)


def _f_route_checks(spec: GridSpec, checks: list[CheckResult]) -> None:
    for x in spec.f_arguments:
        inputs = (("x", x),)

        def inside(x=x, inputs=inputs):
            series = eval_f(x)
            closed = f_closed(x)
            jroute = f_via_j(x, spec.quad_tol)
            return [
                make_check("f_routes/series_vs_closed", inputs, series, closed,
                           max(spec.tol_numeric * 0.1, 1e-10)),
                make_check("f_routes/series_vs_jroute", inputs, series, jroute,
                           max(spec.tol_numeric * 0.1, 1e-10)),
            ]

        try:
            checks.extend(inside())
        except (DomainError, ConvergenceError) as exc:
            checks.append(failed_check("f_routes/inside_radius", inputs,
                                       spec.tol_numeric,
                                       f"{type(exc).__name__}: {exc}"))
    for x in spec.f_arguments_continued:
        inputs = (("x", x),)

        def continued(x=x, inputs=inputs):
            return make_check("f_routes/closed_vs_jroute_continued", inputs,
                              f_closed(x), f_via_j(x, spec.quad_tol),
                              spec.tol_numeric)

        _guarded(checks, "f_routes/closed_vs_jroute_continued", inputs,
                 spec.tol_numeric, continued)


def _weierstrass_checks(spec: GridSpec, checks: list[CheckResult]) -> None:
    for c in spec.c_grid_wide():
        inputs = (("c", c),)

        def lattice_checks(c=c, inputs=inputs):
            lat = weierstrass.lattice_from_c(c)
            out = [
                make_check("weierstrass/root_normalization", inputs,
                           lat.e1 - lat.e3, 1.0, 1e-13),
                make_check("weierstrass/root_sum", inputs,
                           lat.e1 + lat.e2 + lat.e3, 0.0, 1e-13),
                make_check("weierstrass/discriminant", inputs,
                           lat.g2 ** 3 - 27.0 * lat.g3 ** 2,
                           16.0 * c ** 4 * (c + 1.0) ** 2 * (c - 1.0) ** 2,
                           1e-13),
                make_check("weierstrass/legendre", inputs,
                           weierstrass.legendre_residual(lat), 0.0, 1e-12),
                make_check("weierstrass/sigma_product_identity", inputs,
                           weierstrass.sigma_product_identity_residual(lat),
                           0.0, 1e-8),
                make_check("weierstrass/sigma_modulus_identity", inputs,
                           weierstrass.sigma_modulus_identity_residual(lat),
                           0.0, 1e-8),
            ]
            worst = 0.0
            for j in (1, 2):
                for alpha in (0.1, 0.23, 0.35, 0.42, 0.5):
                    z = alpha * lat.omega1 + 0.31 * lat.omega2
                    worst = max(worst,
                                weierstrass.quasi_periodicity_residual(lat, z, j))
            out.append(make_check("weierstrass/quasi_periodicity", inputs,
                                  worst, 0.0, 1e-8))
            return out

        try:
            checks.extend(lattice_checks())
        except (DomainError, ConvergenceError, ConsistencyError) as exc:
            checks.append(failed_check("weierstrass/lattice", inputs, 1e-8,
                                       f"{type(exc).__name__}: {exc}"))


def _exact_checks(spec: GridSpec, checks: list[CheckResult]) -> None:
    printed = {1: Fraction(-4), 2: Fraction(54),
               3: Fraction(-2200, 3), 4: Fraction(30625, 3)}
    bad = sum(1 for n, want in printed.items() if exact_series.f_coeff(n) != want)
    checks.append(make_check("exact/opening_series_coefficients",
                             (("n_max", 4),), float(bad), 0.0, 0.0))

    fails = sum(1 for n in range(spec.telescope_max_n + 1)
                if not exact_series.telescope_check(n))
    checks.append(make_check("exact/telescoping_certificate",
                             (("n_max", spec.telescope_max_n),),
                             float(fails), 0.0, 0.0))

    residuals = exact_series.f_ode_residual_coeffs(spec.ode_terms)
    nonzero = sum(1 for r in residuals if r != 0)
    checks.append(make_check("exact/fourth_order_ode",
                             (("terms", spec.ode_terms),),
                             float(nonzero), 0.0, 0.0))

    fails = sum(1 for n in range(spec.harmonic_max_n + 1)
                if not exact_series.harmonic_recurrence_check(n))
    checks.append(make_check("exact/harmonic_recurrence",
                             (("n_max", spec.harmonic_max_n),),
                             float(fails), 0.0, 0.0))

    fails = sum(1 for j in range(1, spec.identity_max_j + 1)
                if not exact_series.harmonic_binomial_identity_check(j))
    checks.append(make_check("exact/harmonic_binomial_identity",
                             (("j_max", spec.identity_max_j),),
                             float(fails), 0.0, 0.0))

    fails = sum(
        1 for n in range(1, 31)
        if exact_series.binomial_half(n) != Fraction(
            (-1) ** (n - 1) * exact_series.central_binomial(n),
            2 ** (2 * n) * (2 * n - 1))
    )
    checks.append(make_check("exact/half_binomial_identity",
                             (("n_max", 30),), float(fails), 0.0, 0.0))

    checks.append(make_check("exact/symbolic_entry_reduction", (),
                             0.0 if symbolic_entry_reduction_check() else 1.0,
                             0.0, 0.0))


def _closure_checks(spec: GridSpec, checks: list[CheckResult]) -> None:
    for x in spec.closure_points:
        inputs = (("x", x),)
        _guarded(checks, "closure_ode/k_branch", inputs, spec.tol_closure,
                 lambda x=x, inputs=inputs: make_check(
                     "closure_ode/k_branch", inputs,
                     exact_series.closure_ode_check_k_branch(x), 0.0,
                     spec.tol_closure))
        _guarded(checks, "closure_ode/log_branch", inputs, spec.tol_closure,
                 lambda x=x, inputs=inputs: make_check(
                     "closure_ode/log_branch", inputs,
                     exact_series.closure_ode_check_log_branch(x), 0.0,
                     spec.tol_closure))
        _guarded(checks, "closure_ode/f_closed_fourth_order", inputs,
                 spec.tol_closure,
                 lambda x=x, inputs=inputs: make_check(
                     "closure_ode/f_closed_fourth_order", inputs,
                     exact_series.fourth_order_ode_residual(f_closed, x), 0.0,
                     spec.tol_closure))
    _guarded(checks, "closure_ode/standard_k", (("k", 0.3),), spec.tol_closure,
             lambda: make_check("closure_ode/standard_k", (("k", 0.3),),
                                exact_series.standard_k_ode_residual(0.3), 0.0,
                                spec.tol_closure))


def _log_moment_checks(spec: GridSpec, checks: list[CheckResult]) -> None:
    for n in spec.log_moment_orders:
        inputs = (("n", n),)
        _guarded(checks, "log_moment/closed_vs_quadrature", inputs, 1e-10,
                 lambda n=n, inputs=inputs: make_check(
                     "log_moment/closed_vs_quadrature", inputs,
                     quadrature.log_moment_integral_numeric(n, spec.quad_tol).value,
                     quadrature.log_moment_integral_closed(n), 1e-10))


def _theta0_checks(spec: GridSpec, checks: list[CheckResult]) -> None:
    from . import kdv_phase  # deferred: kdv_phase uses i_closed from this module

    for a in spec.theta0_a_values:
        inputs = (("a", a),)

        def check(a=a, inputs=inputs):
            params = kdv_phase.ShockParams.from_a(a, gamma=0.5)
            closed = kdv_phase.theta0_third_term_closed(params)
            quad = kdv_phase.theta0_third_term_quadrature(params, spec.quad_tol)
            return make_check("kdv/theta0_third_term", inputs, closed,
                              quad.value, spec.tol_numeric)

        _guarded(checks, "kdv/theta0_third_term", inputs, spec.tol_numeric, check)


def _limit_checks(spec: GridSpec, checks: list[CheckResult]) -> None:
    target = -0.5 * math.pi * math.log(2.0)
    c_small = 1e-3
    _guarded(checks, "limits/j_closed_small_c", (("c", c_small),), spec.tol_limit,
             lambda: make_check("limits/j_closed_small_c", (("c", c_small),),
                                j_closed(c_small), target, spec.tol_limit))
    _guarded(checks, "limits/j_series_small_c", (("c", c_small),), spec.tol_limit,
             lambda: make_check("limits/j_series_small_c", (("c", c_small),),
                                j_via_f(c_small), target, spec.tol_limit))
    _guarded(checks, "limits/j_quadrature_small_c", (("c", c_small),), spec.tol_limit,
             lambda: make_check("limits/j_quadrature_small_c", (("c", c_small),),
                                quadrature.integral_j_numeric(c_small, spec.quad_tol).value,
                                target, spec.tol_limit))
    checks.append(make_check("limits/f_at_zero", (("x", 0.0),),
                             eval_f(0.0), 0.0, 0.0))
    _guarded(checks, "limits/entry_4242_1_unit_product", (("a", 2.0), ("b", 0.5)),
             spec.tol_closed,
             lambda: make_check("limits/entry_4242_1_unit_product",
                                (("a", 2.0), ("b", 0.5)),
                                entry_4242_1_closed(2.0, 0.5), 0.0,
                                spec.tol_closed))


def run_verification(spec: GridSpec | None = None) -> VerificationReport:
    """Execute the full battery and assemble a deterministic report.

    Checks are collected and then sorted by (name, inputs), so the report is
    byte-stable for a given GridSpec regardless of execution order.
    """
    spec = spec or GridSpec()
    checks: list[CheckResult] = []
    _entry_checks(spec, checks)
    _j_route_checks(spec, checks)
    _f_route_checks(spec, checks)
    _weierstrass_checks(spec, checks)
    _exact_checks(spec, checks)
    _closure_checks(spec, checks)
    _log_moment_checks(spec, checks)
    _theta0_checks(spec, checks)
    _limit_checks(spec, checks)
    return VerificationReport.from_checks(checks, spec.as_config())
