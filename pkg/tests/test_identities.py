"""Route-equality engine: closed forms, cross-route agreement, reports."""

import math

import pytest
from hypothesis import given, strategies as st

from ellog.elliptic import elliptic_k
from ellog.errors import DomainError
from ellog.identities import (
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
from ellog.quadrature import (
    integral_4242_1_numeric,
    integral_i_numeric,
    integral_j_numeric,
)
from ellog.weierstrass import j_closed

I_2_1 = -0.554743438050469824608  # pinned via quadrature + 50-digit oracle


class TestIClosedForm:
    def test_pinned_value(self):
        assert i_closed(2.0, 1.0) == pytest.approx(I_2_1, rel=1e-12)

    def test_matches_quadrature(self):
        assert i_closed(2.0, 1.0) == pytest.approx(
            integral_i_numeric(2.0, 1.0, 1e-12).value, rel=1e-10
        )

    def test_scaling_relation(self):
        # I(la, lb) = I(a,b)/l + (ln l / (l a)) K(b/a), from x -> l x
        a, b, lam = 2.0, 1.0, 2.0
        lhs = i_closed(lam * a, lam * b)
        rhs = i_closed(a, b) / lam + math.log(lam) / (lam * a) * elliptic_k(b / a)
        assert lhs == pytest.approx(rhs, rel=1e-13)
        # and the same relation holds for the quadrature route
        lhs_q = integral_i_numeric(lam * a, lam * b, 1e-12).value
        rhs_q = integral_i_numeric(a, b, 1e-12).value / lam + math.log(lam) / (
            lam * a
        ) * elliptic_k(b / a)
        assert lhs_q == pytest.approx(rhs_q, rel=1e-10)

    def test_domain_guard(self):
        with pytest.raises(DomainError):
            i_closed(1.0, 1.0)
        with pytest.raises(DomainError):
            i_closed(1.0, 2.0)


class TestSeriesRoute:
    def test_matches_closed_form(self):
        assert i_via_f(2.0, 1.0) == pytest.approx(i_closed(2.0, 1.0), rel=1e-10)

    def test_far_from_radius(self):
        assert i_via_f(10.0, 1.0) == pytest.approx(
            integral_i_numeric(10.0, 1.0, 1e-12).value, rel=1e-10
        )

    def test_rejects_outside_series_domain(self):
        with pytest.raises(DomainError):
            i_via_f(1.4, 1.0)  # a < sqrt(2) b

    def test_j_series_route(self):
        assert j_via_f(0.5) == pytest.approx(
            integral_j_numeric(0.5, 1e-12).value, rel=1e-10
        )
        assert j_via_f(0.6) == pytest.approx(j_closed(0.6), rel=1e-10)

    def test_j_series_route_domain(self):
        with pytest.raises(DomainError):
            j_via_f(0.75)  # beyond 1/sqrt(2)


class TestFRoutes:
    def test_series_vs_closed(self):
        assert f_closed(0.01) == pytest.approx(
            __import__("ellog").eval_f(0.01), abs=1e-11
        )
        assert f_closed(0.05) == pytest.approx(
            __import__("ellog").eval_f(0.05), abs=1e-10
        )

    def test_series_vs_j_route(self):
        from ellog.exact_series import eval_f

        assert f_via_j(0.02) == pytest.approx(eval_f(0.02), abs=1e-10)
        assert f_via_j(0.02) == pytest.approx(f_closed(0.02), abs=1e-10)

    def test_continuation_past_radius(self):
        # 0.25 is outside |x| < 1/16, but both continuations agree
        assert f_closed(0.25) == pytest.approx(f_via_j(0.25), abs=1e-10)
        assert f_closed(0.8) == pytest.approx(f_via_j(0.8), abs=1e-10)

    def test_series_argument_mapping_inside_unit_interval(self):
        for x in (1e-6, 0.01, 1.0, 1e6):
            c = 16.0 * x / (1.0 + 16.0 * x)
            assert 0.0 < c < 1.0

    def test_closed_form_floor(self):
        with pytest.raises(DomainError):
            f_closed(1e-9)
        f_closed(1e-8)


class TestEntry42421:
    def test_unit_product_vanishes(self):
        assert entry_4242_1_closed(2.0, 0.5) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("a,b", [(2.0, 1.0), (3.0, 2.0)])
    def test_matches_quadrature(self, a, b):
        assert entry_4242_1_closed(a, b) == pytest.approx(
            integral_4242_1_numeric(a, b, 1e-12).value, abs=1e-10
        )

    def test_domain_guard(self):
        with pytest.raises(DomainError):
            entry_4242_1_closed(1.0, 1.0)


def test_symbolic_entry_reduction():
    assert symbolic_entry_reduction_check()


class TestCheckResult:
    @given(
        st.floats(min_value=-10, max_value=10),
        st.floats(min_value=-10, max_value=10),
        st.floats(min_value=1e-14, max_value=1.0),
    )
    def test_pass_iff_error_within_tolerance(self, lhs, rhs, tol):
        c = make_check("prop", (("x", 0.0),), lhs, rhs, tol)
        assert c.passed == (c.abs_err <= tol or c.rel_err <= tol)
        assert c.abs_err == abs(lhs - rhs)

    def test_report_counts(self):
        checks = [
            make_check("a", (), 1.0, 1.0, 1e-12),
            make_check("b", (), 1.0, 2.0, 1e-12),
        ]
        report = VerificationReport.from_checks(checks, (("k", 1),))
        assert report.n_pass == 1
        assert report.n_fail == 1
        assert report.n_pass + report.n_fail == len(report.checks)

    def test_report_sorted_deterministically(self):
        checks = [
            make_check("z", (("x", 1.0),), 0.0, 0.0, 1.0),
            make_check("a", (("x", 2.0),), 0.0, 0.0, 1.0),
            make_check("a", (("x", 1.0),), 0.0, 0.0, 1.0),
        ]
        report = VerificationReport.from_checks(checks, ())
        names = [(c.name, c.inputs) for c in report.checks]
        assert names == sorted(names)


SMALL_GRID = GridSpec(
    a_values=(1.5, 2.5), b_values=(0.4, 1.0), n_c=5,
    closure_points=(0.05, 0.25), theta0_a_values=(0.5, 0.9),
    log_moment_orders=(0, 2), telescope_max_n=12, harmonic_max_n=20,
    ode_terms=12, identity_max_j=10,
)


class TestRunVerification:
    def test_small_grid_all_pass(self):
        report = run_verification(SMALL_GRID)
        assert report.n_fail == 0
        assert report.n_pass == len(report.checks) > 50

    def test_empty_grid(self):
        empty = GridSpec(
            a_values=(), b_values=(), n_c=0, f_arguments=(),
            f_arguments_continued=(), closure_points=(), theta0_a_values=(),
            log_moment_orders=(), telescope_max_n=0, harmonic_max_n=0,
            ode_terms=5, identity_max_j=1,
        )
        report = run_verification(empty)
        # only the fixed exact checks remain, and none fails
        assert report.n_fail == 0

    def test_invalid_grid_points_become_failures_with_note(self):
        bad = GridSpec(
            a_values=(1.0,), b_values=(2.0,), n_c=3,
            f_arguments=(), f_arguments_continued=(), closure_points=(),
            theta0_a_values=(), log_moment_orders=(),
            telescope_max_n=5, harmonic_max_n=5, ode_terms=5, identity_max_j=2,
        )
        report = run_verification(bad)
        failures = [c for c in report.checks if not c.passed]
        assert failures
        assert any("0 < b < a" in c.note for c in failures)
        assert report.n_fail == len(failures)

    def test_deterministic(self):
        first = run_verification(SMALL_GRID)
        second = run_verification(SMALL_GRID)
        assert first == second
