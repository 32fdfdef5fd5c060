"""Shock-phase parameters and the theta0 term cross-checks."""

import math

import pytest

from ellog.errors import DomainError
from ellog.elliptic import incomplete_first_kind
from ellog.kdv_phase import (
    ShockParams,
    theta0,
    theta0_third_term_closed,
    theta0_third_term_quadrature,
)


class TestShockParams:
    def test_branch_constraint_by_construction(self):
        p = ShockParams.from_a(0.7, gamma=1.0)
        assert p.a ** 2 + p.b ** 2 == pytest.approx(2.0, abs=1e-12)
        assert 0.0 < p.a < p.b < math.sqrt(2.0)

    def test_rejects_bad_a(self):
        with pytest.raises(DomainError):
            ShockParams.from_a(1.0, gamma=1.0)  # a = b
        with pytest.raises(DomainError):
            ShockParams.from_a(0.0, gamma=1.0)

    def test_rejects_violated_constraint(self):
        with pytest.raises(DomainError):
            ShockParams(a=0.5, b=1.0, gamma=1.0)  # a^2 + b^2 != 2

    def test_rejects_nonpositive_gamma(self):
        with pytest.raises(DomainError):
            ShockParams.from_a(0.5, gamma=0.0)


class TestThirdTerm:
    @pytest.mark.parametrize("a", [0.3, 0.5, 0.8, 0.9, 0.95])
    def test_closed_matches_quadrature(self, a):
        p = ShockParams.from_a(a, gamma=0.5)
        quad = theta0_third_term_quadrature(p, 1e-12)
        assert quad.converged
        assert theta0_third_term_closed(p) == pytest.approx(quad.value, abs=1e-9)

    def test_log_sign_change_inside_interval(self):
        # 2 gamma a^2 = 1 puts the zero of log(2 gamma w^2) strictly inside
        a = 0.9
        p = ShockParams.from_a(a, gamma=1.0 / (2.0 * a * a))
        quad = theta0_third_term_quadrature(p, 1e-12)
        assert theta0_third_term_closed(p) == pytest.approx(quad.value, abs=1e-9)


class TestTheta0:
    def test_composition(self):
        p = ShockParams.from_a(0.8, gamma=0.5, kalpha_term=1.25)
        middle = incomplete_first_kind(math.sqrt(p.b / p.a), p.a / p.b)
        expected = 1.25 - middle + theta0_third_term_closed(p)
        assert theta0(p) == pytest.approx(expected, rel=1e-14)

    def test_middle_term_collapsing_interval_limit(self):
        # as a -> 1 the integration interval (1, sqrt(b/a)) collapses while
        # the modulus degenerates at the same rate; the incomplete integral
        # tends to F(pi/4, 0) = pi/4, not 0
        values = []
        for a in (0.99, 0.999, 0.9999):
            p = ShockParams.from_a(a, gamma=0.5)
            values.append(incomplete_first_kind(math.sqrt(p.b / p.a), p.a / p.b))
        gaps = [abs(v - math.pi / 4.0) for v in values]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] <= 1e-4

    def test_kalpha_passthrough(self):
        base = ShockParams.from_a(0.6, gamma=0.5, kalpha_term=0.0)
        shifted = ShockParams.from_a(0.6, gamma=0.5, kalpha_term=2.5)
        assert theta0(shifted) - theta0(base) == pytest.approx(2.5, abs=1e-14)
