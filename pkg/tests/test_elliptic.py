"""Elliptic integral layer: AGM, K, E, Carlson reduction.

Oracles: a 50-digit decimal AGM iteration written here from scratch, the
tanh-sinh quadrature of the defining integrals (an independent code path by
design), and classical consistency identities.
"""

import math
import random
from decimal import Decimal, getcontext

import pytest
from hypothesis import given, strategies as st

from ellog.elliptic import (
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
from ellog.errors import DomainError
from ellog.quadrature import tanh_sinh

# frozen from the 50-digit oracle below (and cross-checked against mpmath)
AGM_1_HALF = 0.72839551552345343459
K_HALF = 1.6857503548125960429
E_HALF = 1.4674622093394271554
RF_0_1_2 = 1.3110287771460599052


def decimal_agm(a: str, b: str, digits: int = 50) -> Decimal:
    """Brute-force AGM at high precision; the independent oracle for agm()."""
    getcontext().prec = digits
    x, y = Decimal(a), Decimal(b)
    for _ in range(digits):
        if x == y:
            break
        x, y = (x + y) / 2, (x * y).sqrt()
    return x


def k_defining_integral(k: float, tol: float = 1e-13) -> float:
    kk = float(k)

    def f(x, d_lo, d_hi):
        return 1.0 / math.sqrt(d_hi * (1.0 + x) * (1.0 - kk * x) * (1.0 + kk * x))

    return tanh_sinh(f, 0.0, 1.0, tol).value


def e_defining_integral(k: float, tol: float = 1e-13) -> float:
    kk = float(k)

    def f(theta):
        s = math.sin(theta)
        return math.sqrt(1.0 - kk * kk * s * s)

    return tanh_sinh(f, 0.0, 0.5 * math.pi, tol).value


class TestAgm:
    def test_fixed_point_one(self):
        assert agm(1.0, 1.0) == 1.0

    @given(st.floats(min_value=1e-6, max_value=1e6))
    def test_fixed_point_any(self, x):
        assert agm(x, x) == x

    def test_against_50_digit_oracle(self):
        oracle = float(decimal_agm("1", "0.5"))
        assert oracle == pytest.approx(AGM_1_HALF, rel=1e-15)
        assert agm(1.0, 0.5) == pytest.approx(oracle, rel=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            agm(0.0, 1.0)
        with pytest.raises(DomainError):
            agm(1.0, -2.0)

    def test_trace_contracts_quadratically(self):
        states = agm_trace(1.0, 0.02)
        assert isinstance(states[0], AgmState)
        for prev, cur in zip(states, states[1:]):
            gap_prev = abs(prev.a - prev.b)
            bound = gap_prev * gap_prev / (8.0 * min(prev.a, prev.b))
            assert abs(cur.a - cur.b) <= bound * (1.0 + 1e-12)


class TestModulus:
    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_pythagorean_invariant(self, k):
        m = Modulus.from_k(k)
        assert abs(m.k * m.k + m.kprime * m.kprime - 1.0) <= 4 * math.ulp(1.0)

    def test_from_ratio(self):
        m = Modulus.from_ratio(1.0, 2.0)
        assert m.k == 0.5
        assert m.kprime == pytest.approx(math.sqrt(3) / 2, rel=1e-15)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            Modulus.from_k(1.5)
        with pytest.raises(DomainError):
            Modulus(0.9, 0.9)  # violates k^2 + k'^2 = 1


class TestCompleteIntegrals:
    def test_k_at_zero(self):
        assert elliptic_k(0.0) == pytest.approx(math.pi / 2, rel=1e-15)

    def test_k_at_half(self):
        assert elliptic_k(0.5) == pytest.approx(K_HALF, rel=1e-12)
        assert elliptic_k(0.5) == pytest.approx(k_defining_integral(0.5), rel=1e-12)

    def test_k_entry_modulus(self):
        # b/a with a=2, b=1, the modulus used throughout the entry checks
        m = Modulus.from_ratio(1.0, 2.0)
        assert elliptic_k(m) == pytest.approx(k_defining_integral(0.5), rel=1e-12)

    def test_k_quadrature_oracle_random_grid(self):
        rng = random.Random(20240917)
        for _ in range(100):
            k = rng.uniform(0.0, 0.99)
            agm_val = elliptic_k(k)
            quad_val = k_defining_integral(k)
            assert abs(agm_val - quad_val) / agm_val <= 1e-12

    def test_k_rejects_near_one(self):
        with pytest.raises(DomainError):
            elliptic_k(1.0 - 1e-9)
        elliptic_k(1.0 - 1e-7)  # inside the accepted range

    def test_k_from_complement_matches(self):
        k = 0.5
        m = Modulus.from_k(k)
        assert elliptic_k_from_complement(m.kprime) == pytest.approx(
            elliptic_k(k), rel=1e-14
        )

    def test_e_trivial_values(self):
        assert elliptic_e(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
        assert elliptic_e(1.0) == 1.0

    def test_e_at_half(self):
        assert elliptic_e(0.5) == pytest.approx(E_HALF, rel=1e-13)
        assert elliptic_e(0.5) == pytest.approx(e_defining_integral(0.5), rel=1e-13)

    def test_e_quadrature_oracle(self):
        rng = random.Random(7)
        for _ in range(20):
            k = rng.uniform(0.0, 0.98)
            assert elliptic_e(k) == pytest.approx(e_defining_integral(k), rel=1e-13)

    def test_legendre_relation(self):
        # E(k)K(k') + E(k')K(k) - K(k)K(k') = pi/2, a pure consistency check
        # between the two AGM evaluators
        rng = random.Random(123)
        for _ in range(20):
            k = rng.uniform(0.05, 0.95)
            m = Modulus.from_k(k)
            lhs = (
                elliptic_e(m) * elliptic_k(m.complement)
                + elliptic_e(m.complement) * elliptic_k(m)
                - elliptic_k(m) * elliptic_k(m.complement)
            )
            assert lhs == pytest.approx(math.pi / 2, rel=1e-12)


class TestImaginaryModulus:
    def test_at_zero(self):
        assert k_imaginary_modulus(0.0) == pytest.approx(math.pi / 2, rel=1e-15)

    def test_at_one(self):
        expected = elliptic_k(1.0 / math.sqrt(2.0)) / math.sqrt(2.0)
        assert k_imaginary_modulus(1.0) == pytest.approx(expected, rel=1e-14)

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            k_imaginary_modulus(-0.1)

    def test_against_defining_integral(self):
        # K(it) = integral_0^1 dx / sqrt((1-x^2)(1+t^2 x^2))
        for i in range(20):
            t = 10.0 * i / 19.0

            def f(x, d_lo, d_hi, t=t):
                return 1.0 / math.sqrt(d_hi * (1.0 + x) * (1.0 + t * t * x * x))

            quad = tanh_sinh(f, 0.0, 1.0, 1e-13).value
            val = k_imaginary_modulus(t)
            assert abs(val - quad) / abs(val) <= 1e-11


class TestCarlsonAndIncomplete:
    def test_rf_degenerate_values(self):
        assert carlson_rf(1.0, 1.0, 1.0) == pytest.approx(1.0, rel=1e-14)
        assert carlson_rf(0.0, 1.0, 1.0) == pytest.approx(math.pi / 2, rel=1e-14)
        assert carlson_rf(0.0, 1.0, 2.0) == pytest.approx(RF_0_1_2, rel=1e-14)

    def test_rf_rejects_bad_args(self):
        with pytest.raises(DomainError):
            carlson_rf(-1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            carlson_rf(0.0, 0.0, 1.0)

    def test_incomplete_vanishes_at_lower_limit(self):
        assert incomplete_first_kind(1.0 + 1e-12, 0.5) == pytest.approx(
            0.0, abs=2e-6
        )  # integrand ~ (w-1)^(-1/2), so the value scales like sqrt(u-1)

    def test_incomplete_rejects_degenerate_ratio(self):
        with pytest.raises(DomainError):
            incomplete_first_kind(1.2, 1.0)  # m_ratio = 1 empties the range
        with pytest.raises(DomainError):
            incomplete_first_kind(0.9, 0.5)  # upper <= 1
        with pytest.raises(DomainError):
            incomplete_first_kind(2.1, 0.5)  # upper >= 1/m

    def test_incomplete_against_quadrature(self):
        a, b = 0.8, math.sqrt(2.0 - 0.64)
        m = a / b
        upper = math.sqrt(b / a)

        def f(w, d_lo, d_hi):
            return 1.0 / math.sqrt(d_lo * (w + 1.0) * (1.0 - m * w) * (1.0 + m * w))

        quad = tanh_sinh(f, 1.0, upper, 1e-13).value
        assert incomplete_first_kind(upper, m) == pytest.approx(quad, abs=1e-10)

    def test_incomplete_complete_limit(self):
        # upper -> 1/m turns the integral into (1/m-scaled) complete K
        m = 0.6
        upper = 1.0 / m * (1.0 - 1e-13)
        val = incomplete_first_kind(upper, m)
        k = math.sqrt(1.0 - m * m)
        assert val == pytest.approx(elliptic_k(k), rel=1e-6)
