"""Exact rational series arithmetic and the certificate checks built on it.

The central object is the power series

    F(x) = sum_{n>=0} (-1)^n C(2n,n)^2 H_n x^n,

with H_n the n-th harmonic number; it converges for |x| < 1/16 and opens
with -4x + 54x^2 - (2200/3)x^3 + (30625/3)x^4.  F is annihilated by the
fourth-order operator

    L = x^2(16x+1)^2 D^4 + 5x(32x+1)(16x+1) D^3 + 4(1568x^2+98x+1) D^2
        + 108(32x+1) D + 144,

and the same operator telescopes against the summand f_n(x) =
(-1)^n C(2n,n)^2 H_n x^n through the certificate cofactor

    g_n(x) = (n/x^2) [ ((n-1)n^2 + 4(2n+1)^3 x) f_n(x) + (n+1)^3 f_{n+1}(x) ],

meaning L[f_n] = g_n - g_{n+1} identically (the content of the identity,
after dividing by C(2n+1,n+1)^2 (-x)^n, is the three-term harmonic recurrence
(n+2) H_{n+2} - (2n+3) H_{n+1} + (n+1) H_n = 0).

Everything polynomial or power-series here is verified exactly over
arbitrary-precision rationals (fractions.Fraction); only the two second-order
closure equations for K-composites and the fourth-order equation applied to
the closed form of F, which are not power series at the origin, are checked
numerically with Richardson-extrapolated central differences.  Those are
regression tripwires at binary64, not proofs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .elliptic import elliptic_k, elliptic_k_from_complement
from .errors import DomainError

F_SERIES_RADIUS = Fraction(1, 16)
EVAL_F_MARGIN = 1e-4


# ----------------------------------------------------------------------------
# exact scalar sequences
# ----------------------------------------------------------------------------

_HARMONIC_CACHE: list[Fraction] = [Fraction(0)]


def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n exactly (H_0 = 0)."""
    if n < 0:
        raise DomainError(f"harmonic number index must be >= 0, got {n}")
    while len(_HARMONIC_CACHE) <= n:
        m = len(_HARMONIC_CACHE)
        _HARMONIC_CACHE.append(_HARMONIC_CACHE[-1] + Fraction(1, m))
    return _HARMONIC_CACHE[n]


def central_binomial(n: int) -> int:
    """C(2n, n) exactly."""
    if n < 0:
        raise DomainError(f"binomial index must be >= 0, got {n}")
    return math.comb(2 * n, n)


def f_coeff(n: int) -> Fraction:
    """Coefficient of x^n in F: (-1)^n C(2n,n)^2 H_n."""
    c = central_binomial(n)
    value = harmonic(n) * c * c
    return -value if n % 2 else value


def pochhammer_half(n: int) -> Fraction:
    """Rising factorial (1/2)_n = (1/2)(3/2)...((2n-1)/2)."""
    if n < 0:
        raise DomainError(f"Pochhammer index must be >= 0, got {n}")
    num = 1
    for j in range(n):
        num *= 2 * j + 1
    return Fraction(num, 2 ** n)


def binomial_half(n: int) -> Fraction:
    """Generalized binomial C(1/2, n) via the falling factorial definition."""
    if n < 0:
        raise DomainError(f"binomial index must be >= 0, got {n}")
    prod = Fraction(1)
    for j in range(n):
        prod *= Fraction(1, 2) - j
    return prod / math.factorial(n)


def wallis_sq_coeff(l: int) -> Fraction:
    """a_l = ((1/2)_l / l!)^2, equivalently (C(2l,l)/4^l)^2."""
    p = pochhammer_half(l) / math.factorial(l)
    return p * p


def k_taylor_coeff(n: int) -> Fraction:
    """Coefficient of x^(2n) in K(x)/pi: ((1/2)_n / n!)^2 / 2.

    First values 1/2, 1/8, 9/128, matching the Maclaurin expansion
    K(x) = pi (1/2 + x^2/8 + 9 x^4/128 + ...).
    """
    return wallis_sq_coeff(n) / 2


def harmonic_binomial_identity_check(j: int) -> bool:
    """Exact check of sum_{l<j} a_l/(j-l) = 4 a_j sum_{l<j} 1/(2l+1).

    Here a_l = ((1/2)_l / l!)^2.  This convolution identity is the crux of
    the proof of Gradshteyn-Ryzhik 4.242.1.
    """
    if j < 1:
        raise DomainError(f"identity index must be >= 1, got {j}")
    lhs = sum(wallis_sq_coeff(l) / (j - l) for l in range(j))
    rhs = 4 * wallis_sq_coeff(j) * sum(Fraction(1, 2 * l + 1) for l in range(j))
    return lhs == rhs


# ----------------------------------------------------------------------------
# rational polynomials and truncated series
# ----------------------------------------------------------------------------

def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    last = -1
    for i, c in enumerate(coeffs):
        if c != 0:
            last = i
    return tuple(Fraction(c) for c in coeffs[: last + 1])


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with exact rational coefficients, trailing zeros trimmed."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def of(cls, *coeffs) -> "RationalPolynomial":
        return cls(_trim([Fraction(c) for c in coeffs]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return RationalPolynomial(_trim(out))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + other.scale(-1)

    def scale(self, s) -> "RationalPolynomial":
        s = Fraction(s)
        return RationalPolynomial(_trim([c * s for c in self.coeffs]))

    def shift(self, power: int) -> "RationalPolynomial":
        """Multiply by x^power (power >= 0)."""
        if power < 0:
            raise DomainError("negative shift would leave the polynomial ring")
        return RationalPolynomial(_trim((Fraction(0),) * power + self.coeffs))

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if self.is_zero() or other.is_zero():
            return RationalPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(_trim(out))

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc


@dataclass(frozen=True)
class RationalSeries:
    """Truncated power series with exact rational coefficients.

    coeffs[i] is the coefficient of x^i for i = 0..truncation_order; no
    operation ever reads beyond the stored order, and operations that lose
    information (differentiation, products of unequal orders) shrink the
    order accordingly.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise DomainError("series needs at least the constant coefficient")

    @classmethod
    def of(cls, coeffs) -> "RationalSeries":
        return cls(tuple(Fraction(c) for c in coeffs))

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return RationalSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n)))

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return RationalSeries(tuple(self.coeffs[i] - other.coeffs[i] for i in range(n)))

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i in range(n):
            a = self.coeffs[i]
            if a:
                for j in range(n - i):
                    out[i + j] += a * other.coeffs[j]
        return RationalSeries(tuple(out))

    def derivative(self) -> "RationalSeries":
        if len(self.coeffs) == 1:
            return RationalSeries((Fraction(0),))
        return RationalSeries(
            tuple((i + 1) * self.coeffs[i + 1] for i in range(len(self.coeffs) - 1))
        )

    def mul_poly(self, p: RationalPolynomial) -> "RationalSeries":
        """Multiply by an exact polynomial; the truncation order is preserved."""
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for i, a in enumerate(p.coeffs):
            if a:
                for j in range(n - i):
                    out[i + j] += a * self.coeffs[j]
        return RationalSeries(tuple(out))


def f_series(order: int) -> RationalSeries:
    """F truncated at x^order, exact coefficients."""
    if order < 0:
        raise DomainError(f"order must be >= 0, got {order}")
    return RationalSeries(tuple(f_coeff(n) for n in range(order + 1)))


# ----------------------------------------------------------------------------
# the fourth-order operator, its certificate, and the exact checks
# ----------------------------------------------------------------------------

# Operator coefficients p_0..p_4 of L = sum p_j(x) D^j.
F_ODE_COEFFS: tuple[RationalPolynomial, ...] = (
    RationalPolynomial.of(144),
    RationalPolynomial.of(108, 3456),            # 108(32x+1)
    RationalPolynomial.of(4, 392, 6272),         # 4(1568x^2+98x+1)
    RationalPolynomial.of(0, 5, 240, 2560),      # 5x(32x+1)(16x+1)
    RationalPolynomial.of(0, 0, 1, 32, 256),     # x^2(16x+1)^2
)


def apply_ode_operator(series: RationalSeries,
                       ops: Sequence[RationalPolynomial] = F_ODE_COEFFS) -> RationalSeries:
    """Apply sum_j p_j(x) D^j to a truncated series, exactly.

    With input order N the result is reliable to order N - order(L) + min
    degree adjustments; for the operator above an input of order N+4 yields
    residual coefficients trusted through x^N, which is how
    :func:`f_ode_residual_coeffs` sizes its input.
    """
    acc = None
    deriv = series
    for j, p in enumerate(ops):
        if j > 0:
            deriv = deriv.derivative()
        term = deriv.mul_poly(p)
        acc = term if acc is None else RationalSeries(
            tuple(a + b for a, b in zip(acc.coeffs, term.coeffs))
        )
    return acc


def f_ode_residual_coeffs(n_terms: int) -> list[Fraction]:
    """First n_terms coefficients of L[F]; all must vanish exactly.

    Builds F through x^(n_terms+4) so every reported coefficient is fully
    determined by known series coefficients.
    """
    if n_terms < 5:
        raise DomainError(f"need n_terms >= 5, got {n_terms}")
    result = apply_ode_operator(f_series(n_terms + 4))
    return list(result.coeffs[:n_terms])


def _monomial_operator_image_x2(coeff: Fraction, n: int) -> RationalPolynomial:
    """x^2 * L[coeff * x^n] as an exact polynomial.

    D^j x^n = n(n-1)...(n-j+1) x^(n-j); the x^2 prefactor clears the negative
    powers that the certificate cofactor introduces.
    """
    acc = RationalPolynomial(())
    for j, p in enumerate(F_ODE_COEFFS):
        if n < j:
            continue
        ff = 1
        for i in range(j):
            ff *= n - i
        acc = acc + p.scale(coeff * ff).shift(n - j + 2)
    return acc


def certificate_g_x2(n: int) -> RationalPolynomial:
    """x^2 g_n as an exact polynomial, where

        g_n(x) = (n/x^2) [ ((n-1)n^2 + 4(2n+1)^3 x) f_n(x) + (n+1)^3 f_{n+1}(x) ]

    and f_n(x) = (-1)^n C(2n,n)^2 H_n x^n.  g_0 = 0 thanks to the n prefactor.
    """
    if n < 0:
        raise DomainError(f"certificate index must be >= 0, got {n}")
    if n == 0:
        return RationalPolynomial(())
    c_n = f_coeff(n)
    c_n1 = f_coeff(n + 1)
    out = [Fraction(0)] * (n + 2)
    out[n] = n * (n - 1) * n * n * c_n
    out[n + 1] = n * (4 * (2 * n + 1) ** 3 * c_n + (n + 1) ** 3 * c_n1)
    return RationalPolynomial(_trim(out))


def telescope_check(n: int) -> bool:
    """Exact verification of L[f_n] = g_n - g_{n+1} for the monomial f_n.

    Both sides are multiplied by x^2 and compared coefficient-by-coefficient
    as rational polynomials.
    """
    if n < 0:
        raise DomainError(f"certificate index must be >= 0, got {n}")
    lhs = _monomial_operator_image_x2(f_coeff(n), n)
    rhs = certificate_g_x2(n) - certificate_g_x2(n + 1)
    return lhs == rhs


def harmonic_recurrence_check(n: int) -> bool:
    """(n+2) H_{n+2} - (2n+3) H_{n+1} + (n+1) H_n == 0, exactly."""
    return (n + 2) * harmonic(n + 2) - (2 * n + 3) * harmonic(n + 1) + (
        n + 1
    ) * harmonic(n) == 0


# ----------------------------------------------------------------------------
# floating-point evaluation of F inside the disk of convergence
# ----------------------------------------------------------------------------

def eval_f(x: float, tol: float = 1e-14) -> float:
    """Partial sum of F(x) with a certified geometric tail bound.

    The term ratio satisfies |t_{n+1}/t_n| = 16|x| (1 - 1/(2n+2))^2
    H_{n+1}/H_n <= 16|x| for every n >= 1 (H_{n+1}/H_n <= (n+2)/(n+1)), so
    once a term t_n has been added the remaining tail is at most
    |t_n| rho/(1-rho) with rho = 16|x|.  Summation stops when that bound
    drops to tol.  Requires |x| < 1/16 - margin (margin 1e-4); closer to the
    radius the series is useless at binary64 and the closed form should be
    used instead.
    """
    if tol < 1e-16:
        raise DomainError(f"tol too small for binary64 summation: {tol}")
    limit = float(F_SERIES_RADIUS) - EVAL_F_MARGIN
    if abs(x) >= limit:
        raise DomainError(
            f"series for F needs |x| < 1/16 - {EVAL_F_MARGIN}; got x={x}"
        )
    if x == 0.0:
        return 0.0
    rho = 16.0 * abs(x)
    tail_factor = rho / (1.0 - rho)
    # term_n for n>=1, built recursively from term_1 = -4x
    term = -4.0 * x
    h = 1.0
    total = term
    n = 1
    while abs(term) * tail_factor > tol:
        ratio_binom = 2.0 * (2.0 * n + 1.0) / (n + 1.0)
        h_next = h + 1.0 / (n + 1.0)
        term *= -x * ratio_binom * ratio_binom * (h_next / h)
        h = h_next
        total += term
        n += 1
        if n > 200000:  # unreachable given the margin; defensive only
            raise DomainError("series summation failed to terminate")
    return total


# ----------------------------------------------------------------------------
# finite-difference residuals for the closure equations
# ----------------------------------------------------------------------------

_D1_W = (1.0, -8.0, 0.0, 8.0, -1.0)     # /(12h),  O(h^4)
_D2_W = (-1.0, 16.0, -30.0, 16.0, -1.0)  # /(12h^2), O(h^4)
_D3_W = (-1.0, 2.0, 0.0, -2.0, 1.0)      # /(2h^3),  O(h^2)
_D4_W = (1.0, -4.0, 6.0, -4.0, 1.0)      # /(h^4),   O(h^2)


def _stencil_derivs(y: Callable[[float], float], x0: float, h: float,
                    max_order: int) -> list[float]:
    """Derivatives 1..max_order of y at x0: 5-point central stencils at
    steps h and h/2 combined with one Richardson step per order."""

    def raw(step: float) -> list[float]:
        v = [y(x0 + k * step) for k in (-2, -1, 0, 1, 2)]
        out = [
            sum(w * s for w, s in zip(_D1_W, v)) / (12.0 * step),
            sum(w * s for w, s in zip(_D2_W, v)) / (12.0 * step * step),
        ]
        if max_order >= 3:
            out.append(sum(w * s for w, s in zip(_D3_W, v)) / (2.0 * step ** 3))
        if max_order >= 4:
            out.append(sum(w * s for w, s in zip(_D4_W, v)) / step ** 4)
        return out

    coarse = raw(h)
    fine = raw(0.5 * h)
    orders = (4, 4, 2, 2)  # leading error exponent of each stencil
    return [
        (2.0 ** p * f - c) / (2.0 ** p - 1.0)
        for f, c, p in zip(fine, coarse, orders)
    ]


def _second_order_residual(y: Callable[[float], float], x: float, h: float,
                           q2: float, q1: float, q0: float) -> float:
    """|q2 y'' + q1 y' + q0 y| / max(|y|, |x y'|, |x^2 y''|) at x."""
    y0 = y(x)
    d1, d2 = _stencil_derivs(y, x, h, 2)[:2]
    residual = q2 * d2 + q1 * d1 + q0 * y0
    scale = max(abs(y0), abs(x * d1), abs(x * x * d2))
    return abs(residual) / scale


def _default_step(x: float) -> float:
    return x / 64.0


def closure_ode_check_k_branch(x: float, h: float | None = None) -> float:
    """Scaled residual of x(16x+1)^2 y'' + (16x+1)^2 y' - 4y = 0 on both
    K-composites y = K(sqrt(16x/(1+16x))) and y = K(1/sqrt(1+16x)).

    Returns the larger of the two relative residuals (compare against 1e-6).
    """
    if x <= 0.0:
        raise DomainError(f"requires x > 0, got {x}")
    h = _default_step(x) if h is None else h
    if x < 10.0 * h:
        raise DomainError(f"step too large: need x >= 10h, got x={x}, h={h}")

    def y_inner(t: float) -> float:
        return elliptic_k(math.sqrt(16.0 * t / (1.0 + 16.0 * t)))

    def y_outer(t: float) -> float:
        # modulus 1/sqrt(1+16t) has exactly known complement sqrt(16t/(1+16t))
        return elliptic_k_from_complement(math.sqrt(16.0 * t / (1.0 + 16.0 * t)))

    s = (16.0 * x + 1.0) ** 2
    return max(
        _second_order_residual(y_inner, x, h, x * s, s, -4.0),
        _second_order_residual(y_outer, x, h, x * s, s, -4.0),
    )


def closure_ode_check_log_branch(x: float, h: float | None = None) -> float:
    """Scaled residual of x(16x+1)^2 y'' + (48x+1)(16x+1) y' + 8(24x+1) y = 0
    on y = log(x/(1+16x)) / sqrt(1+16x)."""
    if x <= 0.0:
        raise DomainError(f"requires x > 0, got {x}")
    h = _default_step(x) if h is None else h
    if x < 10.0 * h:
        raise DomainError(f"step too large: need x >= 10h, got x={x}, h={h}")

    def y(t: float) -> float:
        return math.log(t / (1.0 + 16.0 * t)) / math.sqrt(1.0 + 16.0 * t)

    s = 16.0 * x + 1.0
    return _second_order_residual(
        y, x, h, x * s * s, (48.0 * x + 1.0) * s, 8.0 * (24.0 * x + 1.0)
    )


def standard_k_ode_residual(k: float, h: float | None = None) -> float:
    """Scaled residual of the classical equation
    k(k^2-1) K'' + (3k^2-1) K' + k K = 0 at modulus k."""
    if not 0.0 < k < 1.0:
        raise DomainError(f"requires 0 < k < 1, got {k}")
    h = min(k, 1.0 - k) / 64.0 if h is None else h
    return _second_order_residual(
        elliptic_k, k, h, k * (k * k - 1.0), 3.0 * k * k - 1.0, k
    )


def fourth_order_ode_residual(y: Callable[[float], float], x: float,
                              log_step: float = 0.03) -> float:
    """Scaled residual of L[y] at x for the fourth-order operator of F.

    Differentiation runs in s = log x (the stencil then never approaches the
    x=0 branch point and the fourth derivative keeps ~x^4 better
    conditioning); x^j y^(j) follows from the s-derivatives via
    x^j D_x^j = D_s(D_s-1)...(D_s-j+1).  The residual is scaled by the
    largest operator-term magnitude, the natural yardstick for a sum of five
    huge terms that must cancel.
    """
    if x <= 0.0:
        raise DomainError(f"requires x > 0, got {x}")
    s0 = math.log(x)
    g = lambda s: y(math.exp(s))
    g1, g2, g3, g4 = _stencil_derivs(g, s0, log_step, 4)
    y0 = y(x)
    xj = (
        y0,
        g1,                                   # x y'
        g2 - g1,                              # x^2 y''
        g3 - 3.0 * g2 + 2.0 * g1,             # x^3 y'''
        g4 - 6.0 * g3 + 11.0 * g2 - 6.0 * g1,  # x^4 y''''
    )
    # q_j = p_j(x)/x^j so that p_j y^(j) = q_j * (x^j y^(j)); at most 1/x^2
    # appears, finite for x > 0
    s = 16.0 * x + 1.0
    q = (
        144.0,
        108.0 * (32.0 * x + 1.0) / x,
        4.0 * (1568.0 * x * x + 98.0 * x + 1.0) / (x * x),
        5.0 * (32.0 * x + 1.0) * s / (x * x),
        s * s / (x * x),
    )
    vals = [q[j] * xj[j] for j in range(5)]
    residual = sum(vals)
    scale = max(abs(v) for v in vals)
    return abs(residual) / scale
