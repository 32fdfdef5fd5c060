"""Complete and incomplete elliptic integrals via AGM and Carlson forms.

The complete integral of the first kind is

    K(k) = integral_0^1 dx / sqrt((1-x^2)(1-k^2 x^2)),    0 <= k < 1,

evaluated here as pi / (2 agm(1, k')) with k' = sqrt(1-k^2); the second kind
E(k) uses the classical AGM side-sum E = K (1 - sum 2^(n-1) c_n^2).  Both are
deliberately independent of any quadrature rule so that direct numerical
integration can serve as a cross-check rather than a circular one.

The incomplete integral needed by the shock-phase application,

    integral_1^u dw / sqrt((w^2-1)(1-m^2 w^2)),    0 < m < 1,  1 < u < 1/m,

reduces to sin(phi) * R_F(cos^2 phi, 1/u^2, 1) with sin^2 phi =
(u^2-1)/((1-m^2) u^2), where R_F is Carlson's symmetric integral of the first
kind, computed by the standard duplication iteration.  The Carlson route is
well conditioned at the w=1 endpoint singularity, where naive quadrature of
the defining integral needs care.

All functions are pure; values can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Policy cap: K(k) has a logarithmic divergence at k=1, so relative-accuracy
# guarantees become meaningless beyond this point and we refuse to evaluate.
K_MODULUS_MAX = 1.0 - 1e-8

_AGM_MAX_ITER = 64


@dataclass(frozen=True)
class Modulus:
    """An elliptic modulus k in [0,1] paired with its complement k'.

    k^2 + k'^2 = 1 holds to within a few ulp by construction; build instances
    through :meth:`from_k` or :meth:`from_ratio` rather than the raw
    constructor unless both members are already known to full precision.
    """

    k: float
    kprime: float

    def __post_init__(self):
        if not (0.0 <= self.k <= 1.0 and 0.0 <= self.kprime <= 1.0):
            raise DomainError(f"modulus components out of range: {self}")
        if abs(self.k * self.k + self.kprime * self.kprime - 1.0) > 4 * math.ulp(1.0):
            raise DomainError(f"k^2 + k'^2 != 1 beyond rounding: {self}")

    @classmethod
    def from_k(cls, k: float) -> "Modulus":
        if not 0.0 <= k <= 1.0:
            raise DomainError(f"modulus must lie in [0, 1], got {k}")
        # (1-k)(1+k) avoids cancellation in 1-k^2 for k near 1.
        return cls(k, math.sqrt((1.0 - k) * (1.0 + k)))

    @classmethod
    def from_ratio(cls, b: float, a: float) -> "Modulus":
        """Modulus k = b/a with k' = sqrt(a^2-b^2)/a, for 0 < b <= a."""
        if not 0.0 < b <= a:
            raise DomainError(f"ratio modulus requires 0 < b <= a, got b={b}, a={a}")
        return cls(b / a, math.sqrt((a - b) * (a + b)) / a)

    @property
    def complement(self) -> "Modulus":
        return Modulus(self.kprime, self.k)


def _as_modulus(m: "Modulus | float") -> Modulus:
    return m if isinstance(m, Modulus) else Modulus.from_k(float(m))


def agm(a0: float, b0: float) -> float:
    """Common limit of the arithmetic-geometric mean iteration.

    Quadratically convergent: |a_{n+1}-b_{n+1}| <= |a_n-b_n|^2 / (8 min(a,b)).
    Iteration stops once |a_n - b_n| <= 2 ulp(a_n).
    """
    if not (a0 > 0.0 and b0 > 0.0):
        raise DomainError(f"agm requires positive arguments, got {a0}, {b0}")
    a, b = float(a0), float(b0)
    for _ in range(_AGM_MAX_ITER):
        if abs(a - b) <= 2.0 * math.ulp(a):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


@dataclass(frozen=True)
class AgmState:
    """One step of the AGM iteration, kept for convergence diagnostics."""

    a: float
    b: float
    iterations: int


def agm_trace(a0: float, b0: float) -> list[AgmState]:
    """The full AGM iterate sequence, first entry the inputs."""
    if not (a0 > 0.0 and b0 > 0.0):
        raise DomainError(f"agm requires positive arguments, got {a0}, {b0}")
    a, b = float(a0), float(b0)
    states = [AgmState(a, b, 0)]
    for n in range(1, _AGM_MAX_ITER + 1):
        if abs(a - b) <= 2.0 * math.ulp(a):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        states.append(AgmState(a, b, n))
    return states


def elliptic_k(m: "Modulus | float") -> float:
    """Complete elliptic integral of the first kind, K(k) = pi/(2 agm(1,k')).

    Rejects k > 1 - 1e-8 where the logarithmic divergence makes a relative
    error contract meaningless; use :func:`elliptic_k_from_complement` when
    the complementary modulus is the exactly known quantity.
    """
    mod = _as_modulus(m)
    if mod.k > K_MODULUS_MAX:
        raise DomainError(
            f"K(k) diverges as k->1; refusing k={mod.k} > {K_MODULUS_MAX}"
        )
    return math.pi / (2.0 * agm(1.0, mod.kprime))


def elliptic_k_from_complement(kprime: float) -> float:
    """K(k) for the modulus whose complement is ``kprime``.

    Equivalent to elliptic_k(sqrt(1-kprime^2)) but exact in the regime where
    that modulus would round to 1: the AGM consumes k' directly, so k' = 1e-9
    still yields ~16 correct digits of K ~ log(4/k').
    """
    if not 0.0 < kprime <= 1.0:
        raise DomainError(f"complementary modulus must lie in (0, 1], got {kprime}")
    return math.pi / (2.0 * agm(1.0, kprime))


def elliptic_e(m: "Modulus | float") -> float:
    """Complete elliptic integral of the second kind via the AGM side-sum.

    E(k) = K(k) (1 - sum_{n>=0} 2^(n-1) c_n^2) with c_0 = k and
    c_{n+1} = (a_n - b_n)/2 along the AGM orbit of (1, k').  E(1) = 1 is
    handled directly (the AGM collapses there).
    """
    mod = _as_modulus(m)
    if mod.k == 1.0:
        return 1.0
    a, b = 1.0, mod.kprime
    csum = 0.5 * mod.k * mod.k
    weight = 0.5
    for _ in range(_AGM_MAX_ITER):
        if abs(a - b) <= 2.0 * math.ulp(a):
            break
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        weight *= 2.0
        csum += weight * c * c
    # final AGM value is (a+b)/2, so K = pi/(a+b)
    return (1.0 - csum) * math.pi / (a + b)


def k_imaginary_modulus(t: float) -> float:
    """K at a purely imaginary modulus: K(it) = K(t/sqrt(1+t^2)) / sqrt(1+t^2).

    Equals integral_0^1 dx / sqrt((1-x^2)(1+t^2 x^2)) for t >= 0.
    """
    if t < 0.0:
        raise DomainError(f"imaginary-modulus parameter must be >= 0, got {t}")
    if t == 0.0:
        return 0.5 * math.pi
    h = math.hypot(1.0, t)
    return elliptic_k(t / h) / h


# Carlson R_F duplication: error ~ errtol^6, so 7e-4 leaves margin below 1 ulp.
_RF_ERRTOL = 7.0e-4


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson's symmetric elliptic integral R_F(x,y,z).

    R_F = (1/2) integral_0^inf dt / sqrt((t+x)(t+y)(t+z)), arguments
    nonnegative with at most one zero.  Duplication iteration with the
    fifth-order tail expansion.
    """
    if min(x, y, z) < 0.0 or (x + y) == 0.0 or (y + z) == 0.0 or (x + z) == 0.0:
        raise DomainError(f"carlson_rf requires nonnegative args, at most one zero: {x}, {y}, {z}"
                          )
    xt, yt, zt = float(x), float(y), float(z)
    for _ in range(200):
        sx, sy, sz = math.sqrt(xt), math.sqrt(yt), math.sqrt(zt)
        lam = sx * (sy + sz) + sy * sz
        xt, yt, zt = 0.25 * (xt + lam), 0.25 * (yt + lam), 0.25 * (zt + lam)
        ave = (xt + yt + zt) / 3.0
        delx = (ave - xt) / ave
        dely = (ave - yt) / ave
        delz = (ave - zt) / ave
        if max(abs(delx), abs(dely), abs(delz)) < _RF_ERRTOL:
            break
    e2 = delx * dely - delz * delz
    e3 = delx * dely * delz
    return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / math.sqrt(ave)


def incomplete_first_kind(upper: float, m_ratio: float) -> float:
    """integral_1^upper dw / sqrt((w^2-1)(1-m_ratio^2 w^2)).

    Requires 0 < m_ratio < 1 and 1 < upper < 1/m_ratio (both endpoints of the
    w-interval are then regular except the integrable w=1 singularity).  The
    value is the Legendre incomplete integral F(phi, k) with
    k^2 = 1 - m_ratio^2 and sin^2 phi = (upper^2-1)/(k^2 upper^2), evaluated
    through Carlson's R_F.
    """
    m = float(m_ratio)
    u = float(upper)
    if not 0.0 < m < 1.0:
        raise DomainError(f"m_ratio must lie in (0, 1), got {m}")
    if not 1.0 < u < 1.0 / m:
        raise DomainError(f"upper must lie in (1, 1/m_ratio) = (1, {1.0 / m}), got {u}")
    k2 = (1.0 - m) * (1.0 + m)
    usq = u * u
    sin_phi = math.sqrt((u - 1.0) * (u + 1.0) / k2) / u
    # cos^2 phi = (1 - m^2 u^2)/(k^2 u^2); the factored form stays positive
    # under rounding right up to upper -> 1/m.
    cos2_phi = max(0.0, (1.0 - m * u) * (1.0 + m * u) / (k2 * usq))
    return sin_phi * carlson_rf(cos2_phi, 1.0 / usq, 1.0)
