"""Phase constant of the collisionless-shock cnoidal asymptotics of KdV.

In the fifth (collisionless shock) region of the long-time KdV expansion the
solution oscillates as a Jacobi cn-wave whose phase constant has the form

    theta0 = K(alpha) - integral_1^sqrt(b/a) dw / sqrt((w^2-1)(1-(a/b)^2 w^2))
             - (1/(2 pi b)) integral_{-a}^{a} log(2 gamma w^2) dw
                                    / sqrt((w^2-a^2)(w^2-b^2)),

with branch points 0 < a < b < sqrt(2), a^2 + b^2 = 2.  The opaque first term
K(alpha) depends on scattering data not modeled here and enters as a plain
number (``kalpha_term``); gamma > 0 is likewise free.

The point of this module is the third term.  By evenness, and since
(w^2-a^2)(w^2-b^2) > 0 on |w| < a, it equals

    -(1/(pi b)) [ log(2 gamma) K(a/b) / b + 2 I(b, a) ],

where I(b,a) is exactly the Gradshteyn-Ryzhik 4.242.4 integral with the
larger parameter b and smaller parameter a, so the proven closed form applies
(note the swapped roles relative to the shock's own a < b naming).  Both the
closed form and a direct tanh-sinh evaluation are provided so they can be
cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import quadrature
from .elliptic import elliptic_k, incomplete_first_kind
from .errors import DomainError
from .identities import i_closed

_AB_CONSTRAINT_TOL = 1e-12


@dataclass(frozen=True)
class ShockParams:
    """Branch points and free constants of the shock-phase formula.

    0 < a < b < sqrt(2) with a^2 + b^2 = 2 (b is derived from a, so the
    constraint holds to rounding); gamma > 0 is the constant inside the
    logarithm; kalpha_term is the externally supplied K(alpha) summand.
    """

    a: float
    b: float
    gamma: float
    kalpha_term: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.a < self.b < math.sqrt(2.0):
            raise DomainError(
                f"branch points must satisfy 0 < a < b < sqrt(2), got {self}"
            )
        if abs(self.a * self.a + self.b * self.b - 2.0) > _AB_CONSTRAINT_TOL:
            raise DomainError(f"a^2 + b^2 must equal 2, got {self}")
        if not self.gamma > 0.0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")

    @classmethod
    def from_a(cls, a: float, gamma: float, kalpha_term: float = 0.0) -> "ShockParams":
        """Derive b = sqrt(2 - a^2); requires 0 < a < 1 so that a < b."""
        if not 0.0 < a < 1.0:
            raise DomainError(f"need 0 < a < 1 so that a < b, got a={a}")
        return cls(a, math.sqrt(2.0 - a * a), gamma, kalpha_term)


def theta0_third_term_closed(params: ShockParams) -> float:
    """The log-kernel term of theta0 in closed form:

        -(1/(pi b)) [ log(2 gamma) K(a/b) / b + 2 I(b, a) ].
    """
    a, b = params.a, params.b
    return -(
        math.log(2.0 * params.gamma) * elliptic_k(a / b) / b
        + 2.0 * i_closed(b, a)
    ) / (math.pi * b)


def theta0_third_term_quadrature(params: ShockParams,
                                 tol: float = 1e-12) -> quadrature.QuadratureResult:
    """Direct tanh-sinh evaluation of -(1/(2 pi b)) integral_{-a}^{a} ...

    The integrand is even, so twice the (0, a) integral is used; the range is
    split at a/2 to isolate the log singularity at 0 from the inverse-sqrt
    singularity at a.  The logarithm is evaluated literally as
    log(2 gamma w^2), which changes sign inside the interval when
    2 gamma a^2 > 1; that is harmless for the quadrature.
    """
    a, b = params.a, params.b
    if tol < 4e-14:
        raise DomainError(f"split-interval integral needs tol >= 4e-14, got {tol}")
    two_gamma = 2.0 * params.gamma
    asq = a * a
    bsq = b * b
    half_tol = 0.25 * tol

    def left(w, d_lo, d_hi):
        # log(2 gamma w^2) split so w^2 cannot underflow at extreme nodes
        return (math.log(two_gamma) + 2.0 * math.log(d_lo)) / math.sqrt(
            (asq - w * w) * (bsq - w * w)
        )

    def right(w, d_lo, d_hi):
        return math.log(two_gamma * w * w) / math.sqrt(
            d_hi * (a + w) * (bsq - w * w)
        )

    first = quadrature.tanh_sinh(left, 0.0, 0.5 * a, half_tol)
    second = quadrature.tanh_sinh(right, 0.5 * a, a, half_tol)
    scale = -1.0 / (math.pi * b)  # -(1/(2 pi b)) * 2 for evenness
    value = scale * (first.value + second.value)
    return quadrature.QuadratureResult(
        value=value,
        err_estimate=abs(scale) * (first.err_estimate + second.err_estimate),
        levels=max(first.levels, second.levels),
        evaluations=first.evaluations + second.evaluations,
        converged=first.converged and second.converged,
    )


def theta0(params: ShockParams, tol: float = 1e-12) -> float:
    """theta0 = kalpha_term - (incomplete integral) + (third term, closed).

    The incomplete integral runs from 1 to sqrt(b/a) with modulus ratio a/b;
    it collapses to 0 as a -> b (empty interval).
    """
    a, b = params.a, params.b
    upper = math.sqrt(b / a)
    middle = incomplete_first_kind(upper, a / b) if upper > 1.0 else 0.0
    return params.kalpha_term - middle + theta0_third_term_closed(params)
