"""Genus-1 lattice data and the Weierstrass sigma function for the J integral.

For a parameter c in (0,1), the cubic 4t^3 - g2 t - g3 with

    g2 = (4/3)(c^4 - c^2 + 1),    g3 = (4/27)(1 + c^2)(1 - 2c^2)(2 - c^2)

has the three real roots

    e1 = (2 - c^2)/3  >  e2 = (2c^2 - 1)/3  >  e3 = -(c^2 + 1)/3,

so e1 - e3 = 1, e2 - e3 = c^2 and the discriminant g2^3 - 27 g3^2 =
16 c^4 (c+1)^2 (c-1)^2 never vanishes on (0,1).  The corresponding
rectangular lattice has half-periods

    omega1 = K(c)  (real),      omega2 = i K(sqrt(1-c^2))  (purely imaginary),

nome q = exp(-pi K'/K), and the sigma function is evaluated through the
rapidly convergent theta series

    sigma(z) = (2 omega1 / pi) exp(eta1 z^2 / (2 omega1))
               theta1(pi z / (2 omega1), q) / theta1'(0, q),

with eta1 = zeta(omega1) obtained from the theta constants,
eta1 = -pi^2 theta1'''(0,q) / (12 omega1 theta1'(0,q)), and eta2 fixed by
Legendre's relation eta1 omega2 - eta2 omega1 = i pi / 2.

The payoff is a lattice-side route to J(c) = integral_0^1 log x dx /
sqrt((1-x^2)(1-c^2 x^2)):

    J(c) = omega1 log|sigma(omega2)| - (1/2) eta2 omega1 omega2
           + (i pi / 4) omega2,

a real number.  sigma(omega2) is purely imaginary on this lattice (sigma has
real Taylor coefficients, so conj(sigma(iy)) = -sigma(iy)); the branch of the
logarithm is therefore pinned by requiring a zero imaginary part, which is
exactly the branch that makes the closed form J(c) = -(pi/4) K(sqrt(1-c^2))
- (1/2) K(c) log c drop out.  Both the pure-imaginarity of sigma(omega2) and
the realness of the final J are asserted at runtime.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .elliptic import elliptic_k, elliptic_k_from_complement
from .errors import ConsistencyError, ConvergenceError, DomainError

NOME_MAX = 0.9
_THETA_MAX_TERMS = 400


def theta1(z: complex, q: float, tol: float = 1e-14) -> complex:
    """Jacobi theta function theta1(z, q) = 2 sum_{n>=0} (-1)^n q^((n+1/2)^2)
    sin((2n+1) z), for a real nome 0 < q < 1 and complex z.

    Terms are added until the rigorous bound 2 q^((n+1/2)^2) e^((2n+1)|Im z|)
    falls below tol relative to the accumulated scale.
    """
    if not 0.0 < q < 1.0:
        raise DomainError(f"nome must lie in (0, 1), got {q}")
    log_q = math.log(q)
    im = abs(z.imag) if isinstance(z, complex) else 0.0
    total = 0.0 + 0.0j
    scale = 0.0
    for n in range(_THETA_MAX_TERMS):
        half = n + 0.5
        mag = 2.0 * math.exp(log_q * half * half + (2 * n + 1) * im)
        if n >= 1 and mag <= tol * max(scale, 1e-300):
            return total
        term = 2.0 * math.exp(log_q * half * half) * cmath.sin((2 * n + 1) * z)
        if n % 2:
            term = -term
        total += term
        scale = max(scale, abs(total), mag)
    raise ConvergenceError(f"theta1 series did not converge for q={q}")


def theta1_dz0(q: float, tol: float = 1e-16) -> float:
    """theta1'(0, q) = 2 sum (-1)^n (2n+1) q^((n+1/2)^2)."""
    if not 0.0 < q < 1.0:
        raise DomainError(f"nome must lie in (0, 1), got {q}")
    log_q = math.log(q)
    total = 0.0
    for n in range(_THETA_MAX_TERMS):
        half = n + 0.5
        term = 2.0 * (2 * n + 1) * math.exp(log_q * half * half)
        if n >= 1 and term <= tol * abs(total):
            return total
        total += -term if n % 2 else term
    raise ConvergenceError(f"theta1' series did not converge for q={q}")


def theta1_d3z0(q: float, tol: float = 1e-16) -> float:
    """theta1'''(0, q) = -2 sum (-1)^n (2n+1)^3 q^((n+1/2)^2)."""
    if not 0.0 < q < 1.0:
        raise DomainError(f"nome must lie in (0, 1), got {q}")
    log_q = math.log(q)
    total = 0.0
    for n in range(_THETA_MAX_TERMS):
        half = n + 0.5
        term = 2.0 * (2 * n + 1) ** 3 * math.exp(log_q * half * half)
        if n >= 1 and term <= tol * abs(total):
            return -total
        total += -term if n % 2 else term
    raise ConvergenceError(f"theta1''' series did not converge for q={q}")


@dataclass(frozen=True)
class EllipticData:
    """Invariants, roots, half-periods and eta constants derived from c."""

    c: float
    g2: float
    g3: float
    e1: float
    e2: float
    e3: float
    omega1: float
    omega2: complex
    omega3: complex
    eta1: float
    eta2: complex
    nome_q: float


def lattice_from_c(c: float) -> EllipticData:
    """Construct the full lattice record for c in (0,1).

    Raises DomainError when c is so extreme that the nome leaves (0, 0.9] or
    the elliptic integrals leave their accurate range.
    """
    if not 0.0 < c < 1.0:
        raise DomainError(f"lattice parameter must lie in (0, 1), got {c}")
    csq = c * c
    g2 = (4.0 / 3.0) * (csq * csq - csq + 1.0)
    g3 = (4.0 / 27.0) * (1.0 + csq) * (1.0 - 2.0 * csq) * (2.0 - csq)
    e1 = (2.0 - csq) / 3.0
    e2 = (2.0 * csq - 1.0) / 3.0
    e3 = -(csq + 1.0) / 3.0
    big_k = elliptic_k(c)
    big_kp = elliptic_k_from_complement(c)  # K(sqrt(1-c^2))
    q = math.exp(-math.pi * big_kp / big_k)
    if not 0.0 < q <= NOME_MAX:
        raise DomainError(f"nome q={q} outside safe range (0, {NOME_MAX}] for c={c}")
    omega1 = big_k
    omega2 = complex(0.0, big_kp)
    eta1 = -math.pi * math.pi * theta1_d3z0(q) / (12.0 * omega1 * theta1_dz0(q))
    eta2 = (eta1 * omega2 - complex(0.0, 0.5 * math.pi)) / omega1
    return EllipticData(
        c=c, g2=g2, g3=g3, e1=e1, e2=e2, e3=e3,
        omega1=omega1, omega2=omega2, omega3=omega1 + omega2,
        eta1=eta1, eta2=eta2, nome_q=q,
    )


def sigma(z: complex, lattice: EllipticData, tol: float = 1e-14) -> complex:
    """Weierstrass sigma, normalized so sigma(z)/z -> 1 as z -> 0."""
    w1 = lattice.omega1
    v = (math.pi / (2.0 * w1)) * complex(z)
    pref = (2.0 * w1 / math.pi) * cmath.exp(lattice.eta1 * complex(z) ** 2 / (2.0 * w1))
    return pref * theta1(v, lattice.nome_q, tol) / theta1_dz0(lattice.nome_q)


def quasi_periodicity_residual(lattice: EllipticData, z: complex,
                               period_index: int, tol: float = 1e-14) -> float:
    """Relative residual of sigma(z + 2 omega_j) = -exp(2 eta_j (z + omega_j)) sigma(z)."""
    if period_index == 1:
        omega, eta = complex(lattice.omega1), complex(lattice.eta1)
    elif period_index == 2:
        omega, eta = lattice.omega2, lattice.eta2
    else:
        raise DomainError(f"period_index must be 1 or 2, got {period_index}")
    lhs = sigma(z + 2.0 * omega, lattice, tol)
    rhs = -cmath.exp(2.0 * eta * (z + omega)) * sigma(z, lattice, tol)
    return abs(lhs - rhs) / abs(rhs)


def sigma_product_identity_residual(lattice: EllipticData, tol: float = 1e-14) -> float:
    """Relative residual of sigma^2(w1+w2) = exp(2 eta2 w1) sigma^2(w1) sigma^2(w2).

    This identity is e1 - e3 = 1 in disguise (apply the wp difference
    formula wp(u)-wp(v) = -sigma(u+v) sigma(u-v) / (sigma^2 u sigma^2 v) at
    the half-periods).
    """
    w1 = complex(lattice.omega1)
    w2 = lattice.omega2
    lhs = sigma(w1 + w2, lattice, tol) ** 2
    rhs = (
        cmath.exp(2.0 * lattice.eta2 * w1)
        * sigma(w1, lattice, tol) ** 2
        * sigma(w2, lattice, tol) ** 2
    )
    return abs(lhs - rhs) / abs(rhs)


def sigma_modulus_identity_residual(lattice: EllipticData, tol: float = 1e-14) -> float:
    """Max residual of the two equivalent statements

        c^2 = exp(2 eta2 w2) / sigma^4(w2),
        log|sigma(w2)| = (1/2) eta2 w2 - (1/2) log c

    (eta2 w2 is real; sigma(w2) is purely imaginary so sigma^4(w2) > 0)."""
    c = lattice.c
    w2 = lattice.omega2
    s2 = sigma(w2, lattice, tol)
    first = abs(c * c - cmath.exp(2.0 * lattice.eta2 * w2) / s2 ** 4)
    second = abs(
        math.log(abs(s2)) - (0.5 * lattice.eta2 * w2 - 0.5 * math.log(c))
    )
    return max(first, second)


def legendre_residual(lattice: EllipticData) -> float:
    """|eta1 omega2 - eta2 omega1 - i pi/2| (zero by construction of eta2,
    up to rounding; the non-circular validation is j_via_sigma vs quadrature)."""
    return abs(
        lattice.eta1 * lattice.omega2
        - lattice.eta2 * lattice.omega1
        - complex(0.0, 0.5 * math.pi)
    )


_IMAG_RESIDUE_TOL = 1e-10


def j_via_sigma(lattice: "EllipticData | float", tol: float = 1e-14) -> float:
    """J(c) through the sigma function:

        J(c) = w1 log|sigma(w2)| - (1/2) eta2 w1 w2 + (i pi/4) w2.

    sigma(w2) is verified purely imaginary and the imaginary part of the
    result is verified to cancel below 1e-10 before being discarded;
    violations raise ConsistencyError rather than returning garbage.
    """
    lat = lattice if isinstance(lattice, EllipticData) else lattice_from_c(float(lattice))
    s2 = sigma(lat.omega2, lat, tol)
    if abs(s2.real) > _IMAG_RESIDUE_TOL * abs(s2):
        raise ConsistencyError(
            f"sigma(omega2) should be purely imaginary, got {s2} at c={lat.c}"
        )
    value = (
        lat.omega1 * math.log(abs(s2))
        - 0.5 * lat.eta2 * lat.omega1 * lat.omega2
        + 0.25j * math.pi * lat.omega2
    )
    if abs(value.imag) > _IMAG_RESIDUE_TOL * max(1.0, abs(value.real)):
        raise ConsistencyError(
            f"imaginary residue {value.imag} too large in J at c={lat.c}"
        )
    return value.real


def j_closed(c: float) -> float:
    """Closed form J(c) = -(pi/4) K(sqrt(1-c^2)) - (1/2) K(c) log c.

    K(sqrt(1-c^2)) is computed from its exactly known complement c, so the
    formula stays accurate arbitrarily close to c = 0 (limit -(pi/2) log 2).
    """
    if not 0.0 < c < 1.0:
        raise DomainError(f"requires 0 < c < 1, got {c}")
    return -0.25 * math.pi * elliptic_k_from_complement(c) - 0.5 * elliptic_k(
        c
    ) * math.log(c)
