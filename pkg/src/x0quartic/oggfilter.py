"""Point-count lower bounds on X0(N) over F_{p^2} and the d-elliptic exclusion test.

A degree-d map X0(N) -> E (an elliptic curve) forces
#X0(N)(F_{p^2}) <= d * #E(F_{p^2}) <= d (p+1)^2 at any prime p of good
reduction, while #X0(N)(F_{p^2}) >= L_p(N) := (p-1)/12 * psi(N) + 2^omega(N).
So d*(p+1)^2 < L_p(N) for a single p not dividing N rules the map out.
All comparisons are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numthy import factorize, omega, psi


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = factorize(p)
    return len(f) == 1 and f[0][1] == 1


def _primes_up_to(bound: int):
    return [p for p in range(2, bound + 1) if is_prime(p)]


@dataclass(frozen=True)
class OggCertificate:
    """A witness that X0(level) admits no degree-`degree` map to an elliptic curve."""

    level: int
    degree: int
    prime: int
    lower_bound: Fraction  # L_p(N)
    curve_capacity: int  # degree * (p+1)^2

    def excludes(self) -> bool:
        return self.curve_capacity < self.lower_bound


def ogg_lower_bound(level: int, p: int) -> Fraction:
    """L_p(N) = (p-1)/12 * psi(N) + 2^omega(N), exact."""
    if level < 1:
        raise ValueError("level must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if level % p == 0:
        raise ValueError(f"prime {p} divides level {level}: the bound needs good reduction")
    return Fraction(p - 1, 12) * psi(level) + 2 ** omega(level)


def d_elliptic_excluded(level: int, degree: int = 4, prime_search_bound: int = 23) -> OggCertificate | None:
    """First prime p <= prime_search_bound with p not dividing N and d(p+1)^2 < L_p(N).

    Returns None when no such prime exists below the bound; absence is
    inconclusive (it never proves a degree-d map exists).
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    if degree < 1:
        raise ValueError("degree must be >= 1")
    for p in _primes_up_to(prime_search_bound):
        if level % p == 0:
            continue
        lb = ogg_lower_bound(level, p)
        capacity = degree * (p + 1) ** 2
        if capacity < lb:
            return OggCertificate(level=level, degree=degree, prime=p, lower_bound=lb, curve_capacity=capacity)
    return None
