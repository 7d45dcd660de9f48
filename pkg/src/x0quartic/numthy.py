"""Multiplicative number theory and invariants of the modular curve X0(N).

Everything here is exact integer arithmetic; trial division is plenty at the
scales this pipeline runs (N <= 407 in the classifier, <= 10^4 in tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


def _check_positive(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected a positive integer, got {n!r}")
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, as ((p, e), ...) with p ascending."""
    _check_positive(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(n))


def divisors(n: int) -> list[int]:
    """All divisors of n, ascending."""
    _check_positive(n)
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def moebius(n: int) -> int:
    """Moebius function: 0 on non-squarefree n, else (-1)^(number of prime factors)."""
    _check_positive(n)
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def psi(n: int) -> int:
    """The index function psi(n) = n * prod_{p|n} (1 + 1/p), always an integer."""
    _check_positive(n)
    out = n
    for p, _ in factorize(n):
        # n * (1+1/p) stays integral because p | n
        out = out // p * (p + 1)
    return out


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    _check_positive(n)
    return len(factorize(n))


def euler_phi(n: int) -> int:
    _check_positive(n)
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def _kronecker_minus1(p: int) -> int:
    # (-1 | p) for prime p, with the convention (-1 | 2) = 0
    if p == 2:
        return 0
    return 1 if p % 4 == 1 else -1


def _kronecker_minus3(p: int) -> int:
    # (-3 | p) for prime p: 0 at p = 3, and for p != 3 it is +1 iff p = 1 mod 3
    if p == 3:
        return 0
    if p == 2:
        return -1
    return 1 if p % 3 == 1 else -1


def nu2(n: int) -> int:
    """Number of elliptic points of order 2 on X0(n)."""
    _check_positive(n)
    if n % 4 == 0:
        return 0
    out = 1
    for p in prime_divisors(n):
        out *= 1 + _kronecker_minus1(p)
    return out


def nu3(n: int) -> int:
    """Number of elliptic points of order 3 on X0(n)."""
    _check_positive(n)
    if n % 9 == 0:
        return 0
    out = 1
    for p in prime_divisors(n):
        out *= 1 + _kronecker_minus3(p)
    return out


def nu_inf(n: int) -> int:
    """Number of cusps of X0(n): sum over d | n of phi(gcd(d, n/d))."""
    _check_positive(n)
    from math import gcd

    return sum(euler_phi(gcd(d, n // d)) for d in divisors(n))


def genus_x0(n: int) -> int:
    """Genus of X0(n) via the classical formula.

    g = 1 + psi/12 - nu2/4 - nu3/3 - nu_inf/2; the combination is always an
    integer, which we assert rather than round.
    """
    _check_positive(n)
    twelve_g = 12 + psi(n) - 3 * nu2(n) - 4 * nu3(n) - 6 * nu_inf(n)
    if twelve_g % 12 != 0:
        raise ArithmeticError(f"genus formula gave a non-integer at n={n}")
    return twelve_g // 12


# Levels where X0(N) has genus 0.
GENUS_ZERO_LEVELS = frozenset({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25})


@dataclass(frozen=True)
class LevelProfile:
    """Invariants of X0(N) the pipeline keeps referring back to."""

    level: int
    psi: int
    omega: int
    genus: int
    divisors: tuple[int, ...]

    def __post_init__(self):
        assert self.divisors[0] == 1 and self.divisors[-1] == self.level


def level_profile(n: int) -> LevelProfile:
    _check_positive(n)
    return LevelProfile(
        level=n,
        psi=psi(n),
        omega=omega(n),
        genus=genus_x0(n),
        divisors=tuple(divisors(n)),
    )
