"""Hecke eigenvalues a_n from prime traces, and the Moebius-summed pairing coefficient.

Prime powers follow a_{p^r} = a_{p^{r-1}} a_p - p a_{p^{r-2}} at good primes
and a_{p^r} = a_p^r at primes dividing the conductor; coprime indices
multiply. The pairing coefficient for a divisor pair (d1, d2) with
g = gcd(d1, d2) is

    a = S(d1) * S(d2),   S(d) = sum over m with m^2 | (d/g) of mu(m) * a_{d/(g m^2)},

which collapses to a_{d1 d2 / g^2} whenever d1 d2 / g^2 is squarefree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .curvedb import CurveRecord
from .numthy import divisors, factorize, moebius
from .traces import ap


@dataclass
class EigenvalueContext:
    """Memoized a_n for one curve; single-owner, create one per thread if sharing."""

    curve: CurveRecord
    cache: dict[int, int] = field(default_factory=dict)


def _prime_power(ctx: EigenvalueContext, p: int, r: int) -> int:
    if r == 0:
        return 1
    a_p = ap(ctx.curve, p)
    if ctx.curve.conductor % p == 0:
        return a_p**r
    prev, cur = 1, a_p  # a_{p^0}, a_{p^1}
    for _ in range(r - 1):
        prev, cur = cur, cur * a_p - p * prev
    return cur


def an(ctx: EigenvalueContext, n: int) -> int:
    """The n-th Hecke eigenvalue of the newform attached to ctx.curve."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cached = ctx.cache.get(n)
    if cached is not None:
        return cached
    out = 1
    for p, e in factorize(n):
        out *= _prime_power(ctx, p, e)
    ctx.cache[n] = out
    return out


def _moebius_sum(ctx: EigenvalueContext, d: int, g: int) -> int:
    # S(d) = sum_{m^2 | (d/g)} mu(m) a_{d/(g m^2)}
    q = d // g
    total = 0
    for m in divisors(q):
        if q % (m * m) != 0:
            continue
        mu = moebius(m)
        if mu == 0:
            continue
        total += mu * an(ctx, d // (g * m * m))
    return total


def moebius_coefficient(ctx: EigenvalueContext, d1: int, d2: int) -> int:
    """The integer coefficient a = S(d1)*S(d2) entering each degree-pairing entry."""
    if d1 < 1 or d2 < 1:
        raise ValueError("divisor arguments must be >= 1")
    g = gcd(d1, d2)
    return _moebius_sum(ctx, d1, g) * _moebius_sum(ctx, d2, g)
