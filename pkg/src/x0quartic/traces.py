"""Frobenius traces a_p: exhaustive point counting at good primes, stored data at bad primes."""

from __future__ import annotations

from .curvedb import CurveRecord, b_invariants, c_invariants, discriminant
from .oggfilter import is_prime


class BadReductionError(ValueError):
    pass


class MissingTraceError(KeyError):
    pass


def _legendre(a: int, p: int) -> int:
    # (a|p) for odd prime p
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def count_points(curve: CurveRecord, p: int) -> int:
    """#E(F_p) including the point at infinity, by exhaustive counting.

    p = 2, 3 walk every (x, y) pair of the long Weierstrass equation; p > 3
    count y-solutions per x with a Legendre symbol on the completed square
    (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if curve.conductor % p == 0:
        raise BadReductionError(f"{curve.label} has bad reduction at {p}")
    if discriminant(curve.ainvs) % p == 0:
        # a non-minimal model could vanish mod p even at a good prime; the
        # bundled models are minimal, so this indicates corrupt data
        raise BadReductionError(f"model of {curve.label} is singular mod {p}")
    a1, a2, a3, a4, a6 = curve.ainvs
    if p <= 3:
        n = 1
        for x in range(p):
            for y in range(p):
                if (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % p == 0:
                    n += 1
        return n
    b2, b4, b6, _ = b_invariants(curve.ainvs)
    n = p + 1
    for x in range(p):
        g = ((4 * x + b2) * x + 2 * b4) * x + b6
        n += _legendre(g, p)
    return n


def ap(curve: CurveRecord, p: int) -> int:
    """Trace of Frobenius: p + 1 - #E(F_p) at good p, the stored trace at bad p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if curve.conductor % p == 0:
        try:
            return curve.bad_traces[p]
        except KeyError:
            raise MissingTraceError(f"{curve.label}: no stored trace for bad prime {p}") from None
    a = p + 1 - count_points(curve, p)
    if a * a > 4 * p:
        raise ArithmeticError(f"{curve.label}: a_{p} = {a} violates the Hasse bound")
    return a


def minus_c6_is_padic_square(ainvs, p: int) -> bool:
    """Whether -c6 is a square in Q_p — at a multiplicative prime this decides split vs nonsplit.

    (Split multiplicative reduction has a_p = +1, nonsplit has a_p = -1.)
    Only a cross-check on stored bad traces, never their source.
    """
    _, c6 = c_invariants(ainvs)
    m = -c6
    if m == 0:
        return False
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    if v % 2 != 0:
        return False
    if p == 2:
        return m % 8 == 1
    return _legendre(m, p) == 1
