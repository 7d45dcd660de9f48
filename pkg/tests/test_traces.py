"""Point counting and Frobenius traces against naive oracles and frozen values."""

from __future__ import annotations

import random

import pytest

from x0quartic.curvedb import CurveRecord
from x0quartic.oggfilter import is_prime
from x0quartic.traces import (
    BadReductionError,
    MissingTraceError,
    ap,
    count_points,
    minus_c6_is_padic_square,
)

PRIMES_50 = [p for p in range(2, 51) if is_prime(p)]


def naive_count(ainvs, p):
    a1, a2, a3, a4, a6 = ainvs
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % p == 0:
                n += 1
    return n


def test_count_points_matches_naive_loop(db):
    rng = random.Random(47)
    for curve in db.records:
        good = [p for p in PRIMES_50 if curve.conductor % p]
        for p in good[:4] + [rng.choice(good)]:
            assert count_points(curve, p) == naive_count(curve.ainvs, p)


def test_hasse_bound_up_to_50(db):
    for curve in db.records:
        for p in PRIMES_50:
            if curve.conductor % p == 0:
                continue
            a = ap(curve, p)
            assert a * a <= 4 * p
            assert count_points(curve, p) == p + 1 - a


def test_frozen_good_traces(db):
    frozen = {
        ("37.a1", 2): -2,
        ("37.a1", 3): -3,
        ("37.a1", 5): -2,
        ("37.a1", 7): -1,
        ("43.a1", 3): -2,
        ("53.a1", 5): 0,
        ("88.a1", 3): -3,
        ("121.b2", 2): 0,
    }
    for (label, p), want in frozen.items():
        assert ap(db.get(label), p) == want


def test_stored_bad_traces(db):
    assert ap(db.get("37.a1"), 37) == -1
    assert ap(db.get("43.a1"), 43) == -1
    assert ap(db.get("53.a1"), 53) == -1
    assert ap(db.get("92.a1"), 2) == 0  # additive


def test_bad_traces_consistent_with_reduction_type(db):
    for curve in db.records:
        n = curve.conductor
        for p in PRIMES_50:
            if n % p:
                continue
            stored = curve.bad_traces[p]
            if n % (p * p) == 0:
                assert stored == 0  # additive
            else:
                split = minus_c6_is_padic_square(curve.ainvs, p)
                assert stored == (1 if split else -1)


def test_count_points_rejects_bad_primes(db):
    curve = db.get("37.a1")
    with pytest.raises(BadReductionError):
        count_points(curve, 37)
    with pytest.raises(ValueError):
        count_points(curve, 6)
    with pytest.raises(ValueError):
        ap(curve, 1)


def test_missing_bad_trace_is_loud():
    bare = CurveRecord(
        label="37.a1",
        conductor=37,
        ainvs=(0, 0, 1, -1, 0),
        rank=1,
        analytic_rank=1,
        modular_degree=2,
        strong_weil=True,
        bad_traces={},
    )
    with pytest.raises(MissingTraceError):
        ap(bare, 37)
