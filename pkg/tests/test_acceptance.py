"""Acceptance gate: the headline results, one visible pass/fail line per criterion.

Each test prints "[PASS] criterion-..." or "[FAIL] criterion-..." and asserts.
The full level scan (criteria 4 and 5) runs once, single-threaded and timed.
Known red: criterion 6a — nine levels of the ingested point-count exclusion
list admit no single-prime certificate at degree 4 for any prime, so the
"every listed level receives a certificate" form of the claim is not
attainable; see README "Known limitations". The classifier handles those nine
via cited list membership instead, which criterion 5 exercises.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from time import perf_counter

import pytest

from _oracles import box_vectors, quad_value, random_pd_matrix
from x0quartic.classifier import scan
from x0quartic.hecke import EigenvalueContext, an
from x0quartic.numthy import GENUS_ZERO_LEVELS, genus_x0, moebius, omega, psi
from x0quartic.oggfilter import d_elliptic_excluded, is_prime, ogg_lower_bound
from x0quartic.pairing import form_string, gram_matrix
from x0quartic.qflattice import enumerate_up_to, ldl_decompose, represents
from x0quartic.traces import ap, count_points

# Level, curve, parametrization degree, and the degree form, frozen.
TABLE2 = (
    (106, "53.a1", 2, "6x^2-4xy+6y^2"),
    (114, "57.a1", 4, "12x^2-16xy+12y^2"),
    (116, "58.a1", 4, "8x^2-8xy+8y^2"),
    (122, "61.a1", 2, "6x^2-4xy+6y^2"),
    (129, "43.a1", 2, "8x^2-8xy+8y^2"),
    (130, "65.a1", 2, "6x^2-4xy+6y^2"),
    (148, "37.a1", 2, "12x^2+12y^2+12z^2-16xy+4xz-16yz"),
    (158, "79.a1", 2, "6x^2-4xy+6y^2"),
    (164, "82.a1", 4, "8x^2-8xy+8y^2"),
    (166, "83.a1", 2, "6x^2-4xy+6y^2"),
    (171, "57.a1", 4, "12x^2-8xy+12y^2"),
    (172, "43.a1", 2, "12x^2+12y^2+12z^2-16xy+4xz-16yz"),
    (176, "88.a1", 8, "16x^2+16y^2"),
    (178, "89.a1", 2, "6x^2-4xy+6y^2"),
    (182, "91.a1", 4, "12x^2-16xy+12y^2"),
    (182, "91.b2", 4, "12x^2+12y^2"),
    (183, "61.a1", 2, "8x^2-8xy+8y^2"),
    (184, "92.a1", 6, "12x^2+12y^2"),
    (185, "37.a1", 2, "12x^2-8xy+12y^2"),
    (195, "65.a1", 2, "8x^2-8xy+8y^2"),
    (215, "43.a1", 2, "12x^2-16xy+12y^2"),
    (237, "79.a1", 2, "8x^2-4xy+8y^2"),
    (242, "121.b2", 4, "12x^2+12y^2"),
    (249, "83.a1", 2, "8x^2-4xy+8y^2"),
    (259, "37.a1", 2, "16x^2-4xy+16y^2"),
    (264, "88.a1", 8, "32x^2-48xy+32y^2"),
    (265, "53.a1", 2, "12x^2+12y^2"),
    (267, "89.a1", 2, "8x^2-4xy+8y^2"),
    (297, "99.a2", 4, "12x^2+12y^2"),
)

POSITIVE_RANK_TETRAELLIPTIC = frozenset(
    {57, 58, 65, 74, 77, 82, 86, 91, 99, 111, 118, 121, 123, 128, 141, 142, 143, 145, 155, 159}
)

QUARTIC_INFINITE = frozenset(
    set(range(1, 76))
    | set(range(77, 84))
    | set(range(85, 90))
    | {91, 92}
    | set(range(94, 97))
    | set(range(98, 102))
    | {103, 104, 107, 111, 118, 119, 121, 123, 125, 128, 131}
    | {141, 142, 143, 145, 155, 159, 167, 191}
)

UNCERTIFIABLE_LISTED = (154, 174, 202, 212, 232, 236, 279, 287, 301)


def check(label: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
    assert ok, f"{label}: {detail}"


@pytest.fixture(scope="module")
def full_scan(db, aux):
    t0 = perf_counter()
    report = scan(1, 407, db, aux)  # single-threaded on purpose: the timing is part of the claim
    return report, perf_counter() - t0


def test_criterion_1_table2_forms(db):
    t0 = perf_counter()
    bad = []
    for level, label, degree, form in TABLE2:
        curve = db.get(label)
        if curve is None or curve.modular_degree != degree:
            bad.append((level, label, "curve record"))
            continue
        got = form_string(gram_matrix(level, curve))
        if got != form:
            bad.append((level, label, got))
    elapsed = perf_counter() - t0
    check(
        "criterion-1 (degree-form table)",
        not bad and elapsed < 5.0,
        f"29 rows recomputed char-for-char in {elapsed:.2f}s" if not bad else f"mismatches: {bad}",
    )


def test_criterion_2_no_small_representations(db):
    t0 = perf_counter()
    bad = []
    for level, label, _, _ in TABLE2:
        gm = gram_matrix(level, db.get(label))
        form = ldl_decompose(gm.entries)
        oracle_values = {quad_value(gm.entries, v) for v in box_vectors(gm.entries, 4)}
        for k in (1, 2, 3, 4):
            verdict, witness = represents(form, k)
            if verdict or witness is not None or k in oracle_values:
                bad.append((level, label, k))
    elapsed = perf_counter() - t0
    check(
        "criterion-2 (degrees 1..4 unrepresented)",
        not bad and elapsed < 5.0,
        f"29 forms x 4 targets, enumeration and box oracle agree, {elapsed:.2f}s"
        if not bad
        else f"represented: {bad}",
    )


def test_criterion_3_worked_matrices(db):
    g122 = gram_matrix(122, db.get("61.a1")).entries
    g129 = gram_matrix(129, db.get("43.a1")).entries
    g148 = gram_matrix(148, db.get("37.a1")).entries
    ok = (
        g122 == ((6, -2), (-2, 6))
        and g129 == ((8, -4), (-4, 8))
        and g148 == ((12, -8, 2), (-8, 12, -8), (2, -8, 12))
    )
    check(
        "criterion-3 (worked examples)",
        ok,
        "off-diagonals -2 / -4 / (-8, +2) and diagonals 6 / 8 / 12 exact"
        if ok
        else f"got {g122}, {g129}, {g148}",
    )


def test_criterion_4_tetraelliptic_set(full_scan):
    report, elapsed = full_scan
    got = set(report.tetraelliptic_levels)
    ok = got == set(POSITIVE_RANK_TETRAELLIPTIC) and elapsed < 60.0
    check(
        "criterion-4 (positive-rank tetraelliptic levels)",
        ok,
        f"scan(1, 407) found exactly the 20 published levels in {elapsed:.1f}s"
        if ok
        else f"elapsed {elapsed:.1f}s; extra {sorted(got - POSITIVE_RANK_TETRAELLIPTIC)}, "
        f"missing {sorted(POSITIVE_RANK_TETRAELLIPTIC - got)}",
    )


def test_criterion_5_quartic_classification(full_scan):
    report, _ = full_scan
    infinite = set(report.infinite_levels)
    ok = (
        infinite == set(QUARTIC_INFINITE)
        and report.unresolved_levels == ()
        and set(report.finite_levels) == set(range(1, 408)) - set(QUARTIC_INFINITE)
    )
    check(
        "criterion-5 (quartic-point classification)",
        ok,
        "115 infinite levels, 292 finite, 0 unresolved — exact set equality"
        if ok
        else f"extra {sorted(infinite - QUARTIC_INFINITE)}, missing {sorted(QUARTIC_INFINITE - infinite)}, "
        f"unresolved {list(report.unresolved_levels)}",
    )


def test_criterion_6a_listed_levels_certified(aux):
    missing = [n for n in sorted(aux.ogg_excluded) if d_elliptic_excluded(n, 4, 23) is None]
    detail = f"all {len(aux.ogg_excluded)} listed levels certified"
    if missing:
        margins = {
            n: round(
                max(
                    float(ogg_lower_bound(n, p)) - 4 * (p + 1) ** 2
                    for p in range(2, 24)
                    if is_prime(p) and n % p
                ),
                1,
            )
            for n in missing
        }
        detail = (
            f"{len(missing)} listed levels admit no degree-4 certificate at any prime "
            f"(best bound minus capacity, never positive: {margins}); the classifier "
            'falls back to cited list membership there; see README "Known limitations"'
        )
    # Guard: the gap must be exactly the nine known levels — anything else is a regression.
    assert tuple(missing) == UNCERTIFIABLE_LISTED, f"unexpected certificate gaps: {missing}"
    check("criterion-6a (certificates for every listed level)", not missing, detail)


def test_criterion_6b_tail_rule(aux):
    t0 = perf_counter()
    bad = []
    for n in range(402, 1001):
        cert = d_elliptic_excluded(n, 4, 23)
        if cert is None:
            bad.append(n)
            continue
        lower = Fraction(cert.prime - 1, 12) * psi(n) + 2 ** omega(n)
        if not (cert.lower_bound == lower and 4 * (cert.prime + 1) ** 2 < lower):
            bad.append(n)
    elapsed = perf_counter() - t0
    check(
        "criterion-6b (every level in 402..1000 certified)",
        not bad and elapsed < 10.0,
        f"599 certificates, exact rational inequalities rechecked, {elapsed:.2f}s"
        if not bad
        else f"failures at {bad[:10]}",
    )


def test_criterion_7_property_suite(db, full_scan):
    report, _ = full_scan
    failures = []

    # (a) Hasse bound at every good prime p <= 50, every bundled curve
    for curve in db.records:
        for p in (x for x in range(2, 51) if is_prime(x) and curve.conductor % x):
            a = ap(curve, p)
            if a * a > 4 * p or count_points(curve, p) != p + 1 - a:
                failures.append(f"hasse {curve.label} p={p}")

    # (b) Hecke multiplicativity and the good-prime second-power identity
    rng = random.Random(61)
    for curve in db.records:
        ctx = EigenvalueContext(curve)
        for _ in range(15):
            m, n = rng.randint(1, 50), rng.randint(1, 50)
            if gcd(m, n) == 1 and an(ctx, m * n) != an(ctx, m) * an(ctx, n):
                failures.append(f"mult {curve.label} ({m},{n})")
        for p in (2, 3, 5, 7):
            if curve.conductor % p:
                if an(ctx, p * p) != an(ctx, p) ** 2 - p:
                    failures.append(f"a_p2 {curve.label} p={p}")

    # (c) psi and moebius multiplicativity on coprime arguments up to 10^4
    for _ in range(2000):
        m, n = rng.randint(1, 100), rng.randint(1, 100)
        if gcd(m, n) != 1:
            continue
        if psi(m * n) != psi(m) * psi(n) or moebius(m * n) != moebius(m) * moebius(n):
            failures.append(f"numthy ({m},{n})")

    # (d) 200 random short-vector enumerations against the brute-force box oracle
    for case in range(200):
        dim = rng.randint(1, 4)
        g = random_pd_matrix(rng, dim)
        bound = rng.randint(1, 50)
        got = set(enumerate_up_to(ldl_decompose(g), bound).vectors)
        if got != box_vectors(g, bound):
            failures.append(f"enumeration case {case}")

    # (e) positive LDL pivots for every Gram matrix the scan built
    grams = 0
    for c in report.results:
        for step in c.evidence:
            if step.kind != "gram_non_representation":
                continue
            grams += 1
            if any(d <= 0 for d in ldl_decompose(step.gram.entries).D):
                failures.append(f"pivot level={c.level} {step.gram.curve_label}")
    if grams != len(TABLE2):
        failures.append(f"expected {len(TABLE2)} pipeline Grams, saw {grams}")

    # (f) genus anchors.  The genus-above-7 shortcut backing the finiteness
    # rule quantifies over levels not already classified infinite; inside the
    # infinite set the one level above 100 with small genus is 121 (genus 6,
    # 121 = 11^2 has psi = 132 and twelve cusps), settled by its witness map.
    if genus_x0(97) != 7:
        failures.append("genus 97")
    if frozenset(n for n in range(1, 408) if genus_x0(n) == 0) != GENUS_ZERO_LEVELS:
        failures.append("genus-zero set")
    small_genus_tail = [n for n in range(101, 408) if genus_x0(n) <= 7]
    if small_genus_tail != [121] or genus_x0(121) != 6:
        failures.append(f"genus tail exceptions {small_genus_tail}")
    if any(genus_x0(n) <= 7 for n in range(101, 408) if n not in QUARTIC_INFINITE):
        failures.append("genus tail (finite levels)")

    check(
        "criterion-7 (property suite)",
        not failures,
        "Hasse, Hecke recurrences, multiplicativity, 200 enumeration cases, "
        f"{grams} pipeline Grams with positive pivots, genus anchors"
        if not failures
        else f"failures: {failures[:8]}",
    )
