"""Verdict pipeline: spot checks, determinism, evidence chains, scanning."""

from __future__ import annotations

import json

import pytest

from x0quartic.auxdata import default_aux_path, load_aux
from x0quartic.classifier import (
    FINITE,
    INFINITE,
    TETRA_NEGATIVE,
    TETRA_POSITIVE,
    UNRESOLVED,
    classify,
    scan,
    tetraelliptic_status,
)
from x0quartic.curvedb import default_database_path, load_database


def kinds(steps):
    return [s.kind for s in steps]


def test_genus_zero_levels_are_infinite(db, aux):
    for level in (1, 2, 6, 25):
        c = classify(level, db, aux)
        assert c.status == INFINITE and c.mechanism == "genus_zero"
        assert c.genus == 0
        assert c.quartic_infinite is True


def test_quadratic_and_bielliptic_mechanisms(db, aux):
    c22 = classify(22, db, aux)
    assert c22.status == INFINITE and c22.mechanism == "quadratic_infinite"
    c34 = classify(34, db, aux)
    assert c34.status == INFINITE and c34.mechanism == "bielliptic_quotient"
    assert c34.tetraelliptic.status == TETRA_NEGATIVE


def test_tetraelliptic_positive_levels(db, aux):
    for level in (57, 118, 143):
        verdict = tetraelliptic_status(level, db, aux)
        assert verdict.status == TETRA_POSITIVE
        assert verdict.witness is not None and verdict.witness.degree == 4
        assert kinds(verdict.evidence) == ["cited_witness"]
        assert classify(level, db, aux).status == INFINITE
    v65 = tetraelliptic_status(65, db, aux)
    assert v65.witness.curve == "65.a2"


def test_special_finite_level_97(db, aux):
    c = classify(97, db, aux)
    assert c.status == FINITE and c.genus == 7
    assert "special_case" in kinds(c.evidence)
    assert c.tetraelliptic.status == TETRA_NEGATIVE


def test_level_122_gram_elimination(db, aux):
    v = tetraelliptic_status(122, db, aux)
    assert v.status == TETRA_NEGATIVE
    ks = kinds(v.evidence)
    assert "gram_non_representation" in ks
    assert "non_strong_weil_divisibility" in ks
    assert "cited_class_elimination" in ks
    gram_step = next(s for s in v.evidence if s.kind == "gram_non_representation")
    assert gram_step.gram.entries == ((6, -2), (-2, 6))
    assert gram_step.minimum_degree == 6
    assert gram_step.enumeration.vectors == ()
    c = classify(122, db, aux)
    assert c.status == FINITE and c.genus == 14
    assert "genus_rule" in kinds(c.evidence)


def test_listed_level_with_certificate(db, aux):
    v = tetraelliptic_status(190, db, aux)
    assert v.status == TETRA_NEGATIVE
    step = v.evidence[0]
    assert step.kind == "ogg_certificate" and step.listed
    assert step.certificate.excludes()


def test_listed_level_without_certificate_cites_the_list(db, aux):
    v = tetraelliptic_status(154, db, aux)
    assert v.status == TETRA_NEGATIVE
    assert kinds(v.evidence) == ["cited_set_membership"]
    assert v.evidence[0].set_name == "ogg_excluded"
    assert classify(154, db, aux).status == FINITE


def test_high_level_certificate_unlisted(db, aux):
    v = tetraelliptic_status(410, db, aux)
    assert v.status == TETRA_NEGATIVE
    step = v.evidence[0]
    assert step.kind == "ogg_certificate" and not step.listed
    assert classify(410, db, aux).status == FINITE


def test_cited_class_elimination_at_389(db, aux):
    v = tetraelliptic_status(389, db, aux)
    assert v.status == TETRA_NEGATIVE
    elim = next(s for s in v.evidence if s.kind == "cited_class_elimination")
    assert elim.conductor == 389 and elim.citation
    assert classify(389, db, aux).status == FINITE


def test_rank_zero_degree4_note(db, aux):
    for level in (76, 109, 184):
        c = classify(level, db, aux)
        assert c.status == FINITE
        note = next(s for s in c.evidence if s.kind == "rank_zero_degree4_note")
        assert note.targets


def test_multiple_of_tetraelliptic_level_is_eliminated(db, aux):
    # 171 = 3 * 57: the positive-rank class at 57 must be eliminated by the
    # Gram computation, and 171's own positive-rank classes by cited data.
    v = tetraelliptic_status(171, db, aux)
    assert v.status == TETRA_NEGATIVE
    ks = kinds(v.evidence)
    assert "gram_non_representation" in ks and "cited_class_elimination" in ks
    gram_step = next(s for s in v.evidence if s.kind == "gram_non_representation")
    assert gram_step.gram.curve_label == "57.a1"
    assert gram_step.minimum_degree == 12


def test_validation_errors(db, aux):
    for bad in (0, -3):
        with pytest.raises(ValueError):
            tetraelliptic_status(bad, db, aux)
        with pytest.raises(ValueError):
            classify(bad, db, aux)
    for wrong_type in (True, "57", 2.0):
        with pytest.raises(TypeError):
            tetraelliptic_status(wrong_type, db, aux)
        with pytest.raises(TypeError):
            classify(wrong_type, db, aux)
    with pytest.raises(ValueError):
        scan(0, 5, db, aux)
    with pytest.raises(ValueError):
        scan(5, 4, db, aux)
    with pytest.raises(TypeError):
        scan(True, 5, db, aux)


def test_scan_window_90_to_131(db, aux):
    report = scan(90, 131, db, aux)
    infinite = {91, 92, 94, 95, 96, 98, 99, 100, 101, 103, 104, 107, 111, 118, 119, 121, 123, 125, 128, 131}
    assert set(report.infinite_levels) == infinite
    assert set(report.tetraelliptic_levels) == {91, 99, 111, 118, 121, 123, 128}
    assert report.unresolved_levels == ()
    assert set(report.finite_levels) == set(range(90, 132)) - infinite
    summary = report.to_dict()["summary"]
    assert summary["positive_rank_tetraelliptic"] == sorted({91, 99, 111, 118, 121, 123, 128})


def test_scan_parallel_matches_serial(db, aux):
    serial = scan(100, 130, db, aux)
    parallel = scan(100, 130, db, aux, jobs=2)
    assert serial.to_json() == parallel.to_json()


def test_classification_is_deterministic_under_record_order(db, aux, tmp_path):
    lines = [{"source_note": db.source_note}] + [json.loads(r.to_json()) for r in db.records]
    reordered = [lines[0]] + list(reversed(lines[1:]))
    path = tmp_path / "curves.jsonl"
    path.write_text("\n".join(json.dumps(l) for l in reordered) + "\n", encoding="utf-8")
    db2 = load_database(path)
    for level in (122, 148, 182, 184, 264, 297):
        assert classify(level, db, aux).to_json() == classify(level, db2, aux).to_json()


def test_unresolved_when_witness_data_is_removed(db, tmp_path):
    kept = []
    for line in open(default_aux_path(), encoding="utf-8"):
        obj = json.loads(line)
        if obj.get("kind") == "bielliptic_quotient_witness" and obj.get("level") == 34:
            continue
        kept.append(line)
    path = tmp_path / "aux.jsonl"
    path.write_text("".join(kept), encoding="utf-8")
    aux2 = load_aux(path)
    c = classify(34, db, aux2)
    assert c.status == UNRESOLVED
    assert c.quartic_infinite is None
    assert "genus 3" in c.reason
    report = scan(30, 40, db, aux2)
    assert report.unresolved_levels == (34,)


def test_to_json_round_trip(db, aux):
    c = classify(148, db, aux)
    loaded = json.loads(c.to_json())
    assert loaded["level"] == 148
    assert loaded["status"] == FINITE
    assert loaded["genus"] == 17
    assert loaded["tetraelliptic"]["status"] == TETRA_NEGATIVE
    forms = [s["form"] for s in loaded["evidence"] if s["kind"] == "gram_non_representation"]
    assert "12x^2+12y^2+12z^2-16xy+4xz-16yz" in forms


def test_default_data_paths_load(monkeypatch):
    # classify() with no explicit db/aux must fall back to the bundled files
    monkeypatch.delenv("X0_CURVE_DB", raising=False)
    monkeypatch.delenv("X0_AUX_DB", raising=False)
    assert load_database(default_database_path()).get("37.a1") is not None
    c = classify(2)
    assert c.status == INFINITE
