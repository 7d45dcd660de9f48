"""Degree-pairing Gram matrices: frozen values, formula properties, and scope guards."""

from __future__ import annotations

import json

import pytest

from x0quartic.curvedb import CurveRecord
from x0quartic.numthy import divisors, psi
from x0quartic.pairing import (
    BASIS_LEVEL_BOUND,
    BasisScopeError,
    GramMatrix,
    HypothesisError,
    form_string,
    gram_entry,
    gram_matrix,
    hypothesis_check,
)

FROZEN = {
    (122, "61.a1"): ((6, -2), (-2, 6)),
    (129, "43.a1"): ((8, -4), (-4, 8)),
    (148, "37.a1"): ((12, -8, 2), (-8, 12, -8), (2, -8, 12)),
    (176, "88.a1"): ((16, 0), (0, 16)),
    (264, "88.a1"): ((32, -24), (-24, 32)),
    (297, "99.a2"): ((12, 0), (0, 12)),
}


def test_frozen_gram_matrices(db):
    for (level, label), want in FROZEN.items():
        gm = gram_matrix(level, db.get(label))
        assert gm.entries == want
        assert gm.basis == tuple(divisors(level // gm.conductor))


def test_gram_matrix_metadata(db):
    gm = gram_matrix(148, db.get("37.a1"))
    assert (gm.level, gm.curve_label, gm.conductor) == (148, "37.a1", 37)
    assert gm.modular_degree == 2
    assert gm.dim == 3 and gm.basis == (1, 2, 4)
    loaded = json.loads(gm.to_json())
    assert loaded == {
        "level": 148,
        "curve": "37.a1",
        "basis": [1, 2, 4],
        "matrix": [[12, -8, 2], [-8, 12, -8], [2, -8, 12]],
    }


def test_diagonal_entries_are_degeneracy_degrees(db):
    cases = [(114, "57.a1"), (130, "65.a1"), (148, "37.a1"), (171, "57.a1"), (264, "88.a1")]
    for level, label in cases:
        curve = db.get(label)
        gm = gram_matrix(level, curve)
        expected = curve.modular_degree * psi(level) // psi(curve.conductor)
        assert all(gm.entries[i][i] == expected for i in range(gm.dim))
        assert gm.entries == tuple(zip(*gm.entries))  # symmetric


def test_own_level_matrix_is_modular_degree(db):
    for label in ("57.a1", "92.a1", "121.b2"):
        curve = db.get(label)
        gm = gram_matrix(curve.conductor, curve)
        assert gm.basis == (1,)
        assert gm.entries == ((curve.modular_degree,),)


def test_hypothesis_check():
    assert hypothesis_check(122, 61)  # quotient 2 squarefree
    assert hypothesis_check(148, 37)  # quotient 4, coprime to 37
    assert hypothesis_check(57, 57)
    assert not hypothesis_check(352, 88)  # quotient 4 shares the factor 2 with 88
    with pytest.raises(ValueError):
        hypothesis_check(10, 3)
    with pytest.raises(ValueError):
        hypothesis_check(0, 1)


def test_hypothesis_violation_raises(db):
    with pytest.raises(HypothesisError):
        gram_matrix(352, db.get("88.a1"))
    with pytest.raises(HypothesisError):
        gram_entry(352, db.get("88.a1"), 1, 1)


def test_basis_scope_guard(db):
    with pytest.raises(BasisScopeError):
        gram_matrix(444, db.get("37.a1"))
    gram_matrix(BASIS_LEVEL_BOUND - 1, db.get("37.a1"))  # 407 = 11 * 37 is in scope


def test_rejects_non_strong_record():
    weak = CurveRecord(
        label="37.a2", conductor=37, ainvs=(0, 1, 1, -23, -50), rank=1,
        analytic_rank=1, modular_degree=4, strong_weil=False, bad_traces={37: 1},
    )
    with pytest.raises(ValueError, match="strong-Weil"):
        gram_matrix(74, weak)


def test_gram_entry_divisor_validation(db):
    curve = db.get("61.a1")
    with pytest.raises(ValueError, match="must divide"):
        gram_entry(122, curve, 1, 4)
    assert gram_entry(122, curve, 2, 2) == 6
    assert gram_entry(122, curve, 1, 2) == -2


def test_form_string_conventions():
    assert form_string(((6, -2), (-2, 6))) == "6x^2-4xy+6y^2"
    assert form_string(((1, 0), (0, 1))) == "x^2+y^2"
    assert form_string(((16, 0), (0, 16))) == "16x^2+16y^2"
    three = ((12, -8, 2), (-8, 12, -8), (2, -8, 12))
    assert form_string(three) == "12x^2+12y^2+12z^2-16xy+4xz-16yz"
    assert form_string(((5,),)) == "5x^2"
    assert form_string(((0,),)) == "0"
    five = tuple(tuple(2 if i == j else 0 for j in range(5)) for i in range(5))
    assert form_string(five) == "2x1^2+2x2^2+2x3^2+2x4^2+2x5^2"


def test_form_string_accepts_gram_matrix(db):
    gm = gram_matrix(122, db.get("61.a1"))
    assert form_string(gm) == form_string(gm.entries) == "6x^2-4xy+6y^2"
