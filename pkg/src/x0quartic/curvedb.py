"""Ingestion and queries for the bundled elliptic-curve dataset.

One JSON object per line. An optional first line holding exactly
{"source_note": "..."} carries free-text provenance for the whole file; every
other line is a record with exactly these keys:

  {"label": "61.a1", "conductor": 61, "ainvs": [a1,a2,a3,a4,a6], "rank": 1,
   "analytic_rank": 1, "modular_degree": 2, "strong_weil": true,
   "bad_traces": {"61": 1}}

Unknown keys are rejected so typos surface at load time. Ranks and modular
degrees are ingested facts (they require descent / modular-symbol
computations that are deliberately out of scope here); traces at good primes
are recomputed from the model elsewhere and cross-checked against these
records in the test suite.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from importlib import resources

from .numthy import divisors as _divisors

_RECORD_KEYS = {"label", "conductor", "ainvs", "rank", "analytic_rank", "modular_degree", "strong_weil", "bad_traces"}
_LABEL_RE = re.compile(r"^(\d+)\.([a-z]+)(\d+)$")


class DatabaseError(ValueError):
    pass


def b_invariants(ainvs) -> tuple[int, int, int, int]:
    a1, a2, a3, a4, a6 = ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def c_invariants(ainvs) -> tuple[int, int]:
    b2, b4, b6, _ = b_invariants(ainvs)
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
    return c4, c6


def discriminant(ainvs) -> int:
    b2, b4, b6, b8 = b_invariants(ainvs)
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def has_rational_two_torsion(ainvs) -> bool:
    """True iff the curve has a rational point of order 2.

    Equivalent to the existence of a rational 2-isogeny: the 2-division
    polynomial 4x^3 + b2 x^2 + 2 b4 x + b6 has a rational root.  With u = 4x
    it becomes the monic integer cubic u^3 + b2 u^2 + 8 b4 u + 16 b6, so any
    rational root is an integer dividing the constant term.
    """
    b2, b4, b6, _ = b_invariants(ainvs)
    const = 16 * b6

    def f(u: int) -> int:
        return u * u * u + b2 * u * u + 8 * b4 * u + const

    if const == 0:
        return True
    return any(f(s * d) == 0 for d in _divisors(abs(const)) for s in (1, -1))


@dataclass(frozen=True)
class CurveRecord:
    label: str
    conductor: int
    ainvs: tuple[int, int, int, int, int]
    rank: int
    analytic_rank: int
    modular_degree: int
    strong_weil: bool
    bad_traces: dict[int, int] = field(default_factory=dict)

    @property
    def isogeny_class(self) -> str:
        m = _LABEL_RE.match(self.label)
        assert m is not None
        return f"{m.group(1)}.{m.group(2)}"

    def validate(self) -> None:
        m = _LABEL_RE.match(self.label)
        if m is None:
            raise DatabaseError(f"record {self.label!r}: label is not of the form '<conductor>.<class><number>'")
        if int(m.group(1)) != self.conductor:
            raise DatabaseError(f"record {self.label!r}: label conductor does not match conductor {self.conductor}")
        if self.conductor < 1:
            raise DatabaseError(f"record {self.label!r}: conductor must be positive")
        if len(self.ainvs) != 5:
            raise DatabaseError(f"record {self.label!r}: ainvs must have exactly five entries")
        if discriminant(self.ainvs) == 0:
            raise DatabaseError(f"record {self.label!r}: singular Weierstrass model (discriminant 0)")
        if self.rank < 0 or self.analytic_rank < 0:
            raise DatabaseError(f"record {self.label!r}: ranks must be nonnegative")
        if self.modular_degree < 1:
            raise DatabaseError(f"record {self.label!r}: modular degree must be positive")
        for p, t in self.bad_traces.items():
            if self.conductor % p != 0:
                raise DatabaseError(f"record {self.label!r}: bad-trace prime {p} does not divide conductor")
            if t not in (-1, 0, 1):
                raise DatabaseError(f"record {self.label!r}: bad trace at {p} must be in {{-1,0,1}}")
            if self.conductor % (p * p) == 0 and t != 0:
                raise DatabaseError(f"record {self.label!r}: additive prime {p} must have trace 0")

    def to_json(self) -> str:
        return json.dumps(
            {
                "label": self.label,
                "conductor": self.conductor,
                "ainvs": list(self.ainvs),
                "rank": self.rank,
                "analytic_rank": self.analytic_rank,
                "modular_degree": self.modular_degree,
                "strong_weil": self.strong_weil,
                "bad_traces": {str(p): t for p, t in sorted(self.bad_traces.items())},
            },
            sort_keys=False,
        )


@dataclass(frozen=True)
class CurveDatabase:
    records: tuple[CurveRecord, ...]
    source_note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "_by_label", {r.label: r for r in self.records})

    def get(self, label: str) -> CurveRecord | None:
        return self._by_label.get(label)

    def __len__(self) -> int:
        return len(self.records)


def _record_from_obj(obj: dict, where: str) -> CurveRecord:
    keys = set(obj)
    if keys != _RECORD_KEYS:
        extra = sorted(keys - _RECORD_KEYS)
        missing = sorted(_RECORD_KEYS - keys)
        parts = []
        if extra:
            parts.append(f"unknown keys {extra}")
        if missing:
            parts.append(f"missing keys {missing}")
        raise DatabaseError(f"{where}: {', '.join(parts)}")
    try:
        bad = {int(p): int(t) for p, t in obj["bad_traces"].items()}
        rec = CurveRecord(
            label=str(obj["label"]),
            conductor=int(obj["conductor"]),
            ainvs=tuple(int(v) for v in obj["ainvs"]),
            rank=int(obj["rank"]),
            analytic_rank=int(obj["analytic_rank"]),
            modular_degree=int(obj["modular_degree"]),
            strong_weil=bool(obj["strong_weil"]),
            bad_traces=bad,
        )
    except (TypeError, ValueError, AttributeError) as e:
        raise DatabaseError(f"{where}: malformed field ({e})") from e
    rec.validate()
    return rec


def load_database(path) -> CurveDatabase:
    """Parse and invariant-check a JSONL curve file; errors carry line numbers."""
    records: list[CurveRecord] = []
    source_note = ""
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise DatabaseError(f"{path}:{lineno}: invalid JSON ({e.msg})") from e
            if not isinstance(obj, dict):
                raise DatabaseError(f"{path}:{lineno}: expected an object")
            if set(obj) == {"source_note"}:
                if records or source_note:
                    raise DatabaseError(f"{path}:{lineno}: source_note header must be the first line")
                source_note = str(obj["source_note"])
                continue
            rec = _record_from_obj(obj, f"{path}:{lineno}")
            if rec.label in seen:
                raise DatabaseError(f"{path}:{lineno}: duplicate label {rec.label!r}")
            seen.add(rec.label)
            records.append(rec)
    db = CurveDatabase(records=tuple(records), source_note=source_note)
    _check_class_invariants(db)
    return db


def _check_class_invariants(db: CurveDatabase) -> None:
    by_class: dict[str, list[CurveRecord]] = {}
    for r in db.records:
        by_class.setdefault(r.isogeny_class, []).append(r)
    for cls, members in by_class.items():
        n_strong = sum(1 for r in members if r.strong_weil)
        if n_strong != 1:
            raise DatabaseError(f"isogeny class {cls}: expected exactly one strong-Weil record, found {n_strong}")


def positive_rank_factors(db: CurveDatabase, level: int) -> list[CurveRecord]:
    """Strong-Weil records of positive rank whose conductor divides `level`, ascending by conductor."""
    if level < 1:
        raise ValueError("level must be >= 1")
    out = [r for r in db.records if r.strong_weil and r.rank >= 1 and level % r.conductor == 0]
    out.sort(key=lambda r: (r.conductor, r.label))
    return out


def strong_weil(db: CurveDatabase, label: str) -> CurveRecord:
    """The strong-Weil representative of the labeled curve's isogeny class."""
    rec = db.get(label)
    if rec is None:
        raise DatabaseError(f"unknown label {label!r}")
    for r in db.records:
        if r.isogeny_class == rec.isogeny_class and r.strong_weil:
            return r
    raise AssertionError("load-time invariant guarantees a strong-Weil representative")


def default_database_path() -> str:
    env = os.environ.get("X0_CURVE_DB")
    if env:
        return env
    return str(resources.files("x0quartic").joinpath("data", "curves.jsonl"))


def load_default_database() -> CurveDatabase:
    return load_database(default_database_path())
