"""Ingested auxiliary facts the classifier consumes but cannot compute.

Gonalities, the infinite-quadratic/cubic level sets, quotient-curve witnesses,
the point-count exclusion list, and conductor-level elimination facts are all
published results (Bars; Jeon; Najman-Orlic; LMFDB rank/degree data; Ogg-type
bounds applied level by level). They are shipped as data with per-record
citation strings rather than baked into code, so the evidence chains can name
their sources and a future dataset swap touches no logic.

File format: JSON lines. `{"kind": "header", "provenance": ...}` may open the
file; the other kinds are level_set, bielliptic_quotient_witness,
tetraelliptic_witness, rank0_degree4, conductor_elimination.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources

_LEVEL_SET_NAMES = {"quadratic_infinite", "cubic_infinite", "gonality4", "special_finite", "ogg_excluded"}


class AuxDataError(ValueError):
    pass


@dataclass(frozen=True)
class TetraellipticWitness:
    level: int
    curve: str  # LMFDB label of the degree-4 target (or quotient identification)
    degree: int
    construction: str
    citation: str


@dataclass(frozen=True)
class BiellipticQuotientWitness:
    level: int
    construction: str
    citation: str


@dataclass(frozen=True)
class Rank0Degree4Record:
    level: int
    targets: tuple[str, ...]
    citation: str


@dataclass(frozen=True)
class ConductorElimination:
    """A conductor-level positive-rank isogeny class that admits no degree-4 composition.

    Used at levels N whose curve database record (if any) lacks an ingested
    modular degree: the published degree data rules out a degree-4 map from
    X0(N) through this class.
    """

    level: int
    classes: int
    note: str
    citation: str


@dataclass(frozen=True)
class AuxFacts:
    provenance: str
    quadratic_infinite: frozenset[int]
    cubic_infinite: frozenset[int]
    gonality4: frozenset[int]
    special_finite: frozenset[int]
    ogg_excluded: frozenset[int]
    citations: dict[str, str]
    bielliptic_quotient_witnesses: dict[int, BiellipticQuotientWitness]
    tetraelliptic_witnesses: dict[int, TetraellipticWitness]
    rank0_degree4: dict[int, Rank0Degree4Record]
    conductor_eliminations: dict[int, ConductorElimination] = field(default_factory=dict)


def load_aux(path) -> AuxFacts:
    provenance = ""
    sets: dict[str, frozenset[int]] = {}
    citations: dict[str, str] = {}
    bi: dict[int, BiellipticQuotientWitness] = {}
    tetra: dict[int, TetraellipticWitness] = {}
    rank0: dict[int, Rank0Degree4Record] = {}
    elim: dict[int, ConductorElimination] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            where = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise AuxDataError(f"{where}: invalid JSON ({e.msg})") from e
            if not isinstance(obj, dict) or "kind" not in obj:
                raise AuxDataError(f"{where}: expected an object with a 'kind' field")
            kind = obj["kind"]
            try:
                if kind == "header":
                    provenance = str(obj["provenance"])
                elif kind == "level_set":
                    name = obj["name"]
                    if name not in _LEVEL_SET_NAMES:
                        raise AuxDataError(f"{where}: unknown level set {name!r}")
                    if name in sets:
                        raise AuxDataError(f"{where}: duplicate level set {name!r}")
                    sets[name] = frozenset(int(v) for v in obj["levels"])
                    citations[name] = str(obj["citation"])
                elif kind == "bielliptic_quotient_witness":
                    w = BiellipticQuotientWitness(int(obj["level"]), str(obj["construction"]), str(obj["citation"]))
                    bi[w.level] = w
                elif kind == "tetraelliptic_witness":
                    w = TetraellipticWitness(
                        int(obj["level"]), str(obj["curve"]), int(obj["degree"]),
                        str(obj["construction"]), str(obj["citation"]),
                    )
                    if w.degree != 4:
                        raise AuxDataError(f"{where}: tetraelliptic witness must have degree 4, got {w.degree}")
                    if w.level in tetra:
                        raise AuxDataError(f"{where}: duplicate tetraelliptic witness for level {w.level}")
                    tetra[w.level] = w
                elif kind == "rank0_degree4":
                    r = Rank0Degree4Record(int(obj["level"]), tuple(str(t) for t in obj["targets"]), str(obj["citation"]))
                    rank0[r.level] = r
                elif kind == "conductor_elimination":
                    c = ConductorElimination(int(obj["level"]), int(obj["classes"]), str(obj["note"]), str(obj["citation"]))
                    if c.level in elim:
                        raise AuxDataError(f"{where}: duplicate conductor elimination for level {c.level}")
                    elim[c.level] = c
                else:
                    raise AuxDataError(f"{where}: unknown kind {kind!r}")
            except (KeyError, TypeError, ValueError) as e:
                if isinstance(e, AuxDataError):
                    raise
                raise AuxDataError(f"{where}: malformed {kind} record ({e})") from e

    missing = _LEVEL_SET_NAMES - set(sets)
    if missing:
        raise AuxDataError(f"{path}: missing level sets {sorted(missing)}")
    facts = AuxFacts(
        provenance=provenance,
        quadratic_infinite=sets["quadratic_infinite"],
        cubic_infinite=sets["cubic_infinite"],
        gonality4=sets["gonality4"],
        special_finite=sets["special_finite"],
        ogg_excluded=sets["ogg_excluded"],
        citations=citations,
        bielliptic_quotient_witnesses=bi,
        tetraelliptic_witnesses=tetra,
        rank0_degree4=rank0,
        conductor_eliminations=elim,
    )
    # No containment between the quadratic and cubic sets: a level can have
    # infinitely many cubic points but only finitely many quadratic ones (34).
    return facts


def default_aux_path() -> str:
    env = os.environ.get("X0_AUX_DB")
    if env:
        return env
    return str(resources.files("x0quartic").joinpath("data", "aux.jsonl"))


def load_default_aux() -> AuxFacts:
    return load_aux(default_aux_path())
