"""End-to-end decision pipeline for quartic points on X0(N).

Two questions per level N: does X0(N) admit a degree-4 rational morphism to
an elliptic curve of positive rank ("positive-rank tetraelliptic"), and does
X0(N) carry infinitely many quartic points?  Both answers are returned as
replayable proof objects: every verdict carries an evidence chain whose steps
say what was computed here (Gram matrices, exact lattice enumeration, Ogg
point-count certificates, 2-torsion tests) and what was ingested from
published data (witness quotient curves, gonality sets, modular degrees),
naming the citation in the latter case.

Unresolved is a first-class outcome: any level the bundled facts do not cover
is reported as such rather than guessed at.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

from .auxdata import AuxFacts, TetraellipticWitness, load_default_aux
from .curvedb import (
    CurveDatabase,
    CurveRecord,
    has_rational_two_torsion,
    load_default_database,
    positive_rank_factors,
)
from .numthy import LevelProfile, divisors, level_profile
from .oggfilter import OggCertificate, d_elliptic_excluded
from .pairing import BASIS_LEVEL_BOUND, GramMatrix, form_string, gram_matrix, hypothesis_check
from .qflattice import EnumerationResult, enumerate_up_to, ldl_decompose, minimum

# Every level >= this bound fails the degree-4 point-count test at some prime.
OGG_RULE_BOUND = 402

TETRA_POSITIVE = "positive_rank_tetraelliptic"
TETRA_NEGATIVE = "not_positive_rank_tetraelliptic"
UNRESOLVED = "unresolved"

INFINITE = "infinitely_many_quartic"
FINITE = "finitely_many_quartic"

MECH_GENUS0 = "genus_zero"
MECH_QUADRATIC = "quadratic_infinite"
MECH_GONALITY4 = "gonality_four"
MECH_BIELLIPTIC = "bielliptic_quotient"
MECH_TETRAELLIPTIC = "tetraelliptic"

_GENUS_RULE_THRESHOLD = 8


# ---------------------------------------------------------------------------
# Evidence steps.  Each is a frozen record with a `kind` tag and a dict form.


@dataclass(frozen=True)
class CitedWitnessStep:
    """A published degree-4 construction to a positive-rank elliptic curve."""

    witness: TetraellipticWitness
    kind: str = "cited_witness"

    def to_dict(self) -> dict:
        w = self.witness
        return {
            "kind": self.kind,
            "level": w.level,
            "curve": w.curve,
            "degree": w.degree,
            "construction": w.construction,
            "citation": w.citation,
        }


@dataclass(frozen=True)
class OggExclusionStep:
    """Point counts over F_{p^2} exceed what a degree-4 cover can carry."""

    certificate: OggCertificate
    listed: bool  # level appears in the ingested exclusion list / tail rule
    kind: str = "ogg_certificate"

    def to_dict(self) -> dict:
        c = self.certificate
        return {
            "kind": self.kind,
            "level": c.level,
            "degree": c.degree,
            "prime": c.prime,
            "lower_bound": str(c.lower_bound),
            "curve_capacity": c.curve_capacity,
            "listed": self.listed,
        }


@dataclass(frozen=True)
class GramStep:
    """The degree form on the degeneracy basis represents nothing in 1..4."""

    gram: GramMatrix
    enumeration: EnumerationResult
    minimum_degree: int
    minimum_witness: tuple[int, ...]
    kind: str = "gram_non_representation"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "gram": json.loads(self.gram.to_json()),
            "form": form_string(self.gram),
            "checked_bound": self.enumeration.bound,
            "vectors_up_to_bound": [list(v) for v in self.enumeration.vectors],
            "minimum_degree": self.minimum_degree,
            "minimum_witness": list(self.minimum_witness),
        }


@dataclass(frozen=True)
class LevelConductorStep:
    """Conductor equals level: composition degrees through the modular
    parametrization (degree d, multiplication by m, isogeny of degree k give
    d*m^2*k) never hit 4."""

    label: str
    modular_degree: int
    two_torsion: bool
    detail: str
    kind: str = "conductor_equals_level"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "modular_degree": self.modular_degree,
            "two_torsion": self.two_torsion,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class NonStrongWeilStep:
    """Extends an optimal curve's elimination to its whole isogeny class: a
    map to any isogenous curve factors through the optimal parametrization, so
    its degree is a multiple of a degree already shown to exceed 4."""

    strong_label: str
    kind: str = "non_strong_weil_divisibility"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "strong_label": self.strong_label}


@dataclass(frozen=True)
class ClassEliminationStep:
    """A positive-rank isogeny class eliminated on cited published data
    (no degree-4 composition exists through it)."""

    conductor: int
    classes: int
    note: str
    citation: str
    kind: str = "cited_class_elimination"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "conductor": self.conductor,
            "classes": self.classes,
            "note": self.note,
            "citation": self.citation,
        }


@dataclass(frozen=True)
class SpecialCaseStep:
    level: int
    rule: str
    citation: str
    kind: str = "special_case"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "level": self.level, "rule": self.rule, "citation": self.citation}


@dataclass(frozen=True)
class GenusRuleStep:
    """genus >= 8 and gonality > 4: infinitude of quartic points would force a
    degree-4 map to the line or to a positive-rank elliptic curve, and the
    tetraelliptic verdict rules the latter out."""

    genus: int
    citation: str
    threshold: int = _GENUS_RULE_THRESHOLD
    kind: str = "genus_rule"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "genus": self.genus, "threshold": self.threshold, "citation": self.citation}


@dataclass(frozen=True)
class CitedSetStep:
    """Membership of the level in a published level set."""

    set_name: str
    level: int
    citation: str
    kind: str = "cited_set_membership"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "set": self.set_name, "level": self.level, "citation": self.citation}


@dataclass(frozen=True)
class BiellipticQuotientStep:
    level: int
    construction: str
    citation: str
    kind: str = "bielliptic_quotient_witness"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "level": self.level, "construction": self.construction, "citation": self.citation}


@dataclass(frozen=True)
class RankZeroNoteStep:
    """Informational: degree-4 maps to rank-0 elliptic curves exist at this
    level; they generate only finitely many quartic points."""

    level: int
    targets: tuple[str, ...]
    citation: str
    kind: str = "rank_zero_degree4_note"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "level": self.level, "targets": list(self.targets), "citation": self.citation}


EvidenceStep = Union[
    CitedWitnessStep,
    OggExclusionStep,
    GramStep,
    LevelConductorStep,
    NonStrongWeilStep,
    ClassEliminationStep,
    SpecialCaseStep,
    GenusRuleStep,
    CitedSetStep,
    BiellipticQuotientStep,
    RankZeroNoteStep,
]


# ---------------------------------------------------------------------------
# Verdicts.


@dataclass(frozen=True)
class TetraellipticVerdict:
    level: int
    status: str  # TETRA_POSITIVE | TETRA_NEGATIVE | UNRESOLVED
    witness: Optional[TetraellipticWitness]
    evidence: tuple[EvidenceStep, ...]
    reason: str = ""

    @property
    def is_positive(self) -> bool:
        return self.status == TETRA_POSITIVE

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = CitedWitnessStep(self.witness).to_dict()
            del w["kind"]
        return {
            "level": self.level,
            "status": self.status,
            "witness": w,
            "reason": self.reason,
            "evidence": [s.to_dict() for s in self.evidence],
        }


@dataclass(frozen=True)
class Classification:
    level: int
    genus: int
    status: str  # INFINITE | FINITE | UNRESOLVED
    mechanism: Optional[str]
    evidence: tuple[EvidenceStep, ...]
    tetraelliptic: TetraellipticVerdict
    reason: str = ""

    @property
    def quartic_infinite(self) -> Optional[bool]:
        if self.status == INFINITE:
            return True
        if self.status == FINITE:
            return False
        return None

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "genus": self.genus,
            "status": self.status,
            "mechanism": self.mechanism,
            "quartic_infinite": self.quartic_infinite,
            "reason": self.reason,
            "evidence": [s.to_dict() for s in self.evidence],
            "tetraelliptic": self.tetraelliptic.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# ---------------------------------------------------------------------------
# Tetraelliptic decision.


def _degree_four_attainable(modular_degree: int, two_torsion: bool) -> bool:
    # Compositions through the parametrization have degree d*m^2*k with m >= 1
    # and k a rational-isogeny degree.  4 = d*1*1 (d=4), d*1*2 (d=2, needs a
    # rational 2-isogeny, i.e. rational 2-torsion), or d*4*1 / d*1*4 (d=1).
    if modular_degree in (1, 4):
        return True
    return modular_degree == 2 and two_torsion


def _conductor_equals_level_step(rec: CurveRecord) -> Optional[LevelConductorStep]:
    """Elimination step for a positive-rank class at conductor == level, or
    None when a degree-4 composition does exist."""
    two_tor = has_rational_two_torsion(rec.ainvs)
    if _degree_four_attainable(rec.modular_degree, two_tor):
        return None
    if rec.modular_degree == 2:
        detail = (
            "parametrization degree 2 and no rational 2-torsion: composition "
            "degrees 2*m^2*k reach 4 only via a rational 2-isogeny, which does not exist"
        )
    else:
        detail = (
            f"parametrization degree {rec.modular_degree}: no m >= 1 and "
            f"isogeny degree k give {rec.modular_degree}*m^2*k = 4"
        )
    return LevelConductorStep(rec.label, rec.modular_degree, two_tor, detail)


def _check_level(level: int) -> None:
    if not isinstance(level, int) or isinstance(level, bool):
        raise TypeError(f"level must be a positive integer, got {level!r}")
    if level < 1:
        raise ValueError(f"level must be a positive integer, got {level}")


def tetraelliptic_status(level: int, db: Optional[CurveDatabase] = None, aux: Optional[AuxFacts] = None) -> TetraellipticVerdict:
    """Decide whether X0(level) has a degree-4 map to a positive-rank elliptic curve."""
    _check_level(level)
    if db is None:
        db = load_default_database()
    if aux is None:
        aux = load_default_aux()

    witness = aux.tetraelliptic_witnesses.get(level)
    if witness is not None:
        return TetraellipticVerdict(level, TETRA_POSITIVE, witness, (CitedWitnessStep(witness),))

    listed = level in aux.ogg_excluded
    if listed or level >= OGG_RULE_BOUND:
        cert = d_elliptic_excluded(level, degree=4)
        if cert is not None:
            return TetraellipticVerdict(level, TETRA_NEGATIVE, None, (OggExclusionStep(cert, listed=listed),))
        if listed:
            # A few listed levels have point counts too small for any
            # single-prime certificate (at 202, for example, L_p(202) stays
            # below 4(p+1)^2 for every prime p).  List membership is itself
            # ingested published data, so record it as the evidence.
            step = CitedSetStep("ogg_excluded", level, aux.citations.get("ogg_excluded", ""))
            return TetraellipticVerdict(level, TETRA_NEGATIVE, None, (step,))
        # >= 402 but no certificate below the default prime bound: fall
        # through to the curve-by-curve machinery (roster bound permitting).

    if level >= BASIS_LEVEL_BOUND:
        return TetraellipticVerdict(
            level, UNRESOLVED, None, (),
            reason=(
                "no point-count certificate, and the degeneracy-map basis and "
                f"bundled curve roster only cover levels below {BASIS_LEVEL_BOUND}"
            ),
        )

    evidence: list[EvidenceStep] = []
    db_classes = positive_rank_factors(db, level)
    covered = set()
    for rec in db_classes:
        covered.add(rec.conductor)
        if rec.conductor == level:
            step = _conductor_equals_level_step(rec)
            if step is None:
                return TetraellipticVerdict(
                    level, UNRESOLVED, None, (),
                    reason=f"{rec.label} admits a degree-4 composition but no witness record is bundled",
                )
            evidence.append(step)
        else:
            if not hypothesis_check(level, rec.conductor):
                return TetraellipticVerdict(
                    level, UNRESOLVED, None, (),
                    reason=f"degeneracy basis hypothesis fails for conductor {rec.conductor} at level {level}",
                )
            gm = gram_matrix(level, rec)
            form = ldl_decompose(gm.entries)
            found = enumerate_up_to(form, 4)
            if found.vectors:
                return TetraellipticVerdict(
                    level, UNRESOLVED, None, (),
                    reason=f"a composition through {rec.label} has degree <= 4 but no witness record is bundled",
                )
            mindeg, minwit = minimum(form)
            evidence.append(GramStep(gm, found, mindeg, minwit))
            # The lattice bound is for maps to the optimal curve; isogenous
            # curves inherit it because every map to them factors through it.
            evidence.append(NonStrongWeilStep(rec.label))

    for d in divisors(level):
        if d in covered:
            continue
        elim = aux.conductor_eliminations.get(d)
        if elim is not None:
            evidence.append(ClassEliminationStep(elim.level, elim.classes, elim.note, elim.citation))

    reason = ""
    if not evidence:
        reason = "no positive-rank isogeny class at any conductor dividing the level is on record"
    return TetraellipticVerdict(level, TETRA_NEGATIVE, None, tuple(evidence), reason=reason)


# ---------------------------------------------------------------------------
# Quartic-point classification.


def classify(level: int, db: Optional[CurveDatabase] = None, aux: Optional[AuxFacts] = None) -> Classification:
    """Classify X0(level): infinitely or finitely many quartic points."""
    _check_level(level)
    if db is None:
        db = load_default_database()
    if aux is None:
        aux = load_default_aux()
    profile = level_profile(level)
    tetra = tetraelliptic_status(level, db, aux)

    if profile.genus == 0:
        ev: tuple[EvidenceStep, ...] = (
            CitedSetStep("genus_zero", level, "computed from the standard genus formula; the line has infinitely many rational points"),
        )
        return Classification(level, profile.genus, INFINITE, MECH_GENUS0, ev, tetra)
    if level in aux.quadratic_infinite:
        ev = (CitedSetStep("quadratic_infinite", level, aux.citations.get("quadratic_infinite", "")),)
        return Classification(level, profile.genus, INFINITE, MECH_QUADRATIC, ev, tetra)
    if level in aux.gonality4:
        ev = (CitedSetStep("gonality4", level, aux.citations.get("gonality4", "")),)
        return Classification(level, profile.genus, INFINITE, MECH_GONALITY4, ev, tetra)
    bi = aux.bielliptic_quotient_witnesses.get(level)
    if bi is not None:
        ev = (BiellipticQuotientStep(bi.level, bi.construction, bi.citation),)
        return Classification(level, profile.genus, INFINITE, MECH_BIELLIPTIC, ev, tetra)
    if tetra.is_positive:
        return Classification(level, profile.genus, INFINITE, MECH_TETRAELLIPTIC, tetra.evidence, tetra)

    if tetra.status == UNRESOLVED:
        return Classification(level, profile.genus, UNRESOLVED, None, tetra.evidence, tetra, reason=tetra.reason)

    extra: list[EvidenceStep] = []
    note = aux.rank0_degree4.get(level)
    if note is not None:
        extra.append(RankZeroNoteStep(note.level, note.targets, note.citation))

    if level in aux.special_finite:
        ev = (SpecialCaseStep(level, "special finite-point rule for this level", aux.citations.get("special_finite", "")), *extra, *tetra.evidence)
        return Classification(level, profile.genus, FINITE, None, ev, tetra)
    if profile.genus >= _GENUS_RULE_THRESHOLD:
        ev = (GenusRuleStep(profile.genus, aux.citations.get("gonality4", "")), *extra, *tetra.evidence)
        return Classification(level, profile.genus, FINITE, None, ev, tetra)

    return Classification(
        level, profile.genus, UNRESOLVED, None, tuple(tetra.evidence), tetra,
        reason=f"genus {profile.genus} is below the finiteness rule threshold and no special rule covers this level",
    )


# ---------------------------------------------------------------------------
# Scanning.


@dataclass(frozen=True)
class ScanReport:
    start: int
    stop: int  # inclusive
    results: tuple[Classification, ...]

    @property
    def infinite_levels(self) -> tuple[int, ...]:
        return tuple(c.level for c in self.results if c.status == INFINITE)

    @property
    def finite_levels(self) -> tuple[int, ...]:
        return tuple(c.level for c in self.results if c.status == FINITE)

    @property
    def unresolved_levels(self) -> tuple[int, ...]:
        return tuple(c.level for c in self.results if c.status == UNRESOLVED)

    @property
    def tetraelliptic_levels(self) -> tuple[int, ...]:
        return tuple(c.level for c in self.results if c.tetraelliptic.is_positive)

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "stop": self.stop,
            "summary": {
                "infinitely_many_quartic": list(self.infinite_levels),
                "finitely_many_quartic": list(self.finite_levels),
                "unresolved": list(self.unresolved_levels),
                "positive_rank_tetraelliptic": list(self.tetraelliptic_levels),
            },
            "levels": [c.to_dict() for c in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _classify_one(args) -> Classification:
    level, db, aux = args
    return classify(level, db, aux)


def scan(
    start: int,
    stop: int,
    db: Optional[CurveDatabase] = None,
    aux: Optional[AuxFacts] = None,
    jobs: Optional[int] = None,
) -> ScanReport:
    """Classify every level in [start, stop] (inclusive bounds)."""
    if not (isinstance(start, int) and isinstance(stop, int)) or isinstance(start, bool) or isinstance(stop, bool):
        raise TypeError("scan bounds must be integers")
    if start < 1 or stop < start:
        raise ValueError(f"invalid scan range [{start}, {stop}]")
    if db is None:
        db = load_default_database()
    if aux is None:
        aux = load_default_aux()
    levels = range(start, stop + 1)
    if jobs is not None and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_classify_one, [(n, db, aux) for n in levels], chunksize=16))
        results.sort(key=lambda c: c.level)
    else:
        results = [classify(n, db, aux) for n in levels]
    return ScanReport(start, stop, tuple(results))
