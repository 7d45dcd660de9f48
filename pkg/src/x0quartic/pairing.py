"""The integer Gram matrix of the degree pairing on the degeneracy-map basis.

For a strong Weil curve E of conductor M | N with modular parametrization
f: X0(M) -> E of degree deg f, the maps f o iota_d (one per divisor d of N/M)
form a basis of Hom_Q(J0(N), E) for N < 408, and

    <f o iota_d1, f o iota_d2> = a * psi(N)/psi(M * lcm/gcd) * deg f

with `a` the Moebius-summed coefficient from hecke.moebius_coefficient. The
formula requires N/M squarefree or coprime to M; the psi-ratio is the degree
of a degeneracy map and must come out integral, anything else is a hard bug.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .curvedb import CurveRecord
from .hecke import EigenvalueContext, moebius_coefficient
from .numthy import divisors, moebius, psi

# The degeneracy-basis claim is verified only below this level; Gram matrices
# above it would assert structure nobody has checked.
BASIS_LEVEL_BOUND = 408


class HypothesisError(ValueError):
    pass


class BasisScopeError(ValueError):
    pass


@dataclass(frozen=True)
class GramMatrix:
    level: int
    curve_label: str
    conductor: int
    modular_degree: int
    basis: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> str:
        return json.dumps(
            {
                "level": self.level,
                "curve": self.curve_label,
                "basis": list(self.basis),
                "matrix": [list(row) for row in self.entries],
            }
        )


def hypothesis_check(level: int, conductor: int) -> bool:
    """True iff N/M is squarefree or coprime to M — the pairing formula's hypothesis."""
    if level < 1 or conductor < 1 or level % conductor != 0:
        raise ValueError(f"conductor {conductor} must divide level {level}")
    q = level // conductor
    squarefree = moebius(q) != 0 if q > 1 else True
    return squarefree or gcd(q, conductor) == 1


def gram_entry(level: int, curve: CurveRecord, d1: int, d2: int, ctx: EigenvalueContext | None = None) -> int:
    """One pairing value <f o iota_d1, f o iota_d2>, an exact integer."""
    m = curve.conductor
    if not hypothesis_check(level, m):
        raise HypothesisError(
            f"level {level}, conductor {m}: {level // m} is neither squarefree nor coprime to {m}"
        )
    q = level // m
    if q % d1 != 0 or q % d2 != 0:
        raise ValueError(f"{d1}, {d2} must divide N/M = {q}")
    if ctx is None:
        ctx = EigenvalueContext(curve)
    g = gcd(d1, d2)
    lcm = d1 * d2 // g
    a = moebius_coefficient(ctx, d1, d2)
    num, den = psi(level), psi(m * lcm // g)
    if num % den != 0:
        raise ArithmeticError(f"psi ratio {num}/{den} is not integral at level {level}, conductor {m}")
    return a * (num // den) * curve.modular_degree


def gram_matrix(level: int, curve: CurveRecord) -> GramMatrix:
    """The full symmetric Gram matrix on the ascending-divisor basis of N/M."""
    if level >= BASIS_LEVEL_BOUND:
        raise BasisScopeError(
            f"level {level} >= {BASIS_LEVEL_BOUND}: the degeneracy-map basis is only known below that bound"
        )
    if not curve.strong_weil:
        raise ValueError(f"{curve.label} is not a strong-Weil record; pair against its strong-Weil representative")
    basis = tuple(divisors(level // curve.conductor))
    ctx = EigenvalueContext(curve)
    n = len(basis)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = gram_entry(level, curve, basis[i], basis[j], ctx)
            rows[i][j] = rows[j][i] = v
    return GramMatrix(
        level=level,
        curve_label=curve.label,
        conductor=curve.conductor,
        modular_degree=curve.modular_degree,
        basis=basis,
        entries=tuple(tuple(r) for r in rows),
    )


_VARS = "xyzw"


def _monomial(i: int, j: int, n: int) -> str:
    names = _VARS if n <= len(_VARS) else [f"x{k+1}" for k in range(n)]
    if i == j:
        return f"{names[i]}^2"
    return f"{names[i]}{names[j]}"


def form_string(gm: GramMatrix | tuple[tuple[int, ...], ...]) -> str:
    """Render x^T G x as a polynomial string, e.g. [[6,-2],[-2,6]] -> "6x^2-4xy+6y^2".

    Cross coefficients are twice the matrix entries. For binary forms the terms
    interleave (x^2, xy, y^2); from three variables on, all squares come first,
    then the cross terms (1,2), (1,3), (2,3), ... Zero terms are omitted.
    """
    entries = gm.entries if isinstance(gm, GramMatrix) else gm
    n = len(entries)
    terms: list[tuple[int, str]] = []
    if n == 2:
        order = [(0, 0), (0, 1), (1, 1)]
    else:
        order = [(i, i) for i in range(n)]
        order += [(i, j) for i in range(n) for j in range(i + 1, n)]
    for i, j in order:
        c = entries[i][j] if i == j else 2 * entries[i][j]
        if c == 0:
            continue
        terms.append((c, _monomial(i, j, n)))
    if not terms:
        return "0"
    parts = []
    for k, (c, mon) in enumerate(terms):
        mag = abs(c)
        coeff = "" if mag == 1 else str(mag)
        if k == 0:
            sign = "-" if c < 0 else ""
        else:
            sign = "-" if c < 0 else "+"
        parts.append(f"{sign}{coeff}{mon}")
    return "".join(parts)
