"""Exact decision procedures for positive-definite integer quadratic forms.

LDL^T decomposition over the rationals certifies positive definiteness, and a
Fincke-Pohst backtracking enumeration lists every nonzero integer vector of
bounded form value. All interval bounds are exact Fractions — no floating
point anywhere — and every emitted vector is re-checked in integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class NotPositiveDefinite(ValueError):
    """Raised when a symmetric matrix fails positive definiteness.

    `minor` is the size of the leading principal minor that failed.
    """

    def __init__(self, minor: int):
        self.minor = minor
        super().__init__(f"matrix is not positive definite: leading {minor}x{minor} minor is not positive")


@dataclass(frozen=True)
class PDForm:
    """A positive-definite integer Gram matrix with its exact LDL^T factorization.

    gram = L * diag(D) * L^T with L lower unitriangular; all D entries > 0.
    """

    dim: int
    gram: tuple[tuple[int, ...], ...]
    L: tuple[tuple[Fraction, ...], ...]
    D: tuple[Fraction, ...]

    def value(self, x) -> int:
        """x^T G x in pure integer arithmetic."""
        g = self.gram
        return sum(g[i][j] * x[i] * x[j] for i in range(self.dim) for j in range(self.dim))


@dataclass(frozen=True)
class EnumerationResult:
    bound: int
    vectors: tuple[tuple[int, ...], ...]
    minimum: int | None
    represents_target: tuple[int, bool, tuple[int, ...] | None] | None = None


def _as_int_matrix(gram) -> tuple[tuple[int, ...], ...]:
    rows = [tuple(int(v) for v in row) for row in gram]
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix: a 0-dimensional form has no minimum and represents nothing")
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(n):
            if rows[i][j] != rows[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i},{j})")
    return tuple(rows)


def ldl_decompose(gram) -> PDForm:
    """Exact rational LDL^T factorization; raises NotPositiveDefinite on any pivot <= 0."""
    g = _as_int_matrix(gram)
    n = len(g)
    L = [[Fraction(0)] * n for _ in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        d = Fraction(g[j][j]) - sum(D[k] * L[j][k] * L[j][k] for k in range(j))
        if d <= 0:
            raise NotPositiveDefinite(j + 1)
        D[j] = d
        L[j][j] = Fraction(1)
        for i in range(j + 1, n):
            s = Fraction(g[i][j]) - sum(D[k] * L[i][k] * L[j][k] for k in range(j))
            L[i][j] = s / d
    form = PDForm(dim=n, gram=g, L=tuple(tuple(row) for row in L), D=tuple(D))
    # paranoia: the factorization must reproduce the input exactly
    for i in range(n):
        for j in range(n):
            v = sum(D[k] * L[i][k] * L[j][k] for k in range(n))
            if v != g[i][j]:
                raise ArithmeticError(f"LDL reconstruction mismatch at ({i},{j})")
    return form


def _canonical(x: tuple[int, ...]) -> tuple[int, ...]:
    for v in x:
        if v > 0:
            return x
        if v < 0:
            return tuple(-u for u in x)
    return x


def _colex_key(x: tuple[int, ...]):
    return tuple(reversed(x))


def enumerate_up_to(form: PDForm, bound: int) -> EnumerationResult:
    """All nonzero integer vectors with x^T G x <= bound, one per +/- pair.

    Backtracking on the LDL coordinates: x^T G x = sum_j D_j (x_j + c_j)^2 with
    c_j = sum_{i>j} L[i][j] x_i, so the last coordinate is chosen outermost.
    Within each level the candidates are walked from floor(-c_j) downward until
    the exact bound predicate fails, then from floor(-c_j)+1 upward — the valid
    candidates form a contiguous interval, so this visits all of them.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    n, L, D = form.dim, form.L, form.D
    found: set[tuple[int, ...]] = set()
    x = [0] * n

    def descend(j: int, remaining: Fraction) -> None:
        # remaining = bound - sum of D_l (x_l + c_l)^2 over levels l > j
        c = sum(L[i][j] * x[i] for i in range(j + 1, n))
        start = math.floor(-c)

        def term(xj: int) -> Fraction:
            return D[j] * (xj + c) ** 2

        for step in (-1, 1):
            xj = start if step == -1 else start + 1
            while term(xj) <= remaining:
                x[j] = xj
                if j == 0:
                    v = tuple(x)
                    if any(v):
                        found.add(_canonical(v))
                else:
                    descend(j - 1, remaining - term(xj))
                xj += step
        x[j] = 0

    descend(n - 1, Fraction(bound))

    vectors = []
    for v in sorted(found, key=_colex_key):
        val = form.value(v)
        if val > bound:
            raise ArithmeticError(f"enumeration emitted {v} with value {val} > bound {bound}")
        vectors.append(v)
    mn = min((form.value(v) for v in vectors), default=None)
    return EnumerationResult(bound=bound, vectors=tuple(vectors), minimum=mn)


def represents(form: PDForm, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """Does the form attain exactly k on a nonzero integer vector? Returns (verdict, witness)."""
    if k < 1:
        raise ValueError("target must be >= 1")
    res = enumerate_up_to(form, k)
    for v in res.vectors:
        if form.value(v) == k:
            return True, v
    return False, None


def minimum(form: PDForm) -> tuple[int, tuple[int, ...]]:
    """Least nonzero value of the form and a witness attaining it.

    The minimum is at most every diagonal entry, so enumerating up to the least
    diagonal entry always finds it.
    """
    b = min(form.gram[i][i] for i in range(form.dim))
    res = enumerate_up_to(form, b)
    assert res.vectors, "a PD form attains its diagonal, enumeration cannot be empty"
    best = min(form.value(v) for v in res.vectors)
    for v in res.vectors:  # colex order makes the witness deterministic
        if form.value(v) == best:
            return best, v
    raise AssertionError("unreachable")
