"""Small exact linear algebra toolkit over the rationals.

Everything downstream (Weyl actions, hulls, dominance solves, unimodular
transports) needs exact answers, so all routines here work on tuples of
``fractions.Fraction`` (or plain ints) and never touch floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def frac_vec(v: Iterable) -> Vec:
    return tuple(Fraction(x) for x in v)


def frac_mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(frac_vec(r) for r in rows)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Sequence, m: Sequence[Sequence]) -> tuple:
    n = len(m[0])
    return tuple(sum(v[i] * m[i][j] for i in range(len(m))) for j in range(n))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Row-reduce in place; returns (reduced rows, pivot column indices)."""
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows: Iterable[Sequence]) -> int:
    work = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return 0
    _, pivots = _echelon(work)
    return len(pivots)


def solve(a_rows: Sequence[Sequence], b: Sequence) -> Vec | None:
    """One exact solution of A x = b, or None if inconsistent.

    Free variables (if any) are set to zero.
    """
    m = len(a_rows)
    if m == 0:
        return tuple()
    n = len(a_rows[0])
    work = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    reduced, pivots = _echelon(work)
    npiv = len(pivots)
    for i in range(npiv, m):
        if reduced[i][n] != 0:
            return None
    if pivots and pivots[-1] == n:
        return None  # pivot in the rhs column: inconsistent
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = reduced[i][n]
    return tuple(x)


def inverse(m_rows: Sequence[Sequence]) -> Mat:
    n = len(m_rows)
    work = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
            for i, row in enumerate(m_rows)]
    reduced, pivots = _echelon(work)
    if len(pivots) != n or pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(reduced[i][n:]) for i in range(n))


def det(m_rows: Sequence[Sequence]) -> Fraction:
    n = len(m_rows)
    work = [[Fraction(x) for x in row] for row in m_rows]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            sign = -sign
        pv = work[c][c]
        result *= pv
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] / pv
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return sign * result


def nullspace(rows: Sequence[Sequence], n: int | None = None) -> list[Vec]:
    """Basis of {x : row . x = 0 for every row}."""
    rows = [list(r) for r in rows]
    if n is None:
        if not rows:
            raise ValueError("ambient dimension required for empty row set")
        n = len(rows[0])
    if not rows:
        return [tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)]
    work = [[Fraction(x) for x in row] for row in rows]
    reduced, pivots = _echelon(work)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -reduced[i][fc]
        basis.append(tuple(v))
    return basis


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (content 1)."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        return tuple(0 for _ in fr)
    denom = 1
    for x in fr:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)
