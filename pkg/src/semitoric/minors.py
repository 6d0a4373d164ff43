"""Type-A generalized minors on lower-unitriangular matrices.

The simple-reflection lift is the 2x2 block [[0, -1], [1, 0]] placed at rows
and columns (i, i+1); a minor is the coefficient of the lifted u-wedge in the
image of the lifted u'-wedge, computed inside the i-th exterior power of the
defining representation.  All signs come from the explicit lift matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import cluster, linalg, rootdata
from .cluster import Seed
from .rootdata import RootDatum, WeylElement


class MinorError(ValueError):
    pass


def _require_type_a(datum: RootDatum) -> None:
    if datum.series != "A":
        raise MinorError("generalized minors are implemented for type A only")


@dataclass(frozen=True)
class UnitriangularPoint:
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        for i, row in enumerate(self.matrix):
            if len(row) != n:
                raise MinorError("matrix must be square")
            for j, x in enumerate(row):
                if j == i and x != 1:
                    raise MinorError("diagonal entries must be 1")
                if j > i and x != 0:
                    raise MinorError("entries above the diagonal must vanish")

    @property
    def size(self) -> int:
        return len(self.matrix)


def random_unitriangular(size: int, rng: random.Random) -> UnitriangularPoint:
    rows = []
    for i in range(size):
        row = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(i)]
        rows.append(tuple(row + [Fraction(1)] + [Fraction(0)] * (size - i - 1)))
    return UnitriangularPoint(tuple(rows))


@dataclass(frozen=True)
class MinorSpec:
    u: WeylElement
    u_prime: WeylElement
    index: int


def lift_matrix(datum: RootDatum, w: WeylElement) -> tuple[tuple[int, ...], ...]:
    """Signed permutation matrix lifting w, multiplied along its canonical word."""
    _require_type_a(datum)
    n = datum.rank + 1
    out = linalg.identity(n)
    for i in w.word:
        block = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        block[i - 1][i - 1] = 0
        block[i][i] = 0
        block[i - 1][i] = -1
        block[i][i - 1] = 1
        out = linalg.mat_mul(out, tuple(tuple(r) for r in block))
    return tuple(tuple(int(x) for x in row) for row in out)


def _wedge_target(datum: RootDatum, u: WeylElement, index: int
                  ) -> tuple[tuple[int, ...], int]:
    """Row set and sign of the u-lift applied to e_1 ^ ... ^ e_index."""
    lift = lift_matrix(datum, u)
    rows = []
    sign_mat = []
    for col in range(index):
        nz = [r for r in range(len(lift)) if lift[r][col] != 0]
        assert len(nz) == 1
        rows.append(nz[0])
    order = tuple(sorted(rows))
    sub = [[lift[r][c] for c in range(index)] for r in order]
    sign = linalg.det(sub)
    assert sign in (1, -1)
    return order, int(sign)


def generalized_minor(datum: RootDatum, spec: MinorSpec,
                      g: UnitriangularPoint) -> Fraction:
    """Minor of g between the extremal wedge vectors of u and u'."""
    _require_type_a(datum)
    n = datum.rank + 1
    if g.size != n:
        raise MinorError(f"point size {g.size} does not match rank {datum.rank}")
    if not 1 <= spec.index <= datum.rank:
        raise MinorError("fundamental index out of range")
    i = spec.index
    rows, sign = _wedge_target(datum, spec.u, i)
    moved = linalg.mat_mul(g.matrix, lift_matrix(datum, spec.u_prime))
    sub = [[moved[r][c] for c in range(i)] for r in rows]
    return sign * linalg.det(sub)


def position_minor_spec(datum: RootDatum, word, k: int) -> MinorSpec:
    """Minor attached to position k of a word: u is the length-k prefix and
    the fundamental index is the k-th letter."""
    group = rootdata.weyl_group(datum)
    u = group.element_from_word(tuple(word[:k]))
    return MinorSpec(u, group.identity, int(word[k - 1]))


def evaluate_seed_variables(datum: RootDatum, word,
                            g: UnitriangularPoint) -> list[Fraction]:
    return [generalized_minor(datum, position_minor_spec(datum, word, k), g)
            for k in range(1, len(word) + 1)]


@dataclass(frozen=True)
class DirectionReport:
    direction: int
    samples_ok: int
    samples_skipped: int

    @property
    def ok(self) -> bool:
        return self.samples_ok > 0


@dataclass(frozen=True)
class SeedVerification:
    word: tuple[int, ...]
    directions: tuple[DirectionReport, ...]

    @property
    def ok(self) -> bool:
        return all(d.ok for d in self.directions)

    def to_json(self) -> dict:
        return {"word": list(self.word),
                "directions": [{"direction": d.direction,
                                "samples_ok": d.samples_ok,
                                "samples_skipped": d.samples_skipped}
                               for d in self.directions]}


def verify_initial_seed(datum: RootDatum, word, samples: int = 100,
                        seed: int = 0) -> SeedVerification:
    """Check numerically that minors behave as the seed's cluster variables.

    For each unfrozen direction the exchange binomial evaluated on minors must
    agree with the symbolic once-mutated variable evaluated at the same
    minors; samples where a denominator vanishes are skipped as non-generic.
    """
    _require_type_a(datum)
    if datum.rank > 4:
        raise MinorError("seed verification is limited to rank <= 4")
    word = tuple(int(x) for x in word)
    eps = cluster.build_exchange_from_word(datum, word)
    s0 = cluster.initial_seed(eps)
    mutated: dict[int, Seed] = {k: cluster.mutate_seed(s0, k) for k in eps.unfrozen}
    rng = random.Random(seed)
    points = [random_unitriangular(datum.rank + 1, rng) for _ in range(samples)]
    evaluations = [evaluate_seed_variables(datum, word, g) for g in points]

    reports = []
    for k in eps.unfrozen:
        row = eps.row(k)
        ok = skipped = 0
        for vals in evaluations:
            try:
                plus = Fraction(1)
                minus = Fraction(1)
                for j in range(1, eps.size + 1):
                    e = row[j - 1]
                    if e > 0:
                        plus *= vals[j - 1] ** e
                    elif e < 0:
                        minus *= vals[j - 1] ** (-e)
                if vals[k - 1] == 0:
                    skipped += 1
                    continue
                direct = (plus + minus) / vals[k - 1]
                symbolic = mutated[k].variable(k).evaluate(vals)
            except ZeroDivisionError:
                skipped += 1
                continue
            if direct != symbolic:
                raise MinorError(
                    f"direction {k}: binomial of minors disagrees with the "
                    f"symbolic mutation at a generic sample")
            ok += 1
        if ok == 0:
            raise MinorError(f"direction {k}: all samples were non-generic")
        reports.append(DirectionReport(k, ok, skipped))
    return SeedVerification(word, tuple(reports))
