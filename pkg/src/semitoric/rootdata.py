"""Finite-type root data, weights in fundamental coordinates, and Weyl groups.

Conventions: Bourbaki numbering throughout; ``cartan[i][j]`` is the pairing of
the j-th simple root against the i-th simple coroot.  A weight is a plain
tuple of integers ``(coords[i] = <lambda, h_{i+1}>)``.  Weyl group elements
carry their lexicographically minimal reduced word together with the integer
matrix of their action on fundamental-weight coordinates; equality of
elements is equality of action matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

from . import linalg

Weight = tuple[int, ...]

_SERIES = ("A", "B", "C", "D", "E", "F", "G")

_DEFAULT_CAP = 50_000


class RootDatumError(ValueError):
    pass


@dataclass(frozen=True)
class RootDatum:
    series: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizers: tuple[int, ...]

    def pairing(self, i: int, j: int) -> int:
        """Cartan integer c_{i,j} (1-based indices)."""
        return self.cartan[i - 1][j - 1]

    def simple_root(self, i: int) -> Weight:
        """Fundamental coordinates of the i-th simple root (column i of the Cartan matrix)."""
        return tuple(self.cartan[j][i - 1] for j in range(self.rank))

    def to_json(self) -> dict:
        return {"series": self.series, "rank": self.rank,
                "cartan": [list(r) for r in self.cartan]}


def _cartan_matrix(series: str, rank: int) -> list[list[int]]:
    n = rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def chain(pairs):
        for i, j in pairs:
            c[i][j] = -1
            c[j][i] = -1

    if series == "A":
        chain((i, i + 1) for i in range(n - 1))
    elif series == "B":
        chain((i, i + 1) for i in range(n - 1))
        c[n - 1][n - 2] = -2  # alpha_n short
    elif series == "C":
        chain((i, i + 1) for i in range(n - 1))
        c[n - 2][n - 1] = -2  # alpha_n long
    elif series == "D":
        chain((i, i + 1) for i in range(n - 3))
        chain([(n - 3, n - 2), (n - 3, n - 1)])
    elif series == "E":
        chain([(0, 2), (2, 3), (3, 4), (4, 5)])
        chain((i, i + 1) for i in range(5, n - 1))
        chain([(1, 3)])
    elif series == "F":
        chain([(0, 1), (1, 2), (2, 3)])
        c[2][1] = -2  # alpha_3, alpha_4 short
    elif series == "G":
        c[0][1] = -3
        c[1][0] = -1  # alpha_1 short
    return c


def _symmetrizers(cartan: list[list[int]]) -> list[int]:
    """Positive integers d with d_i c_{i,j} = d_j c_{j,i}, normalized to min 1."""
    n = len(cartan)
    d = [Fraction(0)] * n
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if cartan[i][j] != 0 and d[i] != 0 and d[j] == 0:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    changed = True
    if any(x == 0 for x in d):
        raise RootDatumError("Cartan matrix is not indecomposably connected")
    lcm = 1
    for x in d:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in d]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def _validate_datum(datum: RootDatum) -> None:
    n = datum.rank
    c = datum.cartan
    d = datum.symmetrizers
    for i in range(n):
        if c[i][i] != 2:
            raise RootDatumError("diagonal Cartan entries must equal 2")
        for j in range(n):
            if i != j and c[i][j] > 0:
                raise RootDatumError("off-diagonal Cartan entries must be <= 0")
            if (c[i][j] == 0) != (c[j][i] == 0):
                raise RootDatumError("Cartan zero pattern must be symmetric")
            if d[i] * c[i][j] != d[j] * c[j][i]:
                raise RootDatumError("symmetrizer condition failed")
    # positive definiteness of (d_i c_{i,j}) via leading principal minors
    sym = [[d[i] * c[i][j] for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        minor = linalg.det([row[:k] for row in sym[:k]])
        if minor <= 0:
            raise RootDatumError("symmetrized Cartan matrix is not positive definite")


def build_root_datum(series: str, rank: int) -> RootDatum:
    """Standard root datum for a finite-type pair, Bourbaki numbering."""
    if series not in _SERIES:
        raise RootDatumError(f"unknown series {series!r}; expected one of {_SERIES}")
    min_rank = {"A": 1, "B": 2, "C": 3, "D": 4, "E": 6, "F": 4, "G": 2}[series]
    max_rank = {"E": 8, "F": 4, "G": 2}.get(series)
    if rank < min_rank or (max_rank is not None and rank > max_rank):
        raise RootDatumError(f"{series}_{rank} is not a valid finite-type pair")
    cartan = _cartan_matrix(series, rank)
    datum = RootDatum(series, rank,
                      tuple(tuple(r) for r in cartan),
                      tuple(_symmetrizers(cartan)))
    _validate_datum(datum)
    return datum


def is_dominant(weight: Weight) -> bool:
    return all(x >= 0 for x in weight)


def is_regular_dominant(weight: Weight) -> bool:
    return all(x > 0 for x in weight)


def reflect_weight(datum: RootDatum, i: int, weight: Weight) -> Weight:
    """Simple reflection s_i on fundamental coordinates."""
    if not 1 <= i <= datum.rank:
        raise RootDatumError(f"reflection index {i} out of range 1..{datum.rank}")
    li = weight[i - 1]
    alpha = datum.simple_root(i)
    return tuple(x - li * a for x, a in zip(weight, alpha))


def add_weights(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def scale_weight(k: int, a: Weight) -> Weight:
    return tuple(k * x for x in a)


@lru_cache(maxsize=None)
def weight_form_matrix(datum: RootDatum) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix F of the Weyl-invariant form on fundamental coordinates: (x, y) = x F y."""
    n = datum.rank
    cinv = linalg.inverse(datum.cartan)
    return tuple(tuple(datum.symmetrizers[i] * cinv[i][j] for j in range(n))
                 for i in range(n))


def weight_form(datum: RootDatum, a, b) -> Fraction:
    f = weight_form_matrix(datum)
    return linalg.dot(a, linalg.mat_vec(f, b))


@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.action == other.action

    def __hash__(self) -> int:
        return hash(self.action)

    def apply(self, weight: Weight) -> Weight:
        return tuple(linalg.mat_vec(self.action, weight))

    def to_json(self) -> dict:
        return {"word": list(self.word)}


def _reflection_matrix(datum: RootDatum, i: int) -> tuple[tuple[int, ...], ...]:
    n = datum.rank
    return tuple(tuple((1 if j == k else 0) - (datum.cartan[j][i - 1] if k == i - 1 else 0)
                       for k in range(n))
                 for j in range(n))


def weyl_group_order(series: str, rank: int) -> int:
    n = rank
    if series == "A":
        return factorial(n + 1)
    if series in ("B", "C"):
        return 2 ** n * factorial(n)
    if series == "D":
        return 2 ** (n - 1) * factorial(n)
    if series == "E":
        return {6: 51_840, 7: 2_903_040, 8: 696_729_600}[n]
    if series == "F":
        return 1152
    return 12  # G_2


class WeylGroup:
    """Fully enumerated Weyl group with canonical words, covers and Bruhat order."""

    def __init__(self, datum: RootDatum, cap: int = _DEFAULT_CAP):
        order = weyl_group_order(datum.series, datum.rank)
        if order > cap:
            raise RootDatumError(
                f"Weyl group of {datum.series}_{datum.rank} has order {order} "
                f"exceeding the enumeration cap {cap}")
        self.datum = datum
        self._gens = [_reflection_matrix(datum, i) for i in range(1, datum.rank + 1)]
        self._enumerate()
        self._covers: dict[WeylElement, set[WeylElement]] | None = None
        self._downsets: dict[WeylElement, frozenset[WeylElement]] | None = None
        self._reduced_words_cache: dict[tuple[tuple[int, ...], ...], list] = {}

    def _enumerate(self) -> None:
        n = self.datum.rank
        ident = linalg.identity(n)
        words: dict[tuple, tuple[int, ...]] = {ident: ()}
        frontier = [ident]
        while frontier:
            nxt: dict[tuple, tuple[int, ...]] = {}
            for act in frontier:
                w = words[act]
                for i in range(1, n + 1):
                    new_act = linalg.mat_mul(act, self._gens[i - 1])
                    if new_act in words:
                        continue
                    cand = w + (i,)
                    prev = nxt.get(new_act)
                    if prev is None or cand < prev:
                        nxt[new_act] = cand
            words.update(nxt)
            frontier = list(nxt)
        elements = [WeylElement(word, act) for act, word in words.items()]
        elements.sort(key=lambda e: (e.length, e.word))
        self.elements: list[WeylElement] = elements
        self._by_action = {e.action: e for e in elements}
        self.identity = elements[0]
        self.longest = elements[-1]

    def __len__(self) -> int:
        return len(self.elements)

    def element_from_word(self, word) -> WeylElement:
        act = linalg.identity(self.datum.rank)
        for i in word:
            if not 1 <= i <= self.datum.rank:
                raise RootDatumError(f"word letter {i} out of range 1..{self.datum.rank}")
            act = linalg.mat_mul(act, self._gens[i - 1])
        return self._by_action[act]

    def simple(self, i: int) -> WeylElement:
        return self.element_from_word((i,))

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self._by_action[linalg.mat_mul(a.action, b.action)]

    def inverse(self, a: WeylElement) -> WeylElement:
        return self.element_from_word(tuple(reversed(a.word)))

    def is_reduced(self, word) -> bool:
        return self.element_from_word(word).length == len(word)

    @property
    def reflections(self) -> frozenset[WeylElement]:
        refl = set()
        for u in self.elements:
            uinv = self.inverse(u)
            for i in range(1, self.datum.rank + 1):
                refl.add(self.multiply(self.multiply(u, self.simple(i)), uinv))
        return frozenset(refl)

    def covers(self) -> dict[WeylElement, set[WeylElement]]:
        """Map w -> set of v covered by w (length drop 1, w v^{-1} a reflection)."""
        if self._covers is None:
            refl = self.reflections
            by_len: dict[int, list[WeylElement]] = {}
            for e in self.elements:
                by_len.setdefault(e.length, []).append(e)
            cov: dict[WeylElement, set[WeylElement]] = {e: set() for e in self.elements}
            for ell, ws in by_len.items():
                vs = by_len.get(ell - 1, [])
                for w in ws:
                    for v in vs:
                        if self.multiply(w, self.inverse(v)) in refl:
                            cov[w].add(v)
            self._covers = cov
        return self._covers

    def bruhat_leq(self, v: WeylElement, w: WeylElement) -> bool:
        if self._downsets is None:
            cov = self.covers()
            down: dict[WeylElement, frozenset[WeylElement]] = {}
            for w2 in self.elements:  # elements are sorted by length
                acc = {w2}
                for v2 in cov[w2]:
                    acc |= down[v2]
                down[w2] = frozenset(acc)
            self._downsets = down
        return v in self._downsets[w]

    def reduced_words(self, w: WeylElement) -> list[tuple[int, ...]]:
        """All reduced words of w (sorted), by recursion over right descents."""
        cached = self._reduced_words_cache.get(w.action)
        if cached is not None:
            return cached
        if w.length == 0:
            result = [()]
        else:
            result = []
            for i in range(1, self.datum.rank + 1):
                u = self.multiply(w, self.simple(i))
                if u.length == w.length - 1:
                    result.extend(r + (i,) for r in self.reduced_words(u))
            result.sort()
        self._reduced_words_cache[w.action] = result
        return result


@lru_cache(maxsize=None)
def weyl_group(datum: RootDatum, cap: int = _DEFAULT_CAP) -> WeylGroup:
    return WeylGroup(datum, cap)


def weyl_from_word(datum: RootDatum, word) -> WeylElement:
    """Canonical element of a (not necessarily reduced) word."""
    return weyl_group(datum).element_from_word(tuple(word))


def enumerate_group(datum: RootDatum, cap: int = _DEFAULT_CAP) -> list[WeylElement]:
    return list(weyl_group(datum, cap).elements)


def bruhat_leq(datum: RootDatum, v: WeylElement, w: WeylElement) -> bool:
    return weyl_group(datum).bruhat_leq(v, w)


@lru_cache(maxsize=None)
def positive_roots(datum: RootDatum) -> tuple[tuple[Weight, tuple[int, ...]], ...]:
    """All positive roots as (fundamental coords, simple-root coords) pairs.

    Computed as the inversion set beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}
    along the canonical reduced word of the longest element.
    """
    group = weyl_group(datum)
    word = group.longest.word
    roots = []
    for k in range(len(word)):
        i = word[k]
        fund = datum.simple_root(i)
        root = tuple(1 if j == i - 1 else 0 for j in range(datum.rank))
        for p in range(k - 1, -1, -1):
            j = word[p]
            coef = fund[j - 1]
            fund = reflect_weight(datum, j, fund)
            root = tuple(r - (coef if idx == j - 1 else 0) for idx, r in enumerate(root))
        roots.append((fund, root))
    assert len(set(roots)) == len(word)
    return tuple(roots)


def root_pairing(datum: RootDatum, weight, root_coords) -> Fraction:
    """(weight, beta) for a root with given simple-root coordinates; integer-valued
    on integral weights up to the symmetrizer scale."""
    return sum(Fraction(r) * datum.symmetrizers[j] * weight[j]
               for j, r in enumerate(root_coords))


def datum_from_json(payload: dict) -> RootDatum:
    return build_root_datum(payload["series"], int(payload["rank"]))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
