"""Crystal combinatorics on integer sequences attached to a reduced word.

A reduced word i = (i_1, ..., i_N) for the longest Weyl group element is
extended to an infinite color sequence j with j_k = i_{N-k+1} for k <= N.
Sequences a = (a_1, ..., a_N) (position 1 is the rightmost coordinate of the
usual display) carry raising/lowering operators defined through

    sigma_k(a)   = a_k + sum_{l > k} c_{j_k, j_l} a_l,
    sigma^i(a)   = max of sigma_l over positions of color i,
    raise at max argmax / lower at min argmax.

The highest-weight crystal for a dominant weight lambda is generated from the
zero sequence with the normality rule "lower in color i iff phi_i > 0", where
eps_i = sigma^i and wt = lambda - sum a_k alpha_{j_k}.  Everything is checked
downstream against an independent Freudenthal character oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg, rootdata
from .rootdata import RootDatum, Weight, WeylElement

ZSeq = tuple[int, ...]

_CRYSTAL_CAP = 2_000_000

EXTENSION_POLICIES = ("cyclic", "cyclic-reverse")


class CrystalError(ValueError):
    pass


class PositionOverflowError(RuntimeError):
    """A lowering step tried to touch a position beyond N.

    This cannot happen on sequences generated from the zero sequence; seeing it
    means the caller passed a sequence outside the embedded crystal image.
    """


@dataclass(frozen=True)
class WordContext:
    datum: RootDatum
    word: tuple[int, ...]
    extension: str = "cyclic"

    @property
    def n_positions(self) -> int:
        return len(self.word)

    def color(self, k: int) -> int:
        """Color j_k of position k >= 1; beyond N the extension policy cycles
        through all colors with no immediate repeats."""
        N = len(self.word)
        if k <= N:
            return self.word[N - k]
        n = self.datum.rank
        if n == 1:
            return 1
        prev = self.color(N) if k == N + 1 else None
        # iterate the cyclic successor/predecessor from the color at position N
        step = 1 if self.extension == "cyclic" else -1
        c = self.word[0]
        for _ in range(k - N):
            c = (c - 1 + step) % n + 1
        return c

    def colors_up_to(self, k: int) -> tuple[int, ...]:
        return tuple(self.color(p) for p in range(1, k + 1))


def word_context(datum: RootDatum, word, extension: str = "cyclic") -> WordContext:
    word = tuple(int(x) for x in word)
    group = rootdata.weyl_group(datum)
    if extension not in EXTENSION_POLICIES:
        raise CrystalError(f"unknown extension policy {extension!r}")
    elem = group.element_from_word(word)
    if elem != group.longest or len(word) != group.longest.length:
        raise CrystalError(f"word {word} is not a reduced word for the longest element")
    ctx = WordContext(datum, word, extension)
    if datum.rank > 1:
        for k in range(1, 3 * len(word)):
            assert ctx.color(k) != ctx.color(k + 1)
    return ctx


def _sigmas(ctx: WordContext, a: ZSeq) -> list[int]:
    """sigma_k for k = 1..N (positions beyond N contribute nothing)."""
    N = ctx.n_positions
    colors = [ctx.color(k) for k in range(1, N + 1)]
    c = ctx.datum.cartan
    out = []
    for k in range(1, N + 1):
        jk = colors[k - 1]
        s = a[k - 1]
        for ell in range(k + 1, N + 1):
            s += c[jk - 1][colors[ell - 1] - 1] * a[ell - 1]
        out.append(s)
    return out


def sigma_color(ctx: WordContext, a: ZSeq, i: int) -> int:
    """sigma^(i): max of sigma over color-i positions; positions beyond N give 0."""
    sig = _sigmas(ctx, a)
    best = 0
    for k in range(1, ctx.n_positions + 1):
        if ctx.color(k) == i and sig[k - 1] > best:
            best = sig[k - 1]
    return best


def zinf_apply(ctx: WordContext, a: ZSeq, i: int, direction: str) -> ZSeq | None:
    """Raising/lowering operator of color i on a sequence supported in 1..N.

    ``direction`` is "raise" or "lower".  Raising returns None at the top of a
    string (sigma^(i) = 0); lowering always succeeds on crystal-image
    sequences and raises PositionOverflowError otherwise.
    """
    if not 1 <= i <= ctx.datum.rank:
        raise CrystalError(f"color {i} out of range 1..{ctx.datum.rank}")
    N = ctx.n_positions
    sig = _sigmas(ctx, a)
    positions = [k for k in range(1, N + 1) if ctx.color(k) == i]
    best = max([sig[k - 1] for k in positions], default=0)
    best = max(best, 0)
    if direction == "raise":
        if best <= 0:
            return None
        k = max(k for k in positions if sig[k - 1] == best)
        return a[:k - 1] + (a[k - 1] - 1,) + a[k:]
    if direction == "lower":
        ties = [k for k in positions if sig[k - 1] == best]
        if not ties:
            raise PositionOverflowError(
                f"lowering in color {i} targets a position beyond N={N}")
        k = min(ties)
        return a[:k - 1] + (a[k - 1] + 1,) + a[k:]
    raise CrystalError(f"direction must be 'raise' or 'lower', got {direction!r}")


def weight_of_sequence(ctx: WordContext, a: ZSeq) -> Weight:
    """wt(a) = -sum_k a_k alpha_{j_k} in fundamental coordinates."""
    n = ctx.datum.rank
    acc = [0] * n
    for k in range(1, ctx.n_positions + 1):
        ak = a[k - 1]
        if ak:
            alpha = ctx.datum.simple_root(ctx.color(k))
            for j in range(n):
                acc[j] -= ak * alpha[j]
    return tuple(acc)


class LambdaCrystal:
    """The finite crystal generated from the zero sequence for a dominant weight.

    Elements are stored as their length-N integer sequences, sorted; the
    lowering edges, weights and the eps/phi statistics are cached per element.
    """

    def __init__(self, context: WordContext, weight: Weight,
                 elements: list[ZSeq], f_edges: dict[tuple[int, int], int]):
        self.context = context
        self.weight = weight
        self.elements = elements
        self.index = {a: k for k, a in enumerate(elements)}
        self.f_edges = f_edges
        self.e_edges = {(to, color): src for (src, color), to in f_edges.items()}
        n = context.datum.rank
        self.eps = []
        self.wts = []
        self.phi = []
        for a in elements:
            eps = tuple(sigma_color(context, a, i) for i in range(1, n + 1))
            wt = rootdata.add_weights(weight, weight_of_sequence(context, a))
            self.eps.append(eps)
            self.wts.append(wt)
            self.phi.append(tuple(eps[i] + wt[i] for i in range(n)))
        self.highest = self.index[tuple(0 for _ in context.word)]
        lowest = [k for k, p in enumerate(self.phi) if all(x == 0 for x in p)]
        if len(lowest) != 1:
            raise CrystalError("crystal does not have a unique lowest element")
        self.lowest = lowest[0]

    def __len__(self) -> int:
        return len(self.elements)

    def f_edge(self, idx: int, i: int) -> int | None:
        return self.f_edges.get((idx, i))

    def e_edge(self, idx: int, i: int) -> int | None:
        return self.e_edges.get((idx, i))

    def phi_vector(self, idx: int) -> tuple[int, ...]:
        return string_parametrization(self, self.elements[idx])

    def psi_vector(self, idx: int) -> tuple[int, ...]:
        return kashiwara_embedding(self, self.elements[idx])

    def phi_vectors(self) -> list[tuple[int, ...]]:
        return [self.phi_vector(k) for k in range(len(self.elements))]

    def psi_vectors(self) -> list[tuple[int, ...]]:
        return [self.psi_vector(k) for k in range(len(self.elements))]

    def weight_multiset(self) -> dict[Weight, int]:
        out: dict[Weight, int] = {}
        for wt in self.wts:
            out[wt] = out.get(wt, 0) + 1
        return out


def generate_B_lambda(ctx: WordContext, weight: Weight,
                      cap: int = _CRYSTAL_CAP) -> LambdaCrystal:
    """Closure of the zero sequence under color-i lowering whenever phi_i > 0.

    Generated crystals are immutable; repeated requests are served from a cache.
    """
    return _generate_B_lambda_cached(ctx, tuple(weight), cap)


@lru_cache(maxsize=256)
def _generate_B_lambda_cached(ctx: WordContext, weight: Weight,
                              cap: int) -> LambdaCrystal:
    if not rootdata.is_dominant(weight):
        raise CrystalError(f"weight {weight} is not dominant")
    expected = weyl_dimension(ctx.datum, weight)
    if expected > cap:
        raise CrystalError(
            f"crystal of dimension {expected} exceeds the cap {cap}")
    n = ctx.datum.rank
    zero = tuple(0 for _ in ctx.word)
    seen = {zero}
    frontier = [zero]
    edges_raw: dict[tuple[ZSeq, int], ZSeq] = {}
    while frontier:
        nxt = []
        for a in frontier:
            wt = rootdata.add_weights(weight, weight_of_sequence(ctx, a))
            for i in range(1, n + 1):
                phi = sigma_color(ctx, a, i) + wt[i - 1]
                if phi > 0:
                    b = zinf_apply(ctx, a, i, "lower")
                    edges_raw[(a, i)] = b
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
        frontier = nxt
    elements = sorted(seen)
    index = {a: k for k, a in enumerate(elements)}
    f_edges = {(index[a], i): index[b] for (a, i), b in edges_raw.items()}
    return LambdaCrystal(ctx, weight, elements, f_edges)


def string_parametrization(crystal: LambdaCrystal, a: ZSeq) -> tuple[int, ...]:
    """Maximal raising-string lengths along i_1, i_2, ..., i_N."""
    ctx = crystal.context
    if a not in crystal.index:
        raise CrystalError("element does not belong to the crystal")
    out = []
    cur = a
    for i in ctx.word:
        m = sigma_color(ctx, cur, i)
        for _ in range(m):
            cur = zinf_apply(ctx, cur, i, "raise")
        out.append(m)
    if any(x != 0 for x in cur):
        raise CrystalError("string parametrization did not reach the highest weight")
    return tuple(out)


def kashiwara_embedding(crystal: LambdaCrystal, a: ZSeq) -> tuple[int, ...]:
    """Coordinate m of the output is the entry at position N - m + 1, so it
    carries color i_m."""
    if a not in crystal.index:
        raise CrystalError("element does not belong to the crystal")
    return tuple(reversed(a))


@dataclass(frozen=True)
class CrystalSubset:
    crystal: LambdaCrystal
    members: frozenset[int]
    tag: tuple

    def phi_set(self) -> set[tuple[int, ...]]:
        return {self.crystal.phi_vector(k) for k in self.members}

    def psi_set(self) -> set[tuple[int, ...]]:
        return {self.crystal.psi_vector(k) for k in self.members}

    def weights(self) -> list[Weight]:
        return sorted(self.crystal.wts[k] for k in self.members)


def _string_closure(crystal: LambdaCrystal, members: set[int], i: int,
                    direction: str) -> set[int]:
    """Close a member set under repeated lowering (or raising) in color i."""
    out = set(members)
    stack = list(members)
    step = crystal.f_edge if direction == "lower" else crystal.e_edge
    while stack:
        k = stack.pop()
        nxt = step(k, i)
        if nxt is not None and nxt not in out:
            out.add(nxt)
            stack.append(nxt)
    return out


def demazure_subset(crystal: LambdaCrystal, w: WeylElement) -> CrystalSubset:
    """Lowering-string closures from the highest element along a reduced word
    of w, processed from the last letter to the first."""
    members = {crystal.highest}
    for p in range(len(w.word) - 1, -1, -1):
        members = _string_closure(crystal, members, w.word[p], "lower")
    return CrystalSubset(crystal, frozenset(members), ("demazure", w.word))


def opposite_demazure_subset(crystal: LambdaCrystal, v: WeylElement) -> CrystalSubset:
    """Raising-string closures from the lowest element along a reduced word of
    w_0 v^{-1}, processed first letter to last."""
    group = rootdata.weyl_group(crystal.context.datum)
    u = group.multiply(group.longest, group.inverse(v))
    members = {crystal.lowest}
    for p in range(len(u.word)):
        members = _string_closure(crystal, members, u.word[p], "raise")
    return CrystalSubset(crystal, frozenset(members), ("opposite-demazure", v.word))


def richardson_subset(crystal: LambdaCrystal, v: WeylElement,
                      w: WeylElement) -> CrystalSubset:
    group = rootdata.weyl_group(crystal.context.datum)
    if not group.bruhat_leq(v, w):
        raise CrystalError(
            f"empty Richardson condition: {v.word} is not Bruhat-below {w.word}")
    dem = demazure_subset(crystal, w)
    opp = opposite_demazure_subset(crystal, v)
    members = dem.members & opp.members
    assert members, "Richardson subset is empty despite v <= w"
    return CrystalSubset(crystal, members, ("richardson", v.word, w.word))


# ---------------------------------------------------------------------------
# Independent character oracle (Freudenthal recursion / Weyl dimension formula)
# ---------------------------------------------------------------------------

def _dominant_representative(datum: RootDatum, weight: Weight) -> Weight:
    w = weight
    while True:
        neg = next((i for i, x in enumerate(w) if x < 0), None)
        if neg is None:
            return w
        w = rootdata.reflect_weight(datum, neg + 1, w)


def weyl_dimension(datum: RootDatum, weight: Weight) -> int:
    """dim V(lambda) by the Weyl dimension formula, exactly."""
    rho = tuple(1 for _ in range(datum.rank))
    num = Fraction(1)
    lam_rho = rootdata.add_weights(weight, rho)
    for _, root in rootdata.positive_roots(datum):
        num *= Fraction(rootdata.root_pairing(datum, lam_rho, root),
                        rootdata.root_pairing(datum, rho, root))
    assert num.denominator == 1
    return int(num)


def weight_multiplicities_oracle(datum: RootDatum, weight: Weight,
                                 cap: int = _CRYSTAL_CAP) -> tuple[dict[Weight, int], int]:
    """Weight multiplicities of the irreducible module, without any crystal
    machinery (Freudenthal recursion over dominant weights, then orbit
    expansion).  Returns (weight -> multiplicity, total dimension).
    """
    if not rootdata.is_dominant(weight):
        raise CrystalError(f"weight {weight} is not dominant")
    dim = weyl_dimension(datum, weight)
    if dim > cap:
        raise CrystalError(f"dimension {dim} exceeds the cap {cap}")
    n = datum.rank
    cartan = datum.cartan
    cinv = linalg.inverse(cartan)
    rho = tuple(1 for _ in range(n))

    # candidate dominant weights mu = lambda - C k; the box bound comes from
    # k = C^{-1}(lambda - mu) <= C^{-1} lambda entrywise (C^{-1} >= 0)
    bound = [int(sum(cinv[i][j] * weight[j] for j in range(n))) for i in range(n)]
    dominant: list[tuple[int, tuple[int, ...], Weight]] = []
    for k in itertools.product(*(range(b + 1) for b in bound)):
        mu = tuple(weight[j] - sum(cartan[j][i] * k[i] for i in range(n))
                   for j in range(n))
        if all(x >= 0 for x in mu):
            dominant.append((sum(k), k, mu))
    dominant.sort()

    pos = rootdata.positive_roots(datum)

    def q(x: Weight) -> Fraction:
        xr = rootdata.add_weights(x, rho)
        return rootdata.weight_form(datum, xr, xr)

    mult: dict[Weight, int] = {}
    lam_norm = q(weight)
    for height, kvec, mu in dominant:
        if height == 0:
            mult[mu] = 1
            continue
        total = Fraction(0)
        for alpha_fund, alpha_root in pos:
            # mu + k*alpha is a candidate weight only while lambda - mu - k*alpha
            # stays in the nonnegative root lattice
            kmax = min((kvec[j] // alpha_root[j] for j in range(n) if alpha_root[j]),
                       default=0)
            for k in range(1, kmax + 1):
                nu = tuple(mu[j] + k * alpha_fund[j] for j in range(n))
                m = mult.get(_dominant_representative(datum, nu), 0)
                if m:
                    total += 2 * m * rootdata.root_pairing(datum, nu, alpha_root)
        denom = lam_norm - q(mu)
        if denom <= 0:
            raise CrystalError("Freudenthal denominator not positive")
        val = total / denom
        assert val.denominator == 1
        if val:
            mult[mu] = int(val)

    full: dict[Weight, int] = {}
    for mu, m in mult.items():
        for nu in _weyl_orbit(datum, mu):
            full[nu] = m
    return full, sum(full.values())


@lru_cache(maxsize=None)
def _weyl_orbit_cached(datum: RootDatum, weight: Weight) -> frozenset[Weight]:
    orbit = {weight}
    stack = [weight]
    while stack:
        w = stack.pop()
        for i in range(1, datum.rank + 1):
            r = rootdata.reflect_weight(datum, i, w)
            if r not in orbit:
                orbit.add(r)
                stack.append(r)
    return frozenset(orbit)


def _weyl_orbit(datum: RootDatum, weight: Weight) -> frozenset[Weight]:
    return _weyl_orbit_cached(datum, weight)


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------

def crystal_to_json(crystal: LambdaCrystal) -> dict:
    edges = sorted(
        ({"from": src, "to": to, "color": color}
         for (src, color), to in crystal.f_edges.items()),
        key=lambda e: (e["from"], e["color"]))
    return {
        "series": crystal.context.datum.series,
        "rank": crystal.context.datum.rank,
        "word": list(crystal.context.word),
        "weight": list(crystal.weight),
        "elements": [list(crystal.psi_vector(k)) for k in range(len(crystal))],
        "edges": edges,
    }


def crystal_to_dot(crystal: LambdaCrystal, coords: str = "psi") -> str:
    """Edge-colored crystal graph; node labels are Phi or Psi coordinate tuples."""
    if coords == "psi":
        label = crystal.psi_vector
    elif coords == "phi":
        label = crystal.phi_vector
    else:
        raise CrystalError("coords must be 'phi' or 'psi'")

    def fmt(vec):
        return "(" + ", ".join(str(x) for x in vec) + ")"

    lines = ["digraph crystal {", "  rankdir=LR;"]
    for k in range(len(crystal)):
        lines.append(f'  "{fmt(label(k))}";')
    edge_rows = sorted((fmt(label(src)), fmt(label(to)), color)
                       for (src, color), to in crystal.f_edges.items())
    for a, b, color in edge_rows:
        lines.append(f'  "{a}" -> "{b}" [label="{color}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
