"""Seeds, mutation, dominance order, g-vectors and tropical transport.

An exchange matrix has rows indexed by the unfrozen subset of J = {1..m} and
columns by J; the principal part is skew-symmetrizable and mutation follows

    e'_{ij} = -e_{ij}                       if i = k or j = k,
    e'_{ij} = e_{ij} + sgn(e_{ik}) [e_{ik} e_{kj}]_+   otherwise,

with the exchange binomial  A_k' = (prod A^[e_k+] + prod A^[e_k-]) / A_k.
Cluster variables are kept as canonical rational functions in the initial
variables A_1..A_m (sympy-backed), so seed equality and the Laurent property
are decidable by normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

from . import linalg, polytope, rootdata
from .polytope import RationalPolytope
from .rootdata import RootDatum
from .zcrystal import WordContext

GVector = tuple[int, ...]

TIEBREAKS = ("revlex", "lex", "neglex")


class ClusterError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Exchange matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExchangeMatrix:
    size: int
    unfrozen: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]

    def __post_init__(self):
        pos = {s: r for r, s in enumerate(self.unfrozen)}
        for s in self.unfrozen:
            for t in self.unfrozen:
                lhs = self.symmetrizer[pos[s]] * self.entry(s, t)
                rhs = -self.symmetrizer[pos[t]] * self.entry(t, s)
                if lhs != rhs:
                    raise ClusterError("principal part is not skew-symmetrizable")

    def row_index(self, s: int) -> int:
        try:
            return self.unfrozen.index(s)
        except ValueError:
            raise ClusterError(f"direction {s} is frozen") from None

    def entry(self, s: int, t: int) -> int:
        """epsilon_{s,t} for unfrozen s and arbitrary t (1-based)."""
        return self.rows[self.row_index(s)][t - 1]

    def row(self, s: int) -> tuple[int, ...]:
        return self.rows[self.row_index(s)]

    def to_json(self) -> dict:
        return {"size": self.size, "unfrozen": list(self.unfrozen),
                "rows": [list(r) for r in self.rows]}


@lru_cache(maxsize=None)
def full_rank(eps: ExchangeMatrix) -> bool:
    return linalg.rank(eps.rows) == len(eps.unfrozen)


def _require_full_rank(eps: ExchangeMatrix) -> None:
    if not full_rank(eps):
        raise ClusterError("exchange matrix does not have full rank")


def build_exchange_from_word(datum: RootDatum, word) -> ExchangeMatrix:
    """Exchange matrix attached to a reduced word: J_uf are the positions whose
    letter repeats later, and the entries follow the repeat-interleaving rule."""
    word = tuple(int(x) for x in word)
    group = rootdata.weyl_group(datum)
    if not group.is_reduced(word):
        raise ClusterError(f"word {word} is not reduced")
    m = len(word)

    def plus(k: int) -> int:
        return next((j for j in range(k + 1, m + 1) if word[j - 1] == word[k - 1]),
                    m + 1)

    unfrozen = tuple(k for k in range(1, m + 1) if plus(k) != m + 1)
    c = datum.cartan
    rows = []
    for s in unfrozen:
        row = []
        for t in range(1, m + 1):
            sp, tp = plus(s), plus(t)
            if sp == t:
                row.append(1)
            elif s == tp:
                row.append(-1)
            elif s < t < sp < tp:
                row.append(c[word[t - 1] - 1][word[s - 1] - 1])
            elif t < s < tp < sp:
                row.append(-c[word[t - 1] - 1][word[s - 1] - 1])
            else:
                row.append(0)
        rows.append(tuple(row))
    scale = 1
    for d in datum.symmetrizers:
        scale = scale * d // gcd(scale, d)
    sym = tuple(scale // datum.symmetrizers[word[s - 1] - 1] for s in unfrozen)
    return ExchangeMatrix(m, unfrozen, tuple(rows), sym)


def mutate_matrix(eps: ExchangeMatrix, k: int) -> ExchangeMatrix:
    kr = eps.row_index(k)
    new_rows = []
    for r, s in enumerate(eps.unfrozen):
        row = []
        for t in range(1, eps.size + 1):
            e = eps.rows[r][t - 1]
            if s == k or t == k:
                row.append(-e)
            else:
                eik = eps.rows[r][k - 1]
                ekj = eps.rows[kr][t - 1]
                sign = (eik > 0) - (eik < 0)
                row.append(e + sign * max(eik * ekj, 0))
        new_rows.append(tuple(row))
    return ExchangeMatrix(eps.size, eps.unfrozen, tuple(new_rows), eps.symmetrizer)


def quiver_dot(eps: ExchangeMatrix) -> str:
    """Quiver of an exchange matrix with entries in {0, +-1}; frozen vertices
    are drawn as boxes and arrows are s -> t when e_{s,t} = -1 or e_{t,s} = 1."""
    if any(abs(x) > 1 for row in eps.rows for x in row):
        raise ClusterError("quiver drawing needs all entries in {0, +1, -1}")
    unfrozen = set(eps.unfrozen)
    arrows = set()
    for s in eps.unfrozen:
        for t in range(1, eps.size + 1):
            if eps.entry(s, t) == -1:
                arrows.add((s, t))
            if eps.entry(s, t) == 1:
                arrows.add((t, s))
    lines = ["digraph quiver {", "  node [shape=circle];"]
    for j in range(1, eps.size + 1):
        shape = "circle" if j in unfrozen else "box"
        lines.append(f"  {j} [shape={shape}];")
    for s, t in sorted(arrows):
        lines.append(f"  {s} -> {t};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Laurent expressions in the initial cluster variables
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _gens(m: int):
    return sympy.symbols(f"A1:{m + 1}", positive=True)


class LaurentExpr:
    """Canonical rational function over the integers in variables A_1..A_m."""

    __slots__ = ("nvars", "num", "den")

    def __init__(self, expr, nvars: int):
        gens = _gens(nvars)
        num, den = sympy.cancel(sympy.together(expr)).as_numer_denom()
        pnum = sympy.Poly(num, *gens)
        pden = sympy.Poly(den, *gens)
        if pnum.is_zero:
            pden = sympy.Poly(1, *gens)
        if pden.LC() < 0:
            pnum, pden = -pnum, -pden
        self.nvars = nvars
        self.num = pnum
        self.den = pden

    @classmethod
    def variable(cls, j: int, nvars: int) -> "LaurentExpr":
        return cls(_gens(nvars)[j - 1], nvars)

    @classmethod
    def monomial(cls, exponents, nvars: int) -> "LaurentExpr":
        gens = _gens(nvars)
        expr = sympy.Integer(1)
        for g, e in zip(gens, exponents):
            expr *= g ** int(e)
        return cls(expr, nvars)

    @classmethod
    def integer(cls, c: int, nvars: int) -> "LaurentExpr":
        return cls(sympy.Integer(c), nvars)

    def as_expr(self):
        return self.num.as_expr() / self.den.as_expr()

    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_laurent(self) -> bool:
        """True when the canonical denominator is a single monomial."""
        return len(self.den.terms()) == 1

    def terms(self, part: str = "num") -> list[tuple[tuple[int, ...], int]]:
        poly = self.num if part == "num" else self.den
        out = [(tuple(int(e) for e in mono), int(c)) for mono, c in poly.terms()]
        out.sort()
        return out

    def laurent_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Exponent/coefficient pairs of a Laurent polynomial (den a monomial)."""
        if not self.is_laurent():
            raise ClusterError("expression is not a Laurent polynomial")
        (dmono, dcoef), = self.den.terms()
        out = [(tuple(int(e) - int(d) for e, d in zip(mono, dmono)),
                Fraction(int(c), int(dcoef)))
               for mono, c in self.num.terms()]
        out.sort()
        return out

    def evaluate(self, values) -> Fraction:
        subs = {g: sympy.Rational(Fraction(v)) for g, v in zip(_gens(self.nvars), values)}
        num = self.num.as_expr().xreplace(subs)
        den = self.den.as_expr().xreplace(subs)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        val = sympy.Rational(num) / sympy.Rational(den)
        return Fraction(int(val.p), int(val.q))

    def __add__(self, other):
        return LaurentExpr(self.as_expr() + other.as_expr(), self.nvars)

    def __mul__(self, other):
        return LaurentExpr(self.as_expr() * other.as_expr(), self.nvars)

    def __truediv__(self, other):
        return LaurentExpr(self.as_expr() / other.as_expr(), self.nvars)

    def __eq__(self, other):
        return (isinstance(other, LaurentExpr) and self.nvars == other.nvars
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.nvars, self.num, self.den))

    def __repr__(self):
        return f"LaurentExpr({self.as_expr()})"


# ---------------------------------------------------------------------------
# Seeds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Seed:
    matrix: ExchangeMatrix
    variables: tuple[LaurentExpr, ...]
    history: tuple[int, ...]

    def variable(self, j: int) -> LaurentExpr:
        return self.variables[j - 1]


def initial_seed(eps: ExchangeMatrix) -> Seed:
    m = eps.size
    return Seed(eps, tuple(LaurentExpr.variable(j, m) for j in range(1, m + 1)), ())


def mutate_seed(seed: Seed, k: int) -> Seed:
    eps = seed.matrix
    row = eps.row(k)
    m = eps.size
    plus = LaurentExpr.monomial([max(e, 0) for e in row], m)
    minus = LaurentExpr.monomial([max(-e, 0) for e in row], m)
    top = LaurentExpr(sympy.Integer(0), m)
    num_plus = LaurentExpr.integer(1, m)
    num_minus = LaurentExpr.integer(1, m)
    for j in range(1, m + 1):
        e = row[j - 1]
        if e > 0:
            for _ in range(e):
                num_plus = num_plus * seed.variable(j)
        elif e < 0:
            for _ in range(-e):
                num_minus = num_minus * seed.variable(j)
    new_var = (num_plus + num_minus) / seed.variable(k)
    variables = tuple(new_var if j == k else seed.variable(j)
                      for j in range(1, m + 1))
    return Seed(mutate_matrix(eps, k), variables, seed.history + (k,))


def seed_after_word(seed: Seed, word) -> Seed:
    for k in word:
        seed = mutate_seed(seed, int(k))
    return seed


def seed_is_laurent(seed: Seed) -> bool:
    return all(v.is_laurent() for v in seed.variables)


# ---------------------------------------------------------------------------
# Dominance order and lowest-term valuations
# ---------------------------------------------------------------------------

def dominance_leq(a, a2, eps: ExchangeMatrix) -> bool:
    """a <= a' in the dominance order: a = a' + v eps with v >= 0 integral on
    the unfrozen indices."""
    _require_full_rank(eps)
    a = tuple(int(x) for x in a)
    a2 = tuple(int(x) for x in a2)
    diff = [x - y for x, y in zip(a, a2)]
    cols = [[eps.rows[r][j] for r in range(len(eps.unfrozen))]
            for j in range(eps.size)]
    v = linalg.solve(cols, diff)
    if v is None:
        return False
    return all(x.denominator == 1 and x >= 0 for x in v)


@lru_cache(maxsize=None)
def _order_functional(eps: ExchangeMatrix) -> tuple[int, ...]:
    """Integer xi with eps . xi entrywise positive, so that key(x) = xi . x
    is minimized along the dominance-opposite direction."""
    _require_full_rank(eps)
    ones = [Fraction(1)] * len(eps.unfrozen)
    xi = linalg.solve([list(r) for r in eps.rows], ones)
    assert xi is not None
    denom = 1
    for x in xi:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    return tuple(int(x * denom) for x in xi)


def _tiebreak_key(name: str):
    if name == "revlex":
        return lambda x: tuple(reversed(x))
    if name == "lex":
        return lambda x: tuple(x)
    if name == "neglex":
        return lambda x: tuple(-c for c in x)
    raise ClusterError(f"unknown tiebreak {name!r}; options: {TIEBREAKS}")


def lowest_term_valuation(f: LaurentExpr, eps: ExchangeMatrix,
                          tiebreak: str = "revlex") -> GVector:
    """Exponent of the minimal monomial of the numerator minus that of the
    denominator, in the total order refining the opposite dominance order."""
    if f.is_zero():
        raise ClusterError("valuation of zero is undefined")
    xi = _order_functional(eps)
    tb = _tiebreak_key(tiebreak)

    def key(exps):
        return (linalg.dot(xi, exps),) + tuple(tb(exps))

    nmin = min((e for e, _ in f.terms("num")), key=key)
    dmin = min((e for e, _ in f.terms("den")), key=key)
    return tuple(x - y for x, y in zip(nmin, dmin))


@dataclass(frozen=True)
class PointedResult:
    g: GVector
    strict: bool
    constant: Fraction


def g_vector(f: LaurentExpr, eps: ExchangeMatrix) -> PointedResult | None:
    """Extended g-vector of a (weakly) pointed Laurent polynomial, or None.

    Factors f as A^g times a polynomial in the monomials X_s = A^{eps-row s}
    with nonzero constant term; g is forced to be the lowest-term valuation
    and the expansion exponents are solved exactly (full rank makes them
    unique).
    """
    if f.is_zero():
        return None
    if not f.is_laurent():
        raise ClusterError("g-vectors are defined for Laurent polynomials")
    _require_full_rank(eps)
    g = lowest_term_valuation(f, eps)
    cols = [[eps.rows[r][j] for r in range(len(eps.unfrozen))]
            for j in range(eps.size)]
    constant = None
    for exps, coef in f.laurent_terms():
        m = [e - gi for e, gi in zip(exps, g)]
        a = linalg.solve(cols, m)
        if a is None or any(x.denominator != 1 or x < 0 for x in a):
            return None
        if all(x == 0 for x in a):
            constant = coef
    if constant is None or constant == 0:
        return None
    return PointedResult(g, constant == 1, constant)


# ---------------------------------------------------------------------------
# Tropicalized mutation and transport
# ---------------------------------------------------------------------------

def tropical_mutate(g, eps: ExchangeMatrix, k: int) -> GVector:
    row = eps.row(k)
    g = tuple(int(x) for x in g)
    gk = g[k - 1]
    out = []
    for j in range(1, eps.size + 1):
        if j == k:
            out.append(-gk)
        else:
            e = row[j - 1]
            out.append(g[j - 1] + max(-e, 0) * gk + e * max(gk, 0))
    return tuple(out)


def tropical_mutate_path(points, eps: ExchangeMatrix, word
                         ) -> tuple[list[GVector], ExchangeMatrix]:
    pts = [tuple(int(x) for x in p) for p in points]
    for k in word:
        k = int(k)
        pts = [tropical_mutate(p, eps, k) for p in pts]
        eps = mutate_matrix(eps, k)
    return pts, eps


def transport_polytope(poly: RationalPolytope, eps: ExchangeMatrix, word
                       ) -> tuple[RationalPolytope, ExchangeMatrix]:
    """Pointwise tropical transport of a lattice polytope along a mutation
    word; the image point set must close up convexly (checked)."""
    pts = polytope.lattice_points(poly)
    images, eps2 = tropical_mutate_path(pts, eps, word)
    hull = polytope.convex_hull(images)
    if set(polytope.lattice_points(hull)) != set(images):
        raise ClusterError(
            "tropical transport image is not convexly closed; "
            "this contradicts the mutation-equivariance of the polytopes")
    return hull, eps2


# ---------------------------------------------------------------------------
# The triangular transfer matrix and the cluster-coordinates polytope
# ---------------------------------------------------------------------------

def upsilon_matrix(datum: RootDatum, word) -> tuple[tuple[int, ...], ...]:
    """Lower-triangular unimodular matrix M with rows k, columns l:
    M[k][l] = <s_{i_{l+1}} ... s_{i_k} w_{i_k}, h_{i_l}> for l <= k."""
    word = tuple(int(x) for x in word)
    group = rootdata.weyl_group(datum)
    if group.element_from_word(word) != group.longest or \
            len(word) != group.longest.length:
        raise ClusterError("a reduced word for the longest element is required")
    n_pos = len(word)
    rows = []
    for k in range(1, n_pos + 1):
        row = [0] * n_pos
        mu = tuple(1 if j == word[k - 1] - 1 else 0 for j in range(datum.rank))
        for ell in range(k, 0, -1):
            row[ell - 1] = mu[word[ell - 1] - 1]
            mu = rootdata.reflect_weight(datum, word[ell - 1], mu)
        rows.append(tuple(row))
    m = tuple(rows)
    d = linalg.det(m)
    assert d in (1, -1), f"transfer matrix determinant {d} is not a unit"
    return m


def upsilon_apply(m, a) -> tuple:
    return linalg.vec_mat(a, m)


def upsilon_inverse(m) -> tuple[tuple[int, ...], ...]:
    inv = linalg.inverse(m)
    out = tuple(tuple(int(x) for x in row) for row in inv)
    for row, orig in zip(out, inv):
        for x, y in zip(row, orig):
            assert x == y, "inverse of a unimodular matrix must be integral"
    return out


@dataclass(frozen=True)
class ClusterPolytopeResult:
    polytope: RationalPolytope
    upsilon: tuple[tuple[int, ...], ...]
    string_result: polytope.LevelHullResult

    @property
    def g_points(self) -> list[GVector]:
        return polytope.lattice_points(self.polytope)


def cluster_polytope(ctx: WordContext, weight, k_max: int = 3,
                     cap: int = 2_000_000) -> ClusterPolytopeResult:
    """Newton-Okounkov polytope in the cluster chart of the word's seed: the
    inverse transfer image of the string polytope; its lattice points are the
    g-vector values of the weight's basis elements."""
    string_res = polytope.string_polytope(ctx, weight, k_max, cap)
    m = upsilon_matrix(ctx.datum, ctx.word)
    minv = upsilon_inverse(m)
    hull = polytope.map_polytope(string_res.polytope,
                                 lambda v: upsilon_apply(minv, v))
    expected = {tuple(int(x) for x in upsilon_apply(minv, p))
                for p in polytope.lattice_points(string_res.polytope)}
    got = set(polytope.lattice_points(hull))
    assert got == expected, "unimodular image must preserve lattice points"
    return ClusterPolytopeResult(hull, m, string_res)
