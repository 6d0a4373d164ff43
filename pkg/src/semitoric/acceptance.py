"""Desk-scale verification suite: the ten exit criteria of the artifact.

Each criterion returns a result row with a pass flag, elapsed seconds and the
stated runtime budget; ``verify_all`` aggregates them and is the CI entry
point behind the CLI.  Expected values are frozen from the worked rank-2/3
examples and from independent oracles (Freudenthal characters, subword Bruhat
tests, exhaustive face search); see the test suite for the same values used
in anger.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import cluster, degeneration, linalg, minors, polytope, rootdata, zcrystal

EXPECTED_PHI = {(0, 0, 0), (1, 0, 0), (0, 1, 1), (0, 2, 1), (1, 2, 1),
                (0, 1, 0), (1, 1, 0), (2, 1, 0)}
EXPECTED_PHI_EDGES = {
    ((0, 0, 0), 1, (1, 0, 0)), ((1, 0, 0), 2, (0, 1, 1)),
    ((0, 1, 1), 2, (0, 2, 1)), ((0, 2, 1), 1, (1, 2, 1)),
    ((0, 0, 0), 2, (0, 1, 0)), ((0, 1, 0), 1, (1, 1, 0)),
    ((1, 1, 0), 1, (2, 1, 0)), ((2, 1, 0), 2, (1, 2, 1)),
}
EXPECTED_PSI = {(0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 2, 1), (1, 2, 1),
                (0, 1, 0), (1, 1, 0), (1, 1, 1)}
EXPECTED_PSI_EDGES = {
    ((0, 0, 0), 1, (0, 0, 1)), ((0, 0, 1), 2, (0, 1, 1)),
    ((0, 1, 1), 2, (0, 2, 1)), ((0, 2, 1), 1, (1, 2, 1)),
    ((0, 0, 0), 2, (0, 1, 0)), ((0, 1, 0), 1, (1, 1, 0)),
    ((1, 1, 0), 1, (1, 1, 1)), ((1, 1, 1), 2, (1, 2, 1)),
}

# 0 <= a3 <= 1, a3 <= a2 <= a3 + 1, 0 <= a1 <= a2 - 2 a3 + 1
EXPECTED_STRING_HREP = {
    ((-1, 0, 0), Fraction(0)), ((1, -1, 2), Fraction(1)),
    ((0, -1, 1), Fraction(0)), ((0, 1, -1), Fraction(1)),
    ((0, 0, -1), Fraction(0)), ((0, 0, 1), Fraction(1)),
}
# 0 <= a1 <= 1, 0 <= a3 <= 1, a1 <= a2 <= a3 + 1
EXPECTED_NZ_HREP = {
    ((-1, 0, 0), Fraction(0)), ((1, 0, 0), Fraction(1)),
    ((0, 0, -1), Fraction(0)), ((0, 0, 1), Fraction(1)),
    ((1, -1, 0), Fraction(0)), ((0, 1, -1), Fraction(1)),
}

EXPECTED_SL4_MATRIX = ((0, -1, 1, 0, 0, 0),
                       (1, 0, -1, -1, 1, 0),
                       (-1, 1, 0, 0, -1, 1))
EXPECTED_SL4_ARROWS = {(1, 2), (2, 3), (2, 4), (3, 1), (3, 5), (5, 2), (6, 3)}

# Maximal faces of the Richardson set {(1,0,0),(0,1,1),(0,2,1)} inside the
# string polytope: the two unit edges meeting at (0,1,1).  (The set is also
# covered by the vertex (1,0,0) plus one edge, but that union is not the
# face-maximal decomposition and is ruled out by the level-2 point count.)
EXPECTED_RICHARDSON_CERT = {
    ((0, 1, 1), (0, 2, 1)),
    ((0, 1, 1), (1, 0, 0)),
}


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    seconds: float
    limit: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"{status} criterion {self.number}: {self.name} "
                f"({self.seconds:.2f}s < {self.limit:.0f}s) {self.detail}")

    def to_json(self) -> dict:
        return {"number": self.number, "name": self.name, "ok": self.ok,
                "seconds": round(self.seconds, 3), "limit": self.limit,
                "detail": self.detail}


def _phi_edge_set(crystal) -> set:
    return {(crystal.phi_vector(s), c, crystal.phi_vector(t))
            for (s, c), t in crystal.f_edges.items()}


def _psi_edge_set(crystal) -> set:
    return {(crystal.psi_vector(s), c, crystal.psi_vector(t))
            for (s, c), t in crystal.f_edges.items()}


def _hrep_set(poly) -> set:
    return {(h.normal, h.offset) for h in poly.halfspaces}


def _a2_context():
    return zcrystal.word_context(rootdata.build_root_datum("A", 2), (1, 2, 1))


def criterion_1() -> tuple[bool, str]:
    ctx = _a2_context()
    crystal = zcrystal.generate_B_lambda(ctx, (1, 1))
    ok = set(crystal.phi_vectors()) == EXPECTED_PHI
    ok = ok and _phi_edge_set(crystal) == EXPECTED_PHI_EDGES
    res = polytope.string_polytope(ctx, (1, 1))
    ok = ok and _hrep_set(res.polytope) == EXPECTED_STRING_HREP
    expected_poly = polytope.convex_hull(polytope.vertices_from_halfspaces(
        [polytope.Halfspace(n, o) for n, o in sorted(EXPECTED_STRING_HREP)], [], 3))
    ok = ok and polytope.polytopes_equal(res.polytope, expected_poly)
    return ok, f"8 vectors, 8 edges, {len(res.polytope.halfspaces)} facets"


def criterion_2() -> tuple[bool, str]:
    ctx = _a2_context()
    crystal = zcrystal.generate_B_lambda(ctx, (1, 1))
    ok = set(crystal.psi_vectors()) == EXPECTED_PSI
    ok = ok and _psi_edge_set(crystal) == EXPECTED_PSI_EDGES
    res = polytope.nz_polytope(ctx, (1, 1))
    ok = ok and _hrep_set(res.polytope) == EXPECTED_NZ_HREP
    expected_poly = polytope.convex_hull(polytope.vertices_from_halfspaces(
        [polytope.Halfspace(n, o) for n, o in sorted(EXPECTED_NZ_HREP)], [], 3))
    ok = ok and polytope.polytopes_equal(res.polytope, expected_poly)
    return ok, f"8 vectors, 8 edges, {len(res.polytope.halfspaces)} facets"


def criterion_3() -> tuple[bool, str]:
    a3 = rootdata.build_root_datum("A", 3)
    eps = cluster.build_exchange_from_word(a3, (1, 2, 1, 3, 2, 1))
    ok = eps.rows == EXPECTED_SL4_MATRIX and eps.unfrozen == (1, 2, 3)
    dot = cluster.quiver_dot(eps)
    arrows = {tuple(int(x) for x in line.strip().rstrip(";").split(" -> "))
              for line in dot.splitlines() if " -> " in line}
    ok = ok and arrows == EXPECTED_SL4_ARROWS
    return ok, f"matrix entrywise, {len(arrows)} arrows"


def criterion_4() -> tuple[bool, str]:
    cases = [("A", 2, (1, 2, 1)), ("A", 3, (1, 2, 1, 3, 2, 1)),
             ("B", 2, (1, 2, 1, 2))]
    checked = 0
    for series, rank, word in cases:
        datum = rootdata.build_root_datum(series, rank)
        ctx = zcrystal.word_context(datum, word)
        for lam in itertools.product(range(3), repeat=rank):
            crystal = zcrystal.generate_B_lambda(ctx, lam)
            oracle, dim = zcrystal.weight_multiplicities_oracle(datum, lam)
            if crystal.weight_multiset() != oracle or len(crystal) != dim:
                return False, f"character mismatch at {series}_{rank}, {lam}"
            checked += 1
    a3 = rootdata.build_root_datum("A", 3)
    ctx3 = zcrystal.word_context(a3, (1, 2, 1, 3, 2, 1))
    if len(zcrystal.generate_B_lambda(ctx3, (1, 1, 1))) != 64:
        return False, "A_3 rho crystal is not 64-dimensional"
    return True, f"{checked} crystals against the character oracle"


def criterion_5() -> tuple[bool, str]:
    ctx = _a2_context()
    b2 = rootdata.build_root_datum("B", 2)
    ctxb = zcrystal.word_context(b2, (1, 2, 1, 2))
    scans = 0
    for scan_ctx, lams in ((ctx, [(1, 1), (2, 2), (1, 2)]), (ctxb, [(1, 1)])):
        for lam in lams:
            for coords in ("string", "nz"):
                summary = degeneration.all_pairs_scan(scan_ctx, lam, coords)
                if not summary.ok:
                    return False, (f"scan violation at {lam} {coords}: "
                                   f"{summary.violations[:1]}")
                scans += 1
    group = rootdata.weyl_group(ctx.datum)
    rep = degeneration.semi_toric_report_string(
        ctx, (1, 1), group.element_from_word((1,)),
        group.element_from_word((2, 1)), with_minkowski=False)
    cert = {tuple(sorted(tuple(int(x) for x in v) for v in f.vertices))
            for f in rep.certificate}
    covered = set()
    for f in rep.certificate:
        covered.update(f.lattice_points)
    ok = (cert == EXPECTED_RICHARDSON_CERT
          and covered == {(1, 0, 0), (0, 1, 1), (0, 2, 1)})
    return ok, f"{scans} scans, pinned certificate checked"


def criterion_6() -> tuple[bool, str]:
    ctx = _a2_context()
    group = rootdata.weyl_group(ctx.datum)
    pairs = 0
    for v in group.elements:
        for w in group.elements:
            if not group.bruhat_leq(v, w):
                continue
            rep = polytope.minkowski_condition_check(ctx, (1, 1), (1, 1), v, w,
                                                     dilation=2)
            if not rep.ok:
                return False, (f"violation at v={v.word} w={w.word}: "
                               f"{rep.witnesses_i[:1] or rep.witnesses_ii[:1]}")
            pairs += 1
    return pairs == 19, f"{pairs} Bruhat pairs, conditions (i) and (ii)"


def criterion_7() -> tuple[bool, str]:
    rng = random.Random(7)
    for series, rank, word in (("A", 2, (1, 2, 1)), ("A", 3, (1, 2, 1, 3, 2, 1))):
        datum = rootdata.build_root_datum(series, rank)
        eps = cluster.build_exchange_from_word(datum, word)
        seed = cluster.initial_seed(eps)
        for k in eps.unfrozen:
            twice = cluster.mutate_seed(cluster.mutate_seed(seed, k), k)
            if twice.variables != seed.variables or twice.matrix.rows != eps.rows:
                return False, f"mutation involution fails at {series}_{rank}, k={k}"
        for k in eps.unfrozen:
            if cluster.mutate_matrix(cluster.mutate_matrix(eps, k), k).rows != eps.rows:
                return False, f"matrix involution fails at {series}_{rank}, k={k}"
        for _ in range(1000):
            g = tuple(rng.randint(-20, 20) for _ in range(eps.size))
            for k in eps.unfrozen:
                back = cluster.tropical_mutate(
                    cluster.tropical_mutate(g, eps, k),
                    cluster.mutate_matrix(eps, k), k)
                if back != g:
                    return False, "tropical double application is not the identity"

    a3 = rootdata.build_root_datum("A", 3)
    eps3 = cluster.build_exchange_from_word(a3, (1, 2, 1, 3, 2, 1))
    frontier = {(): cluster.initial_seed(eps3)}
    words = 0
    for _ in range(4):
        nxt = {}
        for hist, seed in frontier.items():
            for k in eps3.unfrozen:
                child = cluster.mutate_seed(seed, k)
                if not cluster.seed_is_laurent(child):
                    return False, f"non-Laurent variable after word {child.history}"
                nxt[hist + (k,)] = child
                words += 1
        frontier = nxt
    return True, f"involutions, 1000-vector tropical suites, {words} Laurent words"


def criterion_8() -> tuple[bool, str]:
    a2 = rootdata.build_root_datum("A", 2)
    rep2 = minors.verify_initial_seed(a2, (1, 2, 1), samples=100, seed=0)
    if not rep2.ok:
        return False, "A_2 seed verification failed"
    eps = cluster.build_exchange_from_word(a2, (1, 2, 1))
    mutated = cluster.mutate_seed(cluster.initial_seed(eps), 1)
    rng = random.Random(8)
    checked = 0
    for _ in range(100):
        g = minors.random_unitriangular(3, rng)
        vals = minors.evaluate_seed_variables(a2, (1, 2, 1), g)
        if vals[0] == 0:
            continue
        if mutated.variable(1).evaluate(vals) != g.matrix[2][1]:
            return False, "mutated variable does not evaluate to the (3,2) entry"
        checked += 1
    a3 = rootdata.build_root_datum("A", 3)
    rep3 = minors.verify_initial_seed(a3, (1, 2, 1, 3, 2, 1), samples=100, seed=0)
    if not rep3.ok:
        return False, "A_3 seed verification failed"
    return True, f"A_2 entry identity on {checked} samples, A_3 all directions"


def criterion_9() -> tuple[bool, str]:
    ctx = _a2_context()
    group = rootdata.weyl_group(ctx.datum)
    pairs = 0
    for v in group.elements:
        for w in group.elements:
            if not group.bruhat_leq(v, w):
                continue
            rep = degeneration.semi_toric_report_cluster(ctx, (1, 1), v, w, (1,))
            base = degeneration.semi_toric_report_cluster(ctx, (1, 1), v, w, ())
            if not (rep.ok and base.ok):
                return False, f"transport report failed at v={v.word} w={w.word}"
            if len(rep.richardson_points) != len(base.richardson_points):
                return False, "transport changed the Richardson point count"
            pairs += 1
    return pairs == 19, f"{pairs} pairs transported along (1) and certified"


def criterion_10() -> tuple[bool, str]:
    rng = random.Random(10)
    for series, rank in (("A", 2), ("A", 3)):
        datum = rootdata.build_root_datum(series, rank)
        group = rootdata.weyl_group(datum)
        for word in group.reduced_words(group.longest):
            m = cluster.upsilon_matrix(datum, word)
            d = linalg.det(m)
            if d not in (1, -1):
                return False, f"det {d} for word {word}"
    a3 = rootdata.build_root_datum("A", 3)
    for eps in (cluster.build_exchange_from_word(
                    rootdata.build_root_datum("A", 2), (1, 2, 1)),
                cluster.build_exchange_from_word(a3, (1, 2, 1, 3, 2, 1))):
        for _ in range(25):
            g = tuple(rng.randint(-4, 4) for _ in range(eps.size))
            terms = {tuple(0 for _ in range(len(eps.unfrozen)))}
            for _ in range(rng.randint(1, 4)):
                terms.add(tuple(rng.randint(0, 3) for _ in range(len(eps.unfrozen))))
            f = _pointed_expression(eps, g, terms)
            gv = cluster.g_vector(f, eps)
            if gv is None or gv.g != g or not gv.strict:
                return False, f"constructed pointed expression not recognized at {g}"
            for tb in cluster.TIEBREAKS:
                if cluster.lowest_term_valuation(f, eps, tb) != g:
                    return False, f"valuation under {tb} disagrees with the g-vector"
    return True, "unimodular transfers; 50 pointed expressions x 3 tiebreaks"


def _pointed_expression(eps, g, exponent_tuples):
    """A^g * sum of X-hat monomials with constant term 1."""
    m = eps.size
    f = cluster.LaurentExpr.integer(0, m)
    for a in sorted(exponent_tuples):
        exps = list(g)
        for r, _ in enumerate(eps.unfrozen):
            for j in range(m):
                exps[j] += a[r] * eps.rows[r][j]
        coef = 1 if all(x == 0 for x in a) else 1 + (sum(a) % 5)
        f = f + (cluster.LaurentExpr.monomial(exps, m)
                 * cluster.LaurentExpr.integer(coef, m))
    return f


CRITERIA = [
    (1, "SL_3 string data", criterion_1, 1.0),
    (2, "SL_3 NZ data", criterion_2, 1.0),
    (3, "SL_4 seed", criterion_3, 1.0),
    (4, "crystal/character oracle", criterion_4, 60.0),
    (5, "main-theorem scan", criterion_5, 120.0),
    (6, "pairwise monoid conditions", criterion_6, 60.0),
    (7, "mutation suites", criterion_7, 120.0),
    (8, "seed/minor consistency", criterion_8, 30.0),
    (9, "transport equivariance", criterion_9, 30.0),
    (10, "unimodularity and valuation/g-vector", criterion_10, 30.0),
]


def run_criterion(number: int) -> CriterionResult:
    num, name, fn, limit = next(c for c in CRITERIA if c[0] == number)
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, not an abort
        ok, detail = False, f"exception: {exc}"
    elapsed = time.perf_counter() - start
    return CriterionResult(num, name, ok and elapsed < limit, elapsed, limit,
                           detail)


def verify_all() -> list[CriterionResult]:
    return [run_criterion(num) for num, _, _, _ in CRITERIA]


def verify_all_text(results=None) -> str:
    results = results if results is not None else verify_all()
    lines = [r.line() for r in results]
    overall = "PASS" if all(r.ok for r in results) else "FAIL"
    lines.append(f"{overall}: {sum(r.ok for r in results)}/{len(results)} criteria")
    return "\n".join(lines) + "\n"
