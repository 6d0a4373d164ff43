import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semitoric import cluster, linalg, polytope, rootdata, zcrystal
from semitoric.cluster import (ClusterError, ExchangeMatrix, LaurentExpr,
                               build_exchange_from_word, cluster_polytope,
                               dominance_leq, g_vector, initial_seed,
                               lowest_term_valuation, mutate_matrix,
                               mutate_seed, seed_after_word, seed_is_laurent,
                               transport_polytope, tropical_mutate,
                               upsilon_apply, upsilon_inverse, upsilon_matrix)

A2 = rootdata.build_root_datum("A", 2)
A3 = rootdata.build_root_datum("A", 3)
B2 = rootdata.build_root_datum("B", 2)

EPS_A2 = build_exchange_from_word(A2, (1, 2, 1))
EPS_A3 = build_exchange_from_word(A3, (1, 2, 1, 3, 2, 1))

SL4_MATRIX = ((0, -1, 1, 0, 0, 0),
              (1, 0, -1, -1, 1, 0),
              (-1, 1, 0, 0, -1, 1))


def expr(text, nvars=3):
    import sympy
    gens = cluster._gens(nvars)
    local = {f"A{i + 1}": gens[i] for i in range(nvars)}
    return LaurentExpr(sympy.sympify(text, locals=local), nvars)


def test_build_exchange_examples():
    assert EPS_A3.unfrozen == (1, 2, 3)
    assert EPS_A3.rows == SL4_MATRIX
    assert EPS_A2.unfrozen == (1,)
    assert EPS_A2.rows == ((0, -1, 1),)
    single = build_exchange_from_word(A2, (1,))
    assert single.unfrozen == () and single.rows == ()


def test_build_exchange_rejects_non_reduced():
    with pytest.raises(ClusterError):
        build_exchange_from_word(A2, (1, 1))


def test_build_exchange_skew_symmetrizable_b2():
    eps = build_exchange_from_word(B2, (1, 2, 1, 2))
    assert eps.unfrozen == (1, 2)
    pos = {s: r for r, s in enumerate(eps.unfrozen)}
    for s in eps.unfrozen:
        for t in eps.unfrozen:
            assert (eps.symmetrizer[pos[s]] * eps.entry(s, t)
                    == -eps.symmetrizer[pos[t]] * eps.entry(t, s))


def test_mutate_matrix_examples():
    assert mutate_matrix(EPS_A2, 1).rows == ((0, 1, -1),)
    mutated = mutate_matrix(EPS_A3, 1)
    assert mutated.rows[0] == tuple(-x for x in SL4_MATRIX[0])
    # entrywise oracle for the bracket term
    for r, s in enumerate(EPS_A3.unfrozen):
        for t in range(1, 7):
            e = EPS_A3.rows[r][t - 1]
            if s == 1 or t == 1:
                expected = -e
            else:
                eik = EPS_A3.rows[r][0]
                ekj = EPS_A3.rows[0][t - 1]
                sign = (eik > 0) - (eik < 0)
                expected = e + sign * max(eik * ekj, 0)
            assert mutated.rows[r][t - 1] == expected
    with pytest.raises(ClusterError):
        mutate_matrix(EPS_A2, 2)


def _random_skew_symmetrizable(rng, m, n_unfrozen):
    d = [rng.choice([1, 2, 3]) for _ in range(n_unfrozen)]
    rows = [[0] * m for _ in range(n_unfrozen)]
    for r in range(n_unfrozen):
        for t in range(m):
            if t < n_unfrozen:
                if t <= r:
                    continue
                x = rng.randint(-2, 2)
                rows[r][t] = x * d[t]
                rows[t][r] = -x * d[r]
            else:
                rows[r][t] = rng.randint(-2, 2)
    return ExchangeMatrix(m, tuple(range(1, n_unfrozen + 1)),
                          tuple(tuple(r) for r in rows), tuple(d))


def test_matrix_mutation_involution_on_random_matrices():
    rng = random.Random(11)
    for _ in range(500):
        eps = _random_skew_symmetrizable(rng, rng.randint(2, 5),
                                         rng.randint(1, 2))
        for k in eps.unfrozen:
            assert mutate_matrix(mutate_matrix(eps, k), k).rows == eps.rows


def test_mutation_preserves_symmetrizer_and_rank():
    for eps in (EPS_A2, EPS_A3, build_exchange_from_word(B2, (1, 2, 1, 2))):
        assert cluster.full_rank(eps)
        for k in eps.unfrozen:
            mutated = mutate_matrix(eps, k)
            assert mutated.symmetrizer == eps.symmetrizer  # revalidated on init
            assert cluster.full_rank(mutated)


def test_mutate_seed_binomial():
    seed = initial_seed(EPS_A2)
    s1 = mutate_seed(seed, 1)
    assert s1.variable(1) == expr("(A3 + A2)/A1")
    assert s1.variable(2) == expr("A2")
    assert mutate_seed(s1, 1).variables == seed.variables


def test_seed_involution_and_history():
    seed = initial_seed(EPS_A3)
    for k in (1, 2, 3):
        twice = mutate_seed(mutate_seed(seed, k), k)
        assert twice.variables == seed.variables
        assert twice.matrix.rows == seed.matrix.rows
        assert twice.history == (k, k)


def test_laurent_phenomenon_short_words():
    seed = initial_seed(EPS_A3)
    for word in ((1,), (1, 2), (2, 1), (1, 2, 3), (3, 2, 1, 2)):
        assert seed_is_laurent(seed_after_word(seed, word))


def test_laurent_expr_canonical_forms():
    assert expr("(A2 + A3)/A1") == expr("(A3 + A2)*A2/(A1*A2)")
    assert expr("A1/A2").is_laurent()
    assert not expr("1/(A1 + A2)").is_laurent()
    assert expr("0").is_zero()


def test_dominance_examples():
    assert dominance_leq((2, 3, 1), (2, 3, 1), EPS_A2)
    assert dominance_leq((0, -1, 1), (0, 0, 0), EPS_A2)
    assert not dominance_leq((0, 1, 0), (0, 0, 0), EPS_A2)
    assert not dominance_leq((0, 0, 0), (0, 1, 0), EPS_A2)


def test_dominance_requires_full_rank():
    degenerate = ExchangeMatrix(2, (1, 2), ((0, 0), (0, 0)), (1, 1))
    with pytest.raises(ClusterError):
        dominance_leq((0, 0), (0, 0), degenerate)


def test_valuation_examples():
    assert lowest_term_valuation(expr("A1"), EPS_A2) == (1, 0, 0)
    assert lowest_term_valuation(expr("1 + A3/A2"), EPS_A2) == (0, 0, 0)
    with pytest.raises(ClusterError):
        lowest_term_valuation(expr("0"), EPS_A2)


def test_valuation_is_multiplicative():
    rng = random.Random(5)
    for _ in range(30):
        exps = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(4)]
        f = (LaurentExpr.monomial(exps[0], 3) + LaurentExpr.monomial(exps[1], 3))
        g = (LaurentExpr.monomial(exps[2], 3) + LaurentExpr.monomial(exps[3], 3))
        if f.is_zero() or g.is_zero():
            continue
        for tb in cluster.TIEBREAKS:
            assert (lowest_term_valuation(f * g, EPS_A2, tb)
                    == tuple(x + y for x, y in zip(
                        lowest_term_valuation(f, EPS_A2, tb),
                        lowest_term_valuation(g, EPS_A2, tb))))


def test_g_vector_examples():
    res = g_vector(expr("A1"), EPS_A2)
    assert res.g == (1, 0, 0) and res.strict
    res = g_vector(expr("1 + A3/A2"), EPS_A2)
    assert res.g == (0, 0, 0) and res.strict
    assert g_vector(expr("A1 + A2"), EPS_A2) is None
    # A2 + A3 factors as A2 * (1 + Xhat_1): genuinely pointed at (0, 1, 0)
    res = g_vector(expr("A2 + A3"), EPS_A2)
    assert res.g == (0, 1, 0) and res.strict
    res = g_vector(expr("2*A2 + A3"), EPS_A2)
    assert res is not None and not res.strict and res.constant == 2
    with pytest.raises(ClusterError):
        g_vector(expr("1/(A1+A2)"), EPS_A2)


def test_g_vector_of_mutated_variables():
    # one mutation step: A1' = (A2 + A3)/A1 is pointed at (-1, 1, 0)
    seed = mutate_seed(initial_seed(EPS_A2), 1)
    res = g_vector(seed.variable(1), EPS_A2)
    assert res is not None and res.strict
    assert res.g == (-1, 1, 0)
    assert lowest_term_valuation(seed.variable(1), EPS_A2) == res.g


def test_valuation_equals_g_vector_for_pointed():
    rng = random.Random(9)
    for eps in (EPS_A2, EPS_A3):
        for _ in range(10):
            g = tuple(rng.randint(-3, 3) for _ in range(eps.size))
            f = LaurentExpr.monomial(g, eps.size)
            extra = LaurentExpr.integer(1, eps.size)
            for r in range(len(eps.unfrozen)):
                a = rng.randint(0, 2)
                xhat = LaurentExpr.monomial(eps.rows[r], eps.size)
                for _ in range(a):
                    extra = extra * xhat
            f = f + f * extra if rng.random() < 0.5 else f * (
                LaurentExpr.integer(1, eps.size) + extra)
            res = g_vector(f, eps)
            if res is None:
                continue
            for tb in cluster.TIEBREAKS:
                assert lowest_term_valuation(f, eps, tb) == res.g


def test_tropical_examples():
    assert tropical_mutate((0, 0, 0), EPS_A2, 1) == (0, 0, 0)
    assert tropical_mutate((1, 0, 0), EPS_A2, 1) == (-1, 0, 1)
    with pytest.raises(ClusterError):
        tropical_mutate((0, 0, 0), EPS_A2, 3)


@settings(max_examples=200, deadline=None)
@given(st.tuples(*(st.integers(-50, 50) for _ in range(3))),
       st.sampled_from([1]))
def test_tropical_involution_property(g, k):
    mutated = mutate_matrix(EPS_A2, k)
    assert tropical_mutate(tropical_mutate(g, EPS_A2, k), mutated, k) == g


@settings(max_examples=200, deadline=None)
@given(st.tuples(*(st.integers(-50, 50) for _ in range(6))),
       st.sampled_from([1, 2, 3]))
def test_tropical_involution_property_a3(g, k):
    mutated = mutate_matrix(EPS_A3, k)
    assert tropical_mutate(tropical_mutate(g, EPS_A3, k), mutated, k) == g


def test_upsilon_matrix_example():
    m = upsilon_matrix(A2, (1, 2, 1))
    assert m == ((1, 0, 0), (1, 1, 0), (0, 1, 1))
    assert linalg.det(m) == 1
    minv = upsilon_inverse(m)
    assert linalg.mat_mul(m, minv) == linalg.identity(3)


def test_upsilon_unit_diagonal_and_unimodular():
    for datum in (A2, A3, B2):
        group = rootdata.weyl_group(datum)
        for word in group.reduced_words(group.longest):
            m = upsilon_matrix(datum, word)
            assert all(m[k][k] == 1 for k in range(len(word)))
            assert linalg.det(m) in (1, -1)


def test_upsilon_rejects_non_longest():
    with pytest.raises(ClusterError):
        upsilon_matrix(A2, (1, 2))


def test_cluster_polytope_a2():
    ctx = zcrystal.word_context(A2, (1, 2, 1))
    res = cluster_polytope(ctx, (1, 1))
    assert len(res.g_points) == 8
    minv = upsilon_inverse(res.upsilon)
    crystal = zcrystal.generate_B_lambda(ctx, (1, 1))
    expected = {tuple(upsilon_apply(minv, p)) for p in crystal.phi_vectors()}
    assert set(res.g_points) == expected


def test_cluster_polytope_zero_weight():
    ctx = zcrystal.word_context(A2, (1, 2, 1))
    res = cluster_polytope(ctx, (0, 0))
    assert res.g_points == [(0, 0, 0)]


def test_cluster_polytope_b2():
    ctx = zcrystal.word_context(B2, (1, 2, 1, 2))
    res = cluster_polytope(ctx, (1, 1))
    assert len(res.g_points) == 16
    assert linalg.det(res.upsilon) in (1, -1)


def test_transport_identity_and_involution():
    ctx = zcrystal.word_context(A2, (1, 2, 1))
    res = cluster_polytope(ctx, (1, 1))
    same, eps_same = transport_polytope(res.polytope, EPS_A2, ())
    assert polytope.polytopes_equal(same, res.polytope)
    assert eps_same.rows == EPS_A2.rows
    moved, eps_moved = transport_polytope(res.polytope, EPS_A2, (1,))
    assert len(polytope.lattice_points(moved)) == 8
    back, _ = transport_polytope(moved, eps_moved, (1,))
    assert polytope.polytopes_equal(back, res.polytope)


def test_quiver_rejects_large_entries():
    eps = build_exchange_from_word(B2, (1, 2, 1, 2))
    with pytest.raises(ClusterError):
        cluster.quiver_dot(eps)


def test_seed_variable_evaluation():
    seed = mutate_seed(initial_seed(EPS_A2), 1)
    from fractions import Fraction
    val = seed.variable(1).evaluate([Fraction(2), Fraction(3), Fraction(5)])
    assert val == Fraction(3 + 5, 2)
    with pytest.raises(ZeroDivisionError):
        seed.variable(1).evaluate([0, 1, 1])
