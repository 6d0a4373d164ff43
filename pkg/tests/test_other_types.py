"""Cross-series coverage: the triple bond, the doubly-laced types and the
forked diagram, checked against textbook dimensions and multiplicities."""

import warnings

import pytest

from semitoric import degeneration, polytope, rootdata, zcrystal


def _context(series, rank):
    datum = rootdata.build_root_datum(series, rank)
    group = rootdata.weyl_group(datum)
    return datum, zcrystal.word_context(datum, group.longest.word)


def test_g2_dimensions_and_adjoint_multiplicity():
    g2 = rootdata.build_root_datum("G", 2)
    assert zcrystal.weyl_dimension(g2, (1, 0)) == 7
    assert zcrystal.weyl_dimension(g2, (0, 1)) == 14
    full, dim = zcrystal.weight_multiplicities_oracle(g2, (0, 1))
    assert dim == 14 and full[(0, 0)] == 2


def test_f4_adjoint():
    f4 = rootdata.build_root_datum("F", 4)
    group = rootdata.weyl_group(f4)
    assert len(group) == 1152 and group.longest.length == 24
    full, dim = zcrystal.weight_multiplicities_oracle(f4, (1, 0, 0, 0))
    assert dim == 52 and full[(0, 0, 0, 0)] == 4


@pytest.mark.parametrize("series,rank,lam,dim", [
    ("C", 3, (1, 0, 0), 6),
    ("D", 4, (1, 0, 0, 0), 8),
    ("G", 2, (1, 0), 7),
    ("G", 2, (0, 1), 14),
])
def test_crystal_characters_across_series(series, rank, lam, dim):
    datum, ctx = _context(series, rank)
    crystal = zcrystal.generate_B_lambda(ctx, lam)
    oracle, total = zcrystal.weight_multiplicities_oracle(datum, lam)
    assert len(crystal) == dim == total
    assert crystal.weight_multiset() == oracle
    assert len(set(crystal.phi_vectors())) == dim
    assert len(set(crystal.psi_vectors())) == dim


def test_g2_string_polytope_saturates_late_and_fractionally():
    # the 7-dimensional fundamental of the triple-bond type: the level hulls
    # stabilize only at level 3 and the polytope has thirds among its vertex
    # coordinates, while its lattice points are still the 7 value vectors
    _, ctx = _context("G", 2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        shallow = polytope.string_polytope(ctx, (1, 0), k_max=2)
    assert not shallow.saturated
    deep = polytope.string_polytope(ctx, (1, 0), k_max=4)
    assert deep.saturated and deep.level == 3
    assert len(deep.polytope.vertices) == 13
    denominators = {x.denominator for v in deep.polytope.vertices for x in v}
    assert denominators == {1, 2, 3}
    assert len(polytope.lattice_points(deep.polytope)) == 7


def test_g2_scan_certifies_all_pairs():
    _, ctx = _context("G", 2)
    group = rootdata.weyl_group(ctx.datum)
    pairs = sum(1 for v in group.elements for w in group.elements
                if group.bruhat_leq(v, w))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        summary = degeneration.all_pairs_scan(ctx, (1, 0), "string",
                                              with_minkowski=False)
    assert summary.pairs == pairs == 73
    assert summary.ok
