import itertools
import random
from fractions import Fraction

import pytest

from semitoric import polytope, rootdata, zcrystal
from semitoric.polytope import (FaceUnionCertificate, NotAFaceUnion,
                                PolytopeError, convex_hull, enumerate_faces,
                                lattice_points, minkowski_condition_check,
                                nz_polytope, polytopes_equal, string_polytope,
                                union_of_faces_decompose,
                                vertices_from_halfspaces)

A1 = rootdata.build_root_datum("A", 1)
A2 = rootdata.build_root_datum("A", 2)
CTX_A2 = zcrystal.word_context(A2, (1, 2, 1))
CTX_A1 = zcrystal.word_context(A1, (1,))

PAPER_PHI = [(0, 0, 0), (1, 0, 0), (0, 1, 1), (0, 2, 1), (1, 2, 1),
             (0, 1, 0), (1, 1, 0), (2, 1, 0)]

STRING_HREP = {((-1, 0, 0), Fraction(0)), ((1, -1, 2), Fraction(1)),
               ((0, -1, 1), Fraction(0)), ((0, 1, -1), Fraction(1)),
               ((0, 0, -1), Fraction(0)), ((0, 0, 1), Fraction(1))}
NZ_HREP = {((-1, 0, 0), Fraction(0)), ((1, 0, 0), Fraction(1)),
           ((0, 0, -1), Fraction(0)), ((0, 0, 1), Fraction(1)),
           ((1, -1, 0), Fraction(0)), ((0, 1, -1), Fraction(1))}


def hrep(poly):
    return {(h.normal, h.offset) for h in poly.halfspaces}


def test_hull_triangle():
    tri = convex_hull([(0, 0), (1, 0), (0, 1), (Fraction(1, 4), Fraction(1, 4))])
    assert len(tri.vertices) == 3 and tri.dim == 2
    assert hrep(tri) == {((-1, 0), Fraction(0)), ((0, -1), Fraction(0)),
                         ((1, 1), Fraction(1))}


def test_hull_single_point():
    p = convex_hull([(3, 4, 5)])
    assert p.dim == 0 and p.halfspaces == ()
    assert len(p.equations) == 3
    assert lattice_points(p) == [(3, 4, 5)]


def test_hull_lower_dimensional():
    seg = convex_hull([(0, 0, 0), (2, 2, 0), (1, 1, 0)])
    assert seg.dim == 1
    assert len(seg.vertices) == 2
    assert len(seg.equations) == 2
    assert lattice_points(seg) == [(0, 0, 0), (1, 1, 0), (2, 2, 0)]


def test_hull_of_paper_points():
    poly = convex_hull(PAPER_PHI)
    assert hrep(poly) == STRING_HREP
    assert len(poly.vertices) == 7  # (1,1,0) is interior to an edge


def test_hull_determinism():
    rng = random.Random(1)
    pts = [(rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(-4, 4))
           for _ in range(40)]
    ref = convex_hull(pts)
    for _ in range(3):
        rng.shuffle(pts)
        again = convex_hull(pts)
        assert again.vertices == ref.vertices
        assert again.halfspaces == ref.halfspaces


def test_hull_caps():
    with pytest.raises(PolytopeError):
        convex_hull([])
    with pytest.raises(PolytopeError):
        convex_hull([tuple(range(13))])


def test_faces_counts():
    tri = convex_hull([(0, 0), (1, 0), (0, 1)])
    assert len(enumerate_faces(tri)) == 7
    seg = convex_hull([(0,), (3,)])
    assert len(enumerate_faces(seg)) == 3
    point = convex_hull([(5, 5)])
    assert len(enumerate_faces(point)) == 1


def _brute_force_faces(poly):
    """All faces as vertex index sets, via every subset of halfspaces."""
    verts = poly.vertices
    found = {frozenset(range(len(verts)))}
    for r in range(1, len(poly.halfspaces) + 1):
        for subset in itertools.combinations(range(len(poly.halfspaces)), r):
            tight = frozenset(
                i for i, v in enumerate(verts)
                if all(poly.halfspaces[h].tight(v) for h in subset))
            if tight:
                found.add(tight)
    return found


def test_faces_match_brute_force():
    poly = string_polytope(CTX_A2, (1, 1)).polytope
    got = {frozenset(f.vertex_indices) for f in enumerate_faces(poly)}
    assert got == _brute_force_faces(poly)


def test_faces_closed_under_intersection():
    poly = string_polytope(CTX_A2, (1, 1)).polytope
    faces = {frozenset(f.vertex_indices) for f in enumerate_faces(poly)}
    for a in faces:
        for b in faces:
            assert (a & b) in faces or not (a & b)


def test_lattice_points_examples():
    tri = convex_hull([(0, 0), (2, 0), (0, 2)])
    assert len(lattice_points(tri)) == 6
    poly = string_polytope(CTX_A2, (1, 1)).polytope
    assert sorted(lattice_points(poly)) == sorted(PAPER_PHI)
    nz = nz_polytope(CTX_A2, (1, 1)).polytope
    crystal = zcrystal.generate_B_lambda(CTX_A2, (1, 1))
    assert set(lattice_points(nz)) == set(crystal.psi_vectors())


def test_string_polytope_examples():
    res = string_polytope(CTX_A2, (1, 1))
    assert res.saturated and res.level == 1
    assert hrep(res.polytope) == STRING_HREP
    seg = string_polytope(CTX_A1, (4,))
    assert [v[0] for v in seg.polytope.vertices] == [0, 4]


def test_nz_polytope_examples():
    res = nz_polytope(CTX_A2, (1, 1))
    assert res.saturated
    assert hrep(res.polytope) == NZ_HREP
    seg = nz_polytope(CTX_A1, (3,))
    assert [v[0] for v in seg.polytope.vertices] == [0, 3]


def test_zero_weight_polytope():
    res = string_polytope(CTX_A2, (0, 0))
    assert res.polytope.dim == 0
    assert lattice_points(res.polytope) == [(0, 0, 0)]


def test_dilation_consistency():
    for lam in ((1, 1), (2, 1)):
        res = string_polytope(CTX_A2, lam)
        doubled = polytope.dilate(res.polytope, 2)
        crystal2 = zcrystal.generate_B_lambda(
            CTX_A2, tuple(2 * x for x in lam))
        level2 = set(crystal2.phi_vectors())
        points2 = set(lattice_points(doubled))
        assert level2 <= points2
        if res.saturated and res.level <= 2:
            assert level2 == points2


def test_round_trip_vertices():
    for poly in (string_polytope(CTX_A2, (1, 1)).polytope,
                 nz_polytope(CTX_A2, (2, 1)).polytope,
                 convex_hull([(0, 0, 0), (2, 2, 0), (0, 2, 0)]),
                 convex_hull([(7, 8)])):
        rebuilt = vertices_from_halfspaces(list(poly.halfspaces),
                                           list(poly.equations),
                                           poly.ambient_dim)
        assert tuple(rebuilt) == poly.vertices


def test_union_of_faces_trivial_cases():
    poly = string_polytope(CTX_A2, (1, 1)).polytope
    pts = lattice_points(poly)
    whole = union_of_faces_decompose(poly, pts)
    assert isinstance(whole, FaceUnionCertificate)
    assert len(whole.faces) == 1 and whole.faces[0].dim == poly.dim
    vertex = union_of_faces_decompose(poly, [(1, 2, 1)])
    assert isinstance(vertex, FaceUnionCertificate)
    assert len(vertex.faces) == 1 and vertex.faces[0].dim == 0


def test_union_of_faces_richardson_case():
    # The Richardson set {(1,0,0),(0,1,1),(0,2,1)} is covered by two unit
    # edges meeting at (0,1,1); the decomposition into inclusion-maximal
    # faces consists of exactly those edges.  (A vertex-plus-edge cover of
    # the same three points exists but is not face-maximal, and the level-2
    # Richardson set has five points, which pins the two-edge region.)
    poly = string_polytope(CTX_A2, (1, 1)).polytope
    s = [(1, 0, 0), (0, 1, 1), (0, 2, 1)]
    cert = union_of_faces_decompose(poly, s)
    assert isinstance(cert, FaceUnionCertificate)
    edges = {tuple(sorted(tuple(int(x) for x in v) for v in f.vertices()))
             for f in cert.faces}
    assert edges == {((0, 1, 1), (0, 2, 1)), ((0, 1, 1), (1, 0, 0))}
    covered = set()
    for f in cert.faces:
        covered.update(f.lattice_points())
    assert covered == set(s)


def test_union_of_faces_witness():
    poly = string_polytope(CTX_A2, (1, 1)).polytope
    result = union_of_faces_decompose(poly, [(0, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert isinstance(result, NotAFaceUnion)
    assert result.witness in {(0, 0, 0), (0, 1, 0), (1, 1, 0)}
    with pytest.raises(PolytopeError):
        union_of_faces_decompose(poly, [(9, 9, 9)])


def _oracle_decompose(poly, s):
    """Exhaustive search over faces: coverable iff every point lies on a face
    whose lattice points stay inside s; certificate = maximal such faces."""
    s = set(s)
    faces = [(f, set(f.lattice_points())) for f in enumerate_faces(poly)]
    inside = [(f, pts) for f, pts in faces if pts <= s]
    covered = set().union(*(pts for _, pts in inside)) if inside else set()
    if covered != s:
        return None
    keep = []
    for f, _ in inside:
        if not any(set(g.vertex_indices) > set(f.vertex_indices)
                   for g, _ in inside):
            keep.append(frozenset(f.vertex_indices))
    return frozenset(keep)


def test_union_of_faces_matches_oracle_on_random_polytopes():
    rng = random.Random(7)
    for _ in range(12):
        dim = rng.choice([2, 3])
        pts = {tuple(rng.randint(0, 3) for _ in range(dim))
               for _ in range(rng.randint(4, 9))}
        poly = convex_hull(sorted(pts))
        lat = lattice_points(poly)
        for _ in range(6):
            size = rng.randint(1, len(lat))
            s = rng.sample(lat, size)
            got = union_of_faces_decompose(poly, s)
            want = _oracle_decompose(poly, s)
            if want is None:
                assert isinstance(got, NotAFaceUnion)
            else:
                assert isinstance(got, FaceUnionCertificate)
                assert frozenset(frozenset(f.vertex_indices)
                                 for f in got.faces) == want


def test_minkowski_examples():
    group = rootdata.weyl_group(A2)
    s1 = group.element_from_word((1,))
    rep = minkowski_condition_check(CTX_A2, (1, 1), (1, 1), group.identity,
                                    group.longest)
    assert rep.ok  # complement empty, condition (i) vacuous
    rep2 = minkowski_condition_check(CTX_A2, (1, 1), (1, 1), s1, group.longest)
    assert rep2.ok
    rep3 = minkowski_condition_check(CTX_A2, (1, 1), (1, 1), s1, s1)
    assert rep3.ok and rep3.condition_ii


def test_polytope_json_and_text():
    res = string_polytope(CTX_A2, (1, 1))
    data = polytope.polytope_to_json(res.polytope)
    assert len(data["vertices"]) == 7
    assert len(data["lattice_points"]) == 8
    assert {"normal": [0, 0, 1], "offset": 1} in data["halfspaces"]
    text = polytope.inequality_text(res.polytope)
    assert "0 <= a_1 <= a_2 - 2*a_3 + 1" in text
    assert "a_3 <= a_2 <= a_3 + 1" in text
    assert "0 <= a_3 <= 1" in text


def test_fractional_vertices_serialize():
    poly = convex_hull([(Fraction(1, 2),), (Fraction(3, 2),)])
    data = polytope.polytope_to_json(poly)
    assert data["vertices"] == [["1/2"], ["3/2"]]
    assert lattice_points(poly) == [(1,)]


def test_polytopes_equal_is_representation_independent():
    p = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    q = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1),
                     (Fraction(1, 2), Fraction(1, 2))])
    assert polytopes_equal(p, q)
    assert not polytopes_equal(p, convex_hull([(0, 0), (1, 0), (0, 1)]))
