"""Exact rational convex polytopes: hulls, irredundant H-representations,
face lattices, lattice points, and the union-of-faces certifier.

Hulls are computed by the double description method on the homogenization
cone of the point set, run inside the affine hull so the cone is pointed and
full-dimensional; all pivoting is integer/rational.  A polytope stores its
vertices, an irredundant list of facet inequalities ``normal . x <= offset``
with primitive integer normals, and the affine-hull equations
``normal . x = offset`` separately.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, gcd

from . import linalg, rootdata, zcrystal
from .zcrystal import WordContext

MAX_AMBIENT_DIM = 12
MAX_POINTS = 100_000


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Halfspace:
    normal: tuple[int, ...]
    offset: Fraction

    def value(self, x) -> Fraction:
        return self.offset - linalg.dot(self.normal, x)

    def holds(self, x) -> bool:
        return self.value(x) >= 0

    def tight(self, x) -> bool:
        return self.value(x) == 0


@dataclass(frozen=True)
class Equation:
    normal: tuple[int, ...]
    offset: Fraction

    def holds(self, x) -> bool:
        return linalg.dot(self.normal, x) == self.offset


@dataclass(frozen=True)
class RationalPolytope:
    ambient_dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    halfspaces: tuple[Halfspace, ...]
    equations: tuple[Equation, ...]
    dim: int

    def contains(self, x) -> bool:
        return (all(e.holds(x) for e in self.equations)
                and all(h.holds(x) for h in self.halfspaces))

    def tight_halfspaces(self, x) -> tuple[int, ...]:
        return tuple(i for i, h in enumerate(self.halfspaces) if h.tight(x))


@dataclass(frozen=True)
class Face:
    polytope: RationalPolytope
    tight: tuple[int, ...]
    vertex_indices: tuple[int, ...]
    dim: int

    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.polytope.vertices[i] for i in self.vertex_indices)

    def lattice_points(self) -> list[tuple[int, ...]]:
        pts = lattice_points(self.polytope)
        hs = [self.polytope.halfspaces[i] for i in self.tight]
        return [p for p in pts if all(h.tight(p) for h in hs)]


# ---------------------------------------------------------------------------
# Double description core
# ---------------------------------------------------------------------------

def _reduce_int_vector(v: tuple[int, ...]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return v if g in (0, 1) else tuple(x // g for x in v)


def _dd_extreme_rays(rows: list[tuple[int, ...]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {y : row . y >= 0 for all rows}.

    Requires the rows to span R^dim (so the cone is pointed).  Deterministic:
    rays emerge gcd-reduced and sorted.
    """
    # initial simplicial cone from dim independent rows
    init: list[int] = []
    for idx in range(len(rows)):
        if linalg.rank([rows[i] for i in init] + [rows[idx]]) > len(init):
            init.append(idx)
            if len(init) == dim:
                break
    if len(init) < dim:
        raise PolytopeError("constraint rows do not span the ambient space")
    dmat = [rows[i] for i in init]
    dinv = linalg.inverse(dmat)
    rays: list[tuple[int, ...]] = []
    masks: list[int] = []
    for j in range(dim):
        col = _reduce_int_vector(linalg.primitive([dinv[r][j] for r in range(dim)]))
        rays.append(col)
        mask = 0
        for t, i in enumerate(init):
            if linalg.dot(rows[i], col) == 0:
                mask |= 1 << t
        masks.append(mask)

    processed = len(init)
    order = init + [i for i in range(len(rows)) if i not in init]
    for t in range(dim, len(order)):
        row = rows[order[t]]
        vals = [linalg.dot(row, r) for r in rays]
        if all(v >= 0 for v in vals):
            for j, v in enumerate(vals):
                if v == 0:
                    masks[j] |= 1 << t
            continue
        keep_idx = [j for j, v in enumerate(vals) if v > 0]
        zero_idx = [j for j, v in enumerate(vals) if v == 0]
        neg_idx = [j for j, v in enumerate(vals) if v < 0]
        new_rays: list[tuple[int, ...]] = []
        new_masks: list[int] = []
        for p in keep_idx:
            for m in neg_idx:
                common = masks[p] & masks[m]
                adjacent = True
                for j in range(len(rays)):
                    if j in (p, m):
                        continue
                    if common & masks[j] == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = tuple(vals[p] * rays[m][c] - vals[m] * rays[p][c]
                              for c in range(dim))
                new_rays.append(_reduce_int_vector(combo))
                new_masks.append(common | (1 << t))
        rays = ([rays[j] for j in keep_idx] + [rays[j] for j in zero_idx] + new_rays)
        masks = ([masks[j] for j in keep_idx]
                 + [masks[j] | (1 << t) for j in zero_idx] + new_masks)
    paired = sorted(set(rays))
    return paired


# ---------------------------------------------------------------------------
# Hull construction
# ---------------------------------------------------------------------------

def _affine_basis(points: list[tuple[Fraction, ...]]) -> list[int]:
    """Indices of an affinely independent spanning subset, first point included."""
    base = [0]
    for idx in range(1, len(points)):
        rows = [tuple(points[i][c] - points[0][c] for c in range(len(points[0])))
                for i in base[1:]]
        cand = tuple(points[idx][c] - points[0][c] for c in range(len(points[0])))
        if linalg.rank(rows + [cand]) > len(rows):
            base.append(idx)
    return base


def convex_hull(points) -> RationalPolytope:
    """Exact convex hull of rational points; deterministic output ordering."""
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    if not pts:
        raise PolytopeError("empty point set")
    ambient = len(pts[0])
    if any(len(p) != ambient for p in pts):
        raise PolytopeError("points of mixed dimension")
    if ambient > MAX_AMBIENT_DIM:
        raise PolytopeError(f"ambient dimension {ambient} exceeds {MAX_AMBIENT_DIM}")
    if len(pts) > MAX_POINTS:
        raise PolytopeError(f"{len(pts)} points exceed the cap {MAX_POINTS}")

    base = _affine_basis(pts)
    r = len(base) - 1
    basis_vecs = [tuple(pts[i][c] - pts[base[0]][c] for c in range(ambient))
                  for i in base[1:]]

    # affine-hull equations: integer-primitive normals vanishing on the basis
    equations = []
    for nrm in linalg.nullspace(basis_vecs, ambient):
        nint = linalg.primitive(nrm)
        if all(x == 0 for x in nint):
            continue
        if next(x for x in nint if x != 0) < 0:
            nint = tuple(-x for x in nint)
        equations.append(Equation(nint, Fraction(linalg.dot(nint, pts[base[0]]))))
    equations.sort(key=lambda e: (e.normal, e.offset))

    if r == 0:
        return RationalPolytope(ambient, (pts[0],), tuple(), tuple(equations), 0)

    # coordinates inside the affine hull: y solves sum_j y_j basis_j = p - p0,
    # read off on a pivot coordinate set
    pivot_cols: list[int] = []
    for c in range(ambient):
        rows = [[basis_vecs[j][cc] for cc in pivot_cols + [c]] for j in range(r)]
        if linalg.rank(rows) > len(pivot_cols):
            pivot_cols.append(c)
            if len(pivot_cols) == r:
                break
    msub = [[basis_vecs[j][c] for j in range(r)] for c in pivot_cols]
    minv = linalg.inverse(msub)

    def subspace_coords(p) -> tuple[Fraction, ...]:
        rhs = [p[c] - pts[base[0]][c] for c in pivot_cols]
        return tuple(linalg.mat_vec(minv, rhs))

    ys = [subspace_coords(p) for p in pts]
    denom = 1
    for y in ys:
        for x in y:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    zs = [tuple(int(x * denom) for x in y) for y in ys]

    rows = [(1,) + z for z in zs]
    dual_rays = _dd_extreme_rays(rows, r + 1)

    halfspaces = []
    for ray in dual_rays:
        b, a = ray[0], ray[1:]
        # b + a . z >= 0 on all scaled subspace points; lift to ambient x:
        # z = denom * Minv * P_pivot (x - p0)
        lifted = [Fraction(0)] * ambient
        for jj, c in enumerate(pivot_cols):
            coef = sum(Fraction(a[col]) * minv[col][jj] for col in range(r))
            lifted[c] = denom * coef
        const = Fraction(b) - linalg.dot(lifted, pts[base[0]])
        # inequality: -(lifted) . x <= const
        normal = linalg.primitive([-x for x in lifted])
        scale = next(Fraction(-lifted[c], normal[c]) for c in range(ambient)
                     if normal[c] != 0)
        halfspaces.append(Halfspace(normal, const / scale))
    halfspaces.sort(key=lambda h: (h.normal, h.offset))

    verts = []
    for p in pts:
        tight_normals = [h.normal for h in halfspaces if h.tight(p)]
        if linalg.rank(tight_normals) >= r:
            verts.append(p)
    poly = RationalPolytope(ambient, tuple(verts), tuple(halfspaces),
                            tuple(equations), r)
    for p in pts:
        assert poly.contains(p), "hull does not contain an input point"
    return poly


def vertices_from_halfspaces(halfspaces, equations, ambient_dim: int
                             ) -> list[tuple[Fraction, ...]]:
    """Vertex set of a bounded polytope given an irredundant facet description.

    Used for round-trip checks; assumes the system has a solution and the
    inequalities are facets of the (possibly lower-dimensional) polytope.
    """
    eq_rows = [list(e.normal) for e in equations]
    eq_rhs = [e.offset for e in equations]
    if eq_rows:
        x0 = linalg.solve(eq_rows, eq_rhs)
        if x0 is None:
            raise PolytopeError("inconsistent equations")
        basis = linalg.nullspace(eq_rows, ambient_dim)
    else:
        x0 = tuple(Fraction(0) for _ in range(ambient_dim))
        basis = [tuple(Fraction(1 if i == j else 0) for j in range(ambient_dim))
                 for i in range(ambient_dim)]
    r = len(basis)
    if r == 0:
        return [tuple(x0)]
    rows = []
    for h in halfspaces:
        c0 = h.offset - linalg.dot(h.normal, x0)
        coefs = [-linalg.dot(h.normal, bvec) for bvec in basis]
        rows.append(linalg.primitive([c0] + coefs))
    rows.append(tuple([1] + [0] * r))
    rays = _dd_extreme_rays(rows, r + 1)
    verts = set()
    for ray in rays:
        t = ray[0]
        if t <= 0:
            raise PolytopeError("unbounded direction found; polytope expected")
        u = [Fraction(c, t) for c in ray[1:]]
        x = [x0[c] + sum(u[j] * basis[j][c] for j in range(r))
             for c in range(ambient_dim)]
        verts.add(tuple(x))
    return sorted(verts)


def polytopes_equal(p: RationalPolytope, q: RationalPolytope) -> bool:
    """Representation-independent equality by double inclusion of vertex sets."""
    return (all(q.contains(v) for v in p.vertices)
            and all(p.contains(v) for v in q.vertices))


# ---------------------------------------------------------------------------
# Faces
# ---------------------------------------------------------------------------

def enumerate_faces(polytope: RationalPolytope) -> list[Face]:
    """All nonempty faces, each exactly once, including the polytope and its
    vertices; sorted by (dim, vertex index set)."""
    verts = polytope.vertices
    nv = len(verts)
    facet_sets = []
    for i, h in enumerate(polytope.halfspaces):
        facet_sets.append(frozenset(j for j in range(nv) if h.tight(verts[j])))
    all_idx = frozenset(range(nv))
    seen = {all_idx}
    queue = [all_idx]
    while queue:
        cur = queue.pop()
        for fs in facet_sets:
            nxt = cur & fs
            if nxt and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)

    faces = []
    for vset in seen:
        tight = tuple(i for i, fs in enumerate(facet_sets) if vset <= fs)
        pts = [verts[j] for j in sorted(vset)]
        if len(pts) == 1:
            fdim = 0
        else:
            diffs = [tuple(p[c] - pts[0][c] for c in range(polytope.ambient_dim))
                     for p in pts[1:]]
            fdim = linalg.rank(diffs)
        faces.append(Face(polytope, tight, tuple(sorted(vset)), fdim))
    faces.sort(key=lambda f: (f.dim, f.vertex_indices))
    return faces


# ---------------------------------------------------------------------------
# Lattice points
# ---------------------------------------------------------------------------

def lattice_points(polytope: RationalPolytope) -> list[tuple[int, ...]]:
    """Exact enumeration by recursive bounding box plus constraint filtering."""
    return list(_lattice_points_cached(polytope))


@lru_cache(maxsize=4096)
def _lattice_points_cached(polytope: RationalPolytope) -> tuple[tuple[int, ...], ...]:
    if not polytope.vertices:
        return tuple()
    ambient = polytope.ambient_dim
    lows, highs = [], []
    for c in range(ambient):
        vals = [v[c] for v in polytope.vertices]
        lows.append(ceil(min(vals)))
        highs.append(floor(max(vals)))
        if lows[-1] > highs[-1]:
            return []

    constraints = ([(h.normal, h.offset, False) for h in polytope.halfspaces]
                   + [(e.normal, e.offset, True) for e in polytope.equations])
    # constraints checkable once the first d coordinates are fixed
    by_depth: list[list[tuple]] = [[] for _ in range(ambient + 1)]
    for normal, offset, is_eq in constraints:
        depth = max((c + 1 for c in range(ambient) if normal[c] != 0), default=0)
        by_depth[depth].append((normal, offset, is_eq))

    out: list[tuple[int, ...]] = []
    point = [0] * ambient

    def rec(depth: int) -> None:
        if depth == ambient:
            out.append(tuple(point))
            return
        for val in range(lows[depth], highs[depth] + 1):
            point[depth] = val
            ok = True
            for normal, offset, is_eq in by_depth[depth + 1]:
                s = sum(normal[c] * point[c] for c in range(depth + 1))
                if (s != offset) if is_eq else (s > offset):
                    ok = False
                    break
            if ok:
                rec(depth + 1)

    for normal, offset, is_eq in by_depth[0]:
        if (offset != 0) if is_eq else (offset < 0):
            return tuple()
    rec(0)
    return tuple(out)


# ---------------------------------------------------------------------------
# String / Nakashima-Zelevinsky polytopes via level hulls
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelHullResult:
    polytope: RationalPolytope
    saturated: bool
    level: int


class LevelFamily:
    """Value sets of the crystals of the dilated weights, one level at a time.

    Each level's cardinality is checked against the Weyl dimension oracle on
    construction.
    """

    def __init__(self, ctx: WordContext, weight, coords: str,
                 cap: int = zcrystal._CRYSTAL_CAP):
        if coords not in ("phi", "psi"):
            raise PolytopeError("coords must be 'phi' or 'psi'")
        self.context = ctx
        self.base_weight = tuple(int(x) for x in weight)
        self.coords = coords
        self.cap = cap
        self._levels: dict[int, tuple[tuple[int, ...], ...]] = {}

    def level(self, k: int) -> tuple[tuple[int, ...], ...]:
        if k not in self._levels:
            mu = rootdata.scale_weight(k, self.base_weight)
            crystal = zcrystal.generate_B_lambda(self.context, mu, cap=self.cap)
            vecs = (crystal.phi_vectors() if self.coords == "phi"
                    else crystal.psi_vectors())
            if len(set(vecs)) != zcrystal.weyl_dimension(self.context.datum, mu):
                raise PolytopeError(
                    f"level-{k} value set has the wrong cardinality")
            self._levels[k] = tuple(sorted(vecs))
        return self._levels[k]


@lru_cache(maxsize=256)
def _polytope_from_levels(ctx: WordContext, weight, k_max: int, coords: str,
                          cap: int) -> LevelHullResult:
    if not rootdata.is_dominant(tuple(weight)):
        raise PolytopeError(f"weight {tuple(weight)} is not dominant")
    if k_max < 1:
        raise PolytopeError("k_max must be >= 1")
    family = LevelFamily(ctx, weight, coords, cap)
    points: set[tuple[Fraction, ...]] = set()
    prev: RationalPolytope | None = None
    for k in range(1, k_max + 1):
        points.update(tuple(Fraction(x, k) for x in v) for v in family.level(k))
        hull = convex_hull(points)
        if prev is not None and polytopes_equal(prev, hull):
            result = LevelHullResult(prev, True, k - 1)
            break
        prev = hull
    else:
        result = LevelHullResult(prev, False, k_max)
        warnings.warn(
            f"level hull did not saturate by level {k_max}; "
            "returning the deepest hull computed", stacklevel=3)
    got = set(lattice_points(result.polytope))
    expected = set(family.level(1))
    assert got == expected, (
        "lattice points of the level hull differ from the level-1 value set")
    return result


def string_polytope(ctx: WordContext, weight, k_max: int = 3,
                    cap: int = zcrystal._CRYSTAL_CAP) -> LevelHullResult:
    """Hull of the scaled string-parametrization sets, with saturation flag."""
    return _polytope_from_levels(ctx, tuple(int(x) for x in weight), k_max,
                                 "phi", cap)


def nz_polytope(ctx: WordContext, weight, k_max: int = 3,
                cap: int = zcrystal._CRYSTAL_CAP) -> LevelHullResult:
    """Hull of the scaled embedding-coordinate sets, with saturation flag."""
    return _polytope_from_levels(ctx, tuple(int(x) for x in weight), k_max,
                                 "psi", cap)


# ---------------------------------------------------------------------------
# Union-of-faces certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceUnionCertificate:
    faces: tuple[Face, ...]


@dataclass(frozen=True)
class NotAFaceUnion:
    witness: tuple[int, ...]


def union_of_faces_decompose(polytope: RationalPolytope, point_set
                             ) -> FaceUnionCertificate | NotAFaceUnion:
    """Decompose a lattice-point subset as a union of faces, if possible.

    Returns the inclusion-maximal faces whose lattice points lie inside the
    set when they jointly cover it, otherwise a witness point not covered.
    """
    s = {tuple(int(x) for x in p) for p in point_set}
    all_points = set(lattice_points(polytope))
    if not s <= all_points:
        raise PolytopeError("point set is not contained in the lattice points")
    inside = []
    for face in enumerate_faces(polytope):
        pts = set(face.lattice_points())
        if pts <= s:
            inside.append((face, pts))
    covered = set()
    for _, pts in inside:
        covered |= pts
    if covered != s:
        return NotAFaceUnion(min(s - covered))
    maximal = []
    for face, _ in inside:
        vs = set(face.vertex_indices)
        if not any(set(other.vertex_indices) > vs for other, _ in inside):
            maximal.append(face)
    maximal.sort(key=lambda f: (f.dim, f.vertex_indices))
    return FaceUnionCertificate(tuple(maximal))


# ---------------------------------------------------------------------------
# Pairwise monoid conditions at weight slices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MinkowskiReport:
    condition_i: bool
    condition_ii: bool
    witnesses_i: tuple
    witnesses_ii: tuple

    @property
    def ok(self) -> bool:
        return self.condition_i and self.condition_ii


def minkowski_condition_check(ctx: WordContext, weight, weight2, v, w,
                              dilation: int = 2, coords: str = "phi",
                              cap: int = zcrystal._CRYSTAL_CAP) -> MinkowskiReport:
    """Finite slice checks justifying the face-union decomposition.

    (i)  sums of a value vector at ``weight`` with a non-member value vector at
         ``weight2`` never land in the member set at ``weight + weight2``;
    (ii) ``dilation`` times a member value vector at ``weight`` is a member
         value vector at ``dilation * weight``.
    """
    def sets_at(mu):
        crystal = zcrystal.generate_B_lambda(ctx, mu, cap=cap)
        sub = zcrystal.richardson_subset(crystal, v, w)
        vec = crystal.phi_vector if coords == "phi" else crystal.psi_vector
        full = {vec(k) for k in range(len(crystal))}
        member = {vec(k) for k in sub.members}
        return full, member

    full1, member1 = sets_at(tuple(weight))
    full2, member2 = sets_at(tuple(weight2))
    fullsum, membersum = sets_at(rootdata.add_weights(tuple(weight), tuple(weight2)))
    _, memberk = sets_at(rootdata.scale_weight(dilation, tuple(weight)))

    bad_i = []
    for a in sorted(full1):
        for b in sorted(full2 - member2):
            s = tuple(x + y for x, y in zip(a, b))
            if s in membersum:
                bad_i.append((a, b, s))
    bad_ii = []
    for a in sorted(member1):
        s = tuple(dilation * x for x in a)
        if s not in memberk:
            bad_ii.append((a, s))
    return MinkowskiReport(not bad_i, not bad_ii, tuple(bad_i), tuple(bad_ii))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _frac_str(x: Fraction) -> str | int:
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def polytope_to_json(polytope: RationalPolytope,
                     with_lattice_points: bool = True) -> dict:
    data = {
        "ambient_dim": polytope.ambient_dim,
        "dim": polytope.dim,
        "vertices": [[_frac_str(x) for x in v] for v in polytope.vertices],
        "halfspaces": [{"normal": list(h.normal), "offset": _frac_str(h.offset)}
                       for h in polytope.halfspaces],
        "equations": [{"normal": list(e.normal), "offset": _frac_str(e.offset)}
                      for e in polytope.equations],
    }
    if with_lattice_points:
        data["lattice_points"] = [list(p) for p in lattice_points(polytope)]
    return data


def _linear_expr(coeffs, names, constant=Fraction(0)) -> str:
    terms = []
    for c, nm in zip(coeffs, names):
        if c == 0:
            continue
        if c == 1:
            terms.append(f"+ {nm}")
        elif c == -1:
            terms.append(f"- {nm}")
        elif c > 0:
            terms.append(f"+ {c}*{nm}")
        else:
            terms.append(f"- {-c}*{nm}")
    if constant > 0 or not terms:
        terms.append(f"+ {constant}")
    elif constant < 0:
        terms.append(f"- {-constant}")
    s = " ".join(terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:] if s.startswith("- ") else s


def inequality_text(polytope: RationalPolytope) -> str:
    """Human-readable chains, one bounded coordinate per line where possible.

    Each facet is keyed by its first coordinate with nonzero coefficient; when
    that coefficient is +-1 the facet becomes an upper/lower bound on that
    coordinate and bounds are printed as chains ``low <= a_k <= high``.
    """
    n = polytope.ambient_dim
    names = [f"a_{k}" for k in range(1, n + 1)]
    lows: dict[int, list[str]] = {}
    highs: dict[int, list[str]] = {}
    loose: list[str] = []
    for h in polytope.halfspaces:
        lead = next(c for c in range(n) if h.normal[c] != 0)
        coef = h.normal[lead]
        rest = [0 if c == lead else h.normal[c] for c in range(n)]
        if coef == 1:
            # x_lead <= offset - rest . x
            highs.setdefault(lead, []).append(
                _linear_expr([-x for x in rest], names, h.offset))
        elif coef == -1:
            # rest . x - offset <= x_lead
            lows.setdefault(lead, []).append(
                _linear_expr(rest, names, -h.offset))
        else:
            loose.append(f"{_linear_expr(h.normal, names)} <= {_frac_str(h.offset)}")
    def join(bounds: list[str], fn: str) -> str:
        return bounds[0] if len(bounds) == 1 else f"{fn}({', '.join(bounds)})"

    lines = []
    for e in polytope.equations:
        lines.append(f"{_linear_expr(e.normal, names)} = {_frac_str(e.offset)}")
    for k in sorted(set(lows) | set(highs)):
        lo = join(sorted(lows.get(k, [])), "max") if k in lows else ""
        hi = join(sorted(highs.get(k, [])), "min") if k in highs else ""
        if lo and hi:
            lines.append(f"{lo} <= {names[k]} <= {hi}")
        elif hi:
            lines.append(f"{names[k]} <= {hi}")
        else:
            lines.append(f"{lo} <= {names[k]}")
    lines.extend(sorted(loose))
    return "\n".join(lines) + "\n"


def dilate(polytope: RationalPolytope, k: int) -> RationalPolytope:
    return convex_hull([tuple(k * x for x in v) for v in polytope.vertices])


def map_polytope(polytope: RationalPolytope, func) -> RationalPolytope:
    return convex_hull([tuple(func(v)) for v in polytope.vertices])
