"""Certified face-union reports for Richardson lattice-point sets.

A report fixes a context (type, rank, reduced word), a dominant weight and a
Bruhat pair v <= w, builds the ambient polytope in the requested coordinates
(string, embedding, or cluster chart transported along a mutation word),
collects the Richardson value set, and runs the union-of-faces certifier plus
the pairwise monoid conditions.  Violations are recorded with witnesses, never
asserted away.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import cluster, polytope, rootdata, zcrystal
from .polytope import (FaceUnionCertificate, NotAFaceUnion, RationalPolytope)
from .rootdata import Weight, WeylElement
from .zcrystal import WordContext


@dataclass(frozen=True)
class CertificateFace:
    dim: int
    tight: tuple[int, ...]
    vertices: tuple[tuple[Fraction, ...], ...]
    lattice_points: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "tight": list(self.tight),
            "vertices": [[_frac_json(x) for x in v] for v in self.vertices],
            "lattice_points": [list(p) for p in self.lattice_points],
        }


def _frac_json(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class DegenerationReport:
    context: WordContext
    weight: Weight
    v: WeylElement
    w: WeylElement
    coords: str
    mutation_word: tuple[int, ...]
    poly: RationalPolytope
    saturated: bool
    saturation_level: int
    richardson_points: tuple[tuple[int, ...], ...]
    certificate: tuple[CertificateFace, ...] | None
    checks: dict[str, dict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.get("ok") for c in self.checks.values())

    def to_json(self) -> dict:
        return {
            "context": {
                "series": self.context.datum.series,
                "rank": self.context.datum.rank,
                "word": list(self.context.word),
                "coords": self.coords,
                "mutation_word": list(self.mutation_word),
            },
            "lambda": list(self.weight),
            "v": list(self.v.word),
            "w": list(self.w.word),
            "polytope": polytope.polytope_to_json(self.poly),
            "saturated": self.saturated,
            "saturation_level": self.saturation_level,
            "richardson_points": [list(p) for p in self.richardson_points],
            "certificate": ([f.to_json() for f in self.certificate]
                            if self.certificate is not None else None),
            "checks": self.checks,
            "ok": self.ok,
        }


def _certificate_faces(cert: FaceUnionCertificate) -> tuple[CertificateFace, ...]:
    return tuple(CertificateFace(f.dim, f.tight, f.vertices(),
                                 tuple(sorted(f.lattice_points())))
                 for f in cert.faces)


def _certify(report: DegenerationReport, points) -> None:
    result = polytope.union_of_faces_decompose(report.poly, points)
    if isinstance(result, NotAFaceUnion):
        report.certificate = None
        report.checks["face_union"] = {
            "ok": False,
            "witness": list(result.witness),
            "finding": "Richardson point set is not a union of faces",
        }
    else:
        report.certificate = _certificate_faces(result)
        report.checks["face_union"] = {"ok": True,
                                       "faces": len(result.faces)}


def _base_report(ctx: WordContext, weight, v, w, coords: str,
                 mutation_word=()) -> tuple[DegenerationReport, set]:
    group = rootdata.weyl_group(ctx.datum)
    if not group.bruhat_leq(v, w):
        raise zcrystal.CrystalError(
            f"empty Richardson condition: {v.word} is not Bruhat-below {w.word}")
    weight = tuple(int(x) for x in weight)
    if coords == "string":
        res = polytope.string_polytope(ctx, weight)
    elif coords == "nz":
        res = polytope.nz_polytope(ctx, weight)
    else:
        raise ValueError(f"unknown coordinate system {coords!r}")
    crystal = zcrystal.generate_B_lambda(ctx, weight)
    sub = zcrystal.richardson_subset(crystal, v, w)
    points = sub.phi_set() if coords == "string" else sub.psi_set()
    report = DegenerationReport(
        context=ctx, weight=weight, v=v, w=w, coords=coords,
        mutation_word=tuple(mutation_word), poly=res.polytope,
        saturated=res.saturated, saturation_level=res.level,
        richardson_points=tuple(sorted(points)), certificate=None)
    return report, points


def semi_toric_report_string(ctx: WordContext, weight, v: WeylElement,
                             w: WeylElement, k_max: int = 3,
                             with_minkowski: bool = True) -> DegenerationReport:
    report, points = _base_report(ctx, weight, v, w, "string")
    _certify(report, points)
    if with_minkowski:
        mk = polytope.minkowski_condition_check(ctx, weight, weight, v, w,
                                                coords="phi")
        report.checks["minkowski"] = {
            "ok": mk.ok,
            "condition_i": mk.condition_i,
            "condition_ii": mk.condition_ii,
            "witnesses": [list(map(list, t)) for t in mk.witnesses_i]
                         + [list(map(list, t)) for t in mk.witnesses_ii],
        }
    return report


def semi_toric_report_nz(ctx: WordContext, weight, v: WeylElement,
                         w: WeylElement, k_max: int = 3,
                         with_minkowski: bool = True) -> DegenerationReport:
    report, points = _base_report(ctx, weight, v, w, "nz")
    _certify(report, points)
    if with_minkowski:
        mk = polytope.minkowski_condition_check(ctx, weight, weight, v, w,
                                                coords="psi")
        report.checks["minkowski"] = {
            "ok": mk.ok,
            "condition_i": mk.condition_i,
            "condition_ii": mk.condition_ii,
            "witnesses": [list(map(list, t)) for t in mk.witnesses_i]
                         + [list(map(list, t)) for t in mk.witnesses_ii],
        }
    return report


def semi_toric_report_cluster(ctx: WordContext, weight, v: WeylElement,
                              w: WeylElement, mutation_word=()
                              ) -> DegenerationReport:
    """Certify in the cluster chart: pull the string data back through the
    transfer matrix, transport along the mutation word, certify at the target."""
    weight = tuple(int(x) for x in weight)
    group = rootdata.weyl_group(ctx.datum)
    if not group.bruhat_leq(v, w):
        raise zcrystal.CrystalError(
            f"empty Richardson condition: {v.word} is not Bruhat-below {w.word}")
    cres = cluster.cluster_polytope(ctx, weight)
    minv = cluster.upsilon_inverse(cres.upsilon)
    crystal = zcrystal.generate_B_lambda(ctx, weight)
    sub = zcrystal.richardson_subset(crystal, v, w)
    base_points = [tuple(int(x) for x in cluster.upsilon_apply(minv, p))
                   for p in sorted(sub.phi_set())]
    eps = cluster.build_exchange_from_word(ctx.datum, ctx.word)
    mutation_word = tuple(int(k) for k in mutation_word)

    poly, eps_target = cluster.transport_polytope(cres.polytope, eps,
                                                  mutation_word)
    points, _ = cluster.tropical_mutate_path(base_points, eps, mutation_word)

    report = DegenerationReport(
        context=ctx, weight=weight, v=v, w=w, coords="cluster",
        mutation_word=mutation_word, poly=poly,
        saturated=cres.string_result.saturated,
        saturation_level=cres.string_result.level,
        richardson_points=tuple(sorted(points)), certificate=None)
    report.checks["point_count_invariant"] = {
        "ok": len(set(points)) == len(sub.members),
        "count": len(set(points)),
    }
    _certify(report, set(points))
    return report


@dataclass
class ScanSummary:
    context: WordContext
    weight: Weight
    coords: str
    pairs: int
    certified: int
    face_dim_histogram: dict[int, int]
    violations: list[dict]
    rows: list[dict]

    @property
    def ok(self) -> bool:
        return not self.violations and self.certified == self.pairs

    def to_json(self) -> dict:
        return {
            "context": {"series": self.context.datum.series,
                        "rank": self.context.datum.rank,
                        "word": list(self.context.word)},
            "lambda": list(self.weight),
            "coords": self.coords,
            "pairs": self.pairs,
            "certified": self.certified,
            "face_dim_histogram": {str(k): v for k, v
                                   in sorted(self.face_dim_histogram.items())},
            "violations": self.violations,
            "reports": self.rows,
            "ok": self.ok,
        }


def all_pairs_scan(ctx: WordContext, weight, coords: str = "string",
                   with_minkowski: bool = True) -> ScanSummary:
    """Run the face-union report over every Bruhat pair v <= w, deterministically
    ordered by (length(v), length(w), words)."""
    group = rootdata.weyl_group(ctx.datum)
    pairs = [(v, w) for v in group.elements for w in group.elements
             if group.bruhat_leq(v, w)]
    pairs.sort(key=lambda p: (p[0].length, p[1].length, p[0].word, p[1].word))
    report_fn = {"string": semi_toric_report_string,
                 "nz": semi_toric_report_nz}[coords]
    hist: dict[int, int] = {}
    violations: list[dict] = []
    rows: list[dict] = []
    certified = 0
    for v, w in pairs:
        rep = report_fn(ctx, weight, v, w, with_minkowski=with_minkowski)
        row = {"v": list(v.word), "w": list(w.word),
               "points": len(rep.richardson_points),
               "ok": rep.ok}
        if rep.certificate is not None:
            row["faces"] = [{"dim": f.dim, "points": len(f.lattice_points)}
                            for f in rep.certificate]
            for f in rep.certificate:
                hist[f.dim] = hist.get(f.dim, 0) + 1
            certified += 1
        if not rep.ok:
            violations.append({"v": list(v.word), "w": list(w.word),
                               "checks": rep.checks})
        rows.append(row)
    return ScanSummary(ctx, tuple(int(x) for x in weight), coords,
                       len(pairs), certified, hist, violations, rows)


def scan_text_summary(summary: ScanSummary) -> str:
    lines = [
        f"scan {summary.context.datum.series}_{summary.context.datum.rank} "
        f"word={','.join(map(str, summary.context.word))} "
        f"lambda={','.join(map(str, summary.weight))} coords={summary.coords}",
        f"pairs={summary.pairs} certified={summary.certified} "
        f"violations={len(summary.violations)}",
        "face dims: " + " ".join(f"{d}:{c}" for d, c
                                 in sorted(summary.face_dim_histogram.items())),
    ]
    for row in summary.rows:
        v = ",".join(map(str, row["v"])) or "e"
        w = ",".join(map(str, row["w"])) or "e"
        status = "ok" if row["ok"] else "VIOLATION"
        lines.append(f"  v=({v}) w=({w}) points={row['points']} {status}")
    return "\n".join(lines) + "\n"
