"""FastAPI service exposing the library as JSON endpoints.

Every endpoint is a pure computation on its request body; responses carry
either structured JSON or a rendered text/DOT payload in the ``text`` field.
The CLI drives this app in-process, and ``uvicorn semitoric.service:app``
serves the same surface over HTTP for long-running use.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import (acceptance, cluster, degeneration, minors, polytope, rootdata,
               zcrystal)

app = FastAPI(title="semitoric",
              description="Exact crystal/cluster combinatorics and semi-toric "
                          "degeneration certificates", version="0.1.0")


class RootDatumRequest(BaseModel):
    series: str = Field(pattern="^[A-G]$")
    rank: int = Field(ge=1)


class CrystalRequest(RootDatumRequest):
    weight: list[int]
    word: list[int]
    coords: Literal["phi", "psi"] = "psi"
    fmt: Literal["json", "dot"] = "json"
    cap: int = 2_000_000


class PolytopeRequest(RootDatumRequest):
    weight: list[int]
    word: list[int]
    kind: Literal["string", "nz"] = "string"
    kmax: int = 3
    fmt: Literal["json", "text"] = "json"
    cap: int = 2_000_000


class SeedBuildRequest(RootDatumRequest):
    word: list[int]
    fmt: Literal["json", "dot"] = "json"


class SeedMutateRequest(RootDatumRequest):
    word: list[int]
    directions: list[int]


class MinorsVerifyRequest(RootDatumRequest):
    word: list[int]
    samples: int = 100
    seed: int = 0


class RichardsonReportRequest(RootDatumRequest):
    weight: list[int]
    word: list[int]
    v: list[int]
    w: list[int]
    coords: Literal["string", "nz", "cluster"] = "string"
    mutation: list[int] = Field(default_factory=list)
    minkowski: bool = True
    fmt: Literal["json", "text"] = "json"


class RichardsonScanRequest(RootDatumRequest):
    weight: list[int]
    word: list[int]
    coords: Literal["string", "nz"] = "string"
    minkowski: bool = True
    fmt: Literal["json", "text"] = "json"


class VerifyAllRequest(BaseModel):
    criteria: Optional[list[int]] = None


def _datum(req: RootDatumRequest) -> rootdata.RootDatum:
    try:
        return rootdata.build_root_datum(req.series, req.rank)
    except rootdata.RootDatumError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def _context(datum, word) -> zcrystal.WordContext:
    try:
        return zcrystal.word_context(datum, word)
    except zcrystal.CrystalError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def _element(datum, word) -> rootdata.WeylElement:
    try:
        return rootdata.weyl_from_word(datum, word)
    except (rootdata.RootDatumError, KeyError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


_DOMAIN_ERRORS = (rootdata.RootDatumError, zcrystal.CrystalError,
                  polytope.PolytopeError, cluster.ClusterError,
                  minors.MinorError, ValueError)


def _domain(call, *args, **kwargs):
    try:
        return call(*args, **kwargs)
    except HTTPException:
        raise
    except _DOMAIN_ERRORS as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"ok": True, "version": "0.1.0"}


@app.post("/rootdata")
def rootdata_endpoint(req: RootDatumRequest) -> dict:
    datum = _datum(req)
    group = _domain(rootdata.weyl_group, datum)
    return {"ok": True,
            "result": {"datum": datum.to_json(),
                       "symmetrizers": list(datum.symmetrizers),
                       "order": len(group),
                       "longest_word": list(group.longest.word),
                       "positive_roots": [list(f) for f, _
                                          in rootdata.positive_roots(datum)]}}


@app.post("/crystal")
def crystal_endpoint(req: CrystalRequest) -> dict:
    datum = _datum(req)
    ctx = _context(datum, req.word)
    crystal = _domain(zcrystal.generate_B_lambda, ctx, tuple(req.weight),
                      cap=req.cap)
    if req.fmt == "dot":
        return {"ok": True, "text": zcrystal.crystal_to_dot(crystal, req.coords)}
    return {"ok": True, "result": zcrystal.crystal_to_json(crystal)}


@app.post("/polytope")
def polytope_endpoint(req: PolytopeRequest) -> dict:
    datum = _datum(req)
    ctx = _context(datum, req.word)
    fn = polytope.string_polytope if req.kind == "string" else polytope.nz_polytope
    res = _domain(fn, ctx, tuple(req.weight), req.kmax, req.cap)
    if req.fmt == "text":
        text = polytope.inequality_text(res.polytope)
        text += f"saturated={res.saturated} level={res.level}\n"
        return {"ok": True, "text": text,
                "saturated": res.saturated, "level": res.level}
    data = polytope.polytope_to_json(res.polytope)
    data["saturated"] = res.saturated
    data["level"] = res.level
    return {"ok": True, "result": data}


@app.post("/seed/build")
def seed_build_endpoint(req: SeedBuildRequest) -> dict:
    datum = _datum(req)
    eps = _domain(cluster.build_exchange_from_word, datum, req.word)
    if req.fmt == "dot":
        return {"ok": True, "text": _domain(cluster.quiver_dot, eps)}
    return {"ok": True, "result": eps.to_json()}


@app.post("/seed/quiver")
def seed_quiver_endpoint(req: SeedBuildRequest) -> dict:
    datum = _datum(req)
    eps = _domain(cluster.build_exchange_from_word, datum, req.word)
    return {"ok": True, "text": _domain(cluster.quiver_dot, eps)}


@app.post("/seed/mutate")
def seed_mutate_endpoint(req: SeedMutateRequest) -> dict:
    datum = _datum(req)
    eps = _domain(cluster.build_exchange_from_word, datum, req.word)
    seed = _domain(cluster.seed_after_word, cluster.initial_seed(eps),
                   req.directions)
    return {"ok": True, "result": {
        "directions": list(seed.history),
        "matrix": seed.matrix.to_json(),
        "variables": [str(v.as_expr()) for v in seed.variables],
        "laurent": cluster.seed_is_laurent(seed),
    }}


@app.post("/minors/verify")
def minors_verify_endpoint(req: MinorsVerifyRequest) -> dict:
    datum = _datum(req)
    report = _domain(minors.verify_initial_seed, datum, req.word,
                     req.samples, req.seed)
    return {"ok": report.ok, "result": report.to_json()}


@app.post("/richardson/report")
def richardson_report_endpoint(req: RichardsonReportRequest) -> dict:
    datum = _datum(req)
    ctx = _context(datum, req.word)
    v = _element(datum, req.v)
    w = _element(datum, req.w)
    if req.coords == "cluster":
        rep = _domain(degeneration.semi_toric_report_cluster, ctx,
                      tuple(req.weight), v, w, tuple(req.mutation))
    elif req.coords == "nz":
        rep = _domain(degeneration.semi_toric_report_nz, ctx,
                      tuple(req.weight), v, w, with_minkowski=req.minkowski)
    else:
        rep = _domain(degeneration.semi_toric_report_string, ctx,
                      tuple(req.weight), v, w, with_minkowski=req.minkowski)
    return {"ok": rep.ok, "result": rep.to_json()}


@app.post("/richardson/scan")
def richardson_scan_endpoint(req: RichardsonScanRequest) -> dict:
    datum = _datum(req)
    ctx = _context(datum, req.word)
    summary = _domain(degeneration.all_pairs_scan, ctx, tuple(req.weight),
                      req.coords, req.minkowski)
    if req.fmt == "text":
        return {"ok": summary.ok, "text": degeneration.scan_text_summary(summary)}
    return {"ok": summary.ok, "result": summary.to_json()}


@app.post("/verify-all")
def verify_all_endpoint(req: VerifyAllRequest) -> dict:
    if req.criteria:
        results = [acceptance.run_criterion(n) for n in sorted(set(req.criteria))]
    else:
        results = acceptance.verify_all()
    return {"ok": all(r.ok for r in results),
            "text": acceptance.verify_all_text(results),
            "result": {"criteria": [r.to_json() for r in results]}}
