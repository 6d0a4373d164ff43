"""Command-line client for the service endpoints.

The CLI is a thin client: it parses flags into a request body, posts it to
the FastAPI app through an in-process ASGI transport (no network, no running
server needed), and renders the response.  Exit codes: 0 on success, 1 when a
check reports a failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

from .service import app


def _ints(text: str) -> list[int]:
    text = text.strip()
    if text in ("", "e"):
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a comma-separated integer list, got {text!r}") from None


def _add_type_rank(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", dest="series", required=True,
                   choices=list("ABCDEFG"), help="series label")
    p.add_argument("--rank", type=int, required=True)


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", help="write the result to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semitoric",
        description="Exact crystal/cluster combinatorics and semi-toric "
                    "degeneration certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rootdata", help="Cartan matrix and Weyl group data")
    _add_type_rank(p)
    _add_output(p)

    p = sub.add_parser("crystal", help="generate a highest-weight crystal")
    _add_type_rank(p)
    p.add_argument("--weight", type=_ints, required=True)
    p.add_argument("--word", type=_ints, required=True,
                   help="reduced word for the longest element")
    p.add_argument("--coords", choices=["phi", "psi"], default="psi")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--cap", type=int, default=2_000_000)
    _add_output(p)

    p = sub.add_parser("polytope", help="string / NZ polytopes")
    p.add_argument("kind", choices=["string", "nz"])
    _add_type_rank(p)
    p.add_argument("--weight", type=_ints, required=True)
    p.add_argument("--word", type=_ints, required=True)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--cap", type=int, default=2_000_000)
    _add_output(p)

    p = sub.add_parser("seed", help="exchange matrices and seed mutation")
    seed_sub = p.add_subparsers(dest="seed_command", required=True)
    for name in ("build", "quiver"):
        q = seed_sub.add_parser(name)
        _add_type_rank(q)
        q.add_argument("--word", type=_ints, required=True)
        q.add_argument("--format", choices=["json", "dot"],
                       default="dot" if name == "quiver" else "json")
        _add_output(q)
    q = seed_sub.add_parser("mutate")
    _add_type_rank(q)
    q.add_argument("--word", type=_ints, required=True)
    q.add_argument("--directions", type=_ints, required=True,
                   help="comma-separated mutation directions")
    q.add_argument("--format", choices=["json"], default="json")
    _add_output(q)

    p = sub.add_parser("minors", help="minor evaluation checks")
    minors_sub = p.add_subparsers(dest="minors_command", required=True)
    q = minors_sub.add_parser("verify")
    _add_type_rank(q)
    q.add_argument("--word", type=_ints, required=True)
    q.add_argument("--samples", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    _add_output(q)

    p = sub.add_parser("richardson", help="face-union certificates")
    rich_sub = p.add_subparsers(dest="richardson_command", required=True)
    q = rich_sub.add_parser("report")
    _add_type_rank(q)
    q.add_argument("--weight", type=_ints, required=True)
    q.add_argument("--word", type=_ints, required=True)
    q.add_argument("--v", type=_ints, required=True, help="word for v ('e' for identity)")
    q.add_argument("--w", type=_ints, required=True, help="word for w ('e' for identity)")
    q.add_argument("--coords", choices=["string", "nz", "cluster"], default="string")
    q.add_argument("--mutation", type=_ints, default=[],
                   help="mutation word for cluster coordinates")
    q.add_argument("--no-minkowski", action="store_true")
    q.add_argument("--format", choices=["json"], default="json")
    _add_output(q)
    q = rich_sub.add_parser("scan")
    _add_type_rank(q)
    q.add_argument("--weight", type=_ints, required=True)
    q.add_argument("--word", type=_ints, required=True)
    q.add_argument("--coords", choices=["string", "nz"], default="string")
    q.add_argument("--no-minkowski", action="store_true")
    q.add_argument("--format", choices=["json", "text"], default="text")
    _add_output(q)

    p = sub.add_parser("verify-all", help="run the full acceptance suite")
    p.add_argument("--criteria", type=_ints, default=[],
                   help="subset of criteria numbers, e.g. 1,2,5")
    _add_output(p)

    return parser


def _request(args: argparse.Namespace) -> tuple[str, dict]:
    base = {"series": args.series, "rank": args.rank} if hasattr(args, "series") else {}
    cmd = args.command
    if cmd == "rootdata":
        return "/rootdata", base
    if cmd == "crystal":
        return "/crystal", {**base, "weight": args.weight, "word": args.word,
                            "coords": args.coords, "fmt": args.format,
                            "cap": args.cap}
    if cmd == "polytope":
        return "/polytope", {**base, "weight": args.weight, "word": args.word,
                             "kind": args.kind, "kmax": args.kmax,
                             "fmt": args.format, "cap": args.cap}
    if cmd == "seed":
        if args.seed_command == "mutate":
            return "/seed/mutate", {**base, "word": args.word,
                                    "directions": args.directions}
        if args.seed_command == "quiver":
            return "/seed/quiver", {**base, "word": args.word}
        return "/seed/build", {**base, "word": args.word, "fmt": args.format}
    if cmd == "minors":
        return "/minors/verify", {**base, "word": args.word,
                                  "samples": args.samples, "seed": args.seed}
    if cmd == "richardson":
        if args.richardson_command == "scan":
            return "/richardson/scan", {**base, "weight": args.weight,
                                        "word": args.word, "coords": args.coords,
                                        "minkowski": not args.no_minkowski,
                                        "fmt": args.format}
        return "/richardson/report", {**base, "weight": args.weight,
                                      "word": args.word, "v": args.v,
                                      "w": args.w, "coords": args.coords,
                                      "mutation": args.mutation,
                                      "minkowski": not args.no_minkowski,
                                      "fmt": args.format}
    if cmd == "verify-all":
        return "/verify-all", {"criteria": args.criteria or None}
    raise AssertionError(f"unhandled command {cmd}")


def _render(payload: dict) -> str:
    if "text" in payload:
        return payload["text"]
    return json.dumps(payload.get("result", payload), indent=2, sort_keys=True) + "\n"


def _post_in_process(path: str, body: dict) -> httpx.Response:
    async def run() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://semitoric",
                                     timeout=None) as client:
            return await client.post(path, json=body)

    return asyncio.run(run())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    path, body = _request(args)
    response = _post_in_process(path, body)
    if response.status_code != 200:
        detail = response.json().get("detail", response.text)
        print(f"error: {detail}", file=sys.stderr)
        return 2
    payload = response.json()
    text = _render(payload)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if payload.get("ok", True) else 1


if __name__ == "__main__":
    raise SystemExit(main())
