"""Command-line front end.

Exit status 0 means success or a valid input, 1 a well-formed input that
fails a check (the report says why), 2 a usage, I/O or parse error.
Verdicts go to stdout as text or JSON, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .census import (
    EnumConfig,
    Kind,
    _run_shard,
    counts_table,
    enumerate_midsections,
    merge_shards,
    read_census,
    roundtrip_report,
    write_census,
)
from .complex3 import dumps_slice, loads_slice, validate_slice
from .conditions import membership
from .errors import BudgetExceeded, CausalSliceError, MembershipFailed, ParseError
from .midsection import midsection
from .reconstruct import build_disc_slice, build_sphere_slice, cut_to_disc, reconstruct
from .surface import dumps_midsection, loads_midsection
from .triangulations import loads_triangulation

OK, INVALID, FAILURE = 0, 1, 2


class _Reject(Exception):
    """A check failed; carries the report to print."""

    def __init__(self, report: dict):
        super().__init__(report.get("message", "rejected"))
        self.report = report


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _error_report(exc: Exception) -> dict:
    out = {"verdict": False, "error": type(exc).__name__, "message": str(exc)}
    report = getattr(exc, "report", None)
    if report is not None:
        out["report"] = report.to_dict()
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    text = _read(args.file)
    if args.kind.startswith("midsection-"):
        S = loads_midsection(text)
        rep = membership(S, args.kind.split("-", 1)[1]).to_dict()
        failed = [p["condition"] for p in rep.get("parts", []) if not p["verdict"]]
    else:
        K = loads_slice(text)
        rep = validate_slice(K, args.kind, certificate=not args.no_certificate).to_dict()
        failed = [c["check"] for c in rep["checks"] if not c["ok"]]
    verdict = rep["verdict"]
    _emit(args, rep, f"{args.file}: {'valid' if verdict else 'invalid'} {args.kind}"
          + ("" if verdict else f" (failed: {', '.join(failed)})"))
    return OK if verdict else INVALID


def cmd_midsection(args) -> int:
    K = loads_slice(_read(args.file))
    S, labels = midsection(K, args.kind)
    _write(dumps_midsection(S), args.output)
    if args.labels:
        Path(args.labels).write_text(labels.dumps(), encoding="utf-8")
    if args.output is not None:
        _emit(args, {"cells": len(S.cells), "output": args.output},
              f"wrote {len(S.cells)} cells to {args.output}")
    return OK


def cmd_reconstruct(args) -> int:
    S = loads_midsection(_read(args.file))
    kind = args.kind or ("sphere" if S.is_sphere else "disc")
    K = reconstruct(S, kind)
    _write(dumps_slice(K), args.output)
    if args.output is not None:
        _emit(args, {"kind": kind, "counts": K.counts(), "output": args.output},
              f"wrote {kind} slice with {len(K.tetras)} tetrahedra to {args.output}")
    return OK


def _build(args, builder) -> int:
    red = loads_triangulation(_read(args.red))
    blue = loads_triangulation(_read(args.blue))
    K = builder(red, blue)
    _write(dumps_slice(K), args.output)
    if args.output is not None:
        _emit(args, {"counts": K.counts(), "output": args.output},
              f"wrote slice with {len(K.tetras)} tetrahedra to {args.output}")
    return OK


def cmd_build_slice(args) -> int:
    return _build(args, build_disc_slice)


def cmd_build_sphere_slice(args) -> int:
    return _build(args, build_sphere_slice)


def cmd_cut(args) -> int:
    S = loads_midsection(_read(args.file))
    res = cut_to_disc(S)
    _write(dumps_midsection(res.disc), args.output)
    if args.output is not None:
        _emit(args, res.to_dict(),
              f"removed {len(res.red_cluster)} red triangles and a strip of "
              f"{len(res.strip)} quadrangles; wrote {len(res.disc.cells)} cells to {args.output}")
    return OK


def cmd_enumerate(args) -> int:
    kind = Kind(args.kind)
    members = not args.all
    if args.shard is not None:
        if not 0 <= args.shard < args.shards:
            raise _Reject({"verdict": False, "message": "--shard must lie in [0, --shards)"})
        cfg = EnumConfig(kind, args.max_cells, not args.no_prune, members, args.shards, args.shard,
                         budget=args.budget)
        records = merge_shards(kind.value, args.max_cells, [_run_shard(cfg)])
    else:
        records = enumerate_midsections(kind, args.max_cells, prune=not args.no_prune,
                                        members_only=members, shards=args.shards,
                                        jobs=args.jobs, budget=args.budget)
    write_census(records, args.output, kind.value)
    counts = {n: r.count for n, r in sorted(records.items())}
    _emit(args, {"kind": kind.value, "counts": {str(n): c for n, c in counts.items()}},
          counts_table(kind.value, counts).rstrip("\n"))
    return OK


def cmd_roundtrip(args) -> int:
    rep = roundtrip_report(args.kind, args.max_cells, min_cells=args.min_cells,
                           max_tetras=args.max_tetras, budget=args.budget, jobs=args.jobs)
    _emit(args, rep.to_dict(),
          f"{rep.kind}: {rep.midsections_checked} midsections, {rep.slices_checked} slices, "
          f"{len(rep.failures)} failures")
    return OK if rep.ok else INVALID


def cmd_stats(args) -> int:
    kind, counts = read_census(args.dir)
    _emit(args, {"kind": kind, "counts": {str(n): c for n, c in sorted(counts.items())},
                 "total": sum(counts.values())},
          counts_table(kind, counts) + f"total  {sum(counts.values())}")
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="causal-slices", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a slice or midsection file")
    s.add_argument("file")
    s.add_argument("--kind", required=True,
                   choices=("disc", "sphere", "midsection-disc", "midsection-sphere"))
    s.add_argument("--no-certificate", action="store_true",
                   help="skip the midsection round trip for slices")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("midsection", parents=[common], help="slice -> midsection")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--kind", choices=("disc", "sphere"))
    s.add_argument("--labels", help="also write the vertex/cell/edge labels as JSON")
    s.set_defaults(func=cmd_midsection)

    s = sub.add_parser("reconstruct", parents=[common], help="midsection -> slice")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--kind", choices=("disc", "sphere"))
    s.set_defaults(func=cmd_reconstruct)

    for name, func, what in (
        ("build-slice", cmd_build_slice, "disc"),
        ("build-sphere-slice", cmd_build_sphere_slice, "sphere"),
    ):
        s = sub.add_parser(name, parents=[common], help=f"slice between two triangulated {what}s")
        s.add_argument("--red", required=True, help=f"triangulation/1 {what}")
        s.add_argument("--blue", required=True, help=f"triangulation/1 {what}")
        s.add_argument("-o", "--output")
        s.set_defaults(func=func)

    s = sub.add_parser("cut", parents=[common], help="sphere midsection -> disc midsection")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_cut)

    s = sub.add_parser("enumerate", parents=[common], help="write a midsection census")
    s.add_argument("--kind", required=True, choices=("disc", "sphere"))
    s.add_argument("--max-cells", type=int, required=True)
    s.add_argument("--shards", type=int, default=1)
    s.add_argument("--shard", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--budget", type=int)
    s.add_argument("--all", action="store_true", help="every generated complex, not only members")
    s.add_argument("--no-prune", action="store_true")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("roundtrip", parents=[common], help="midsection <-> slice round trips")
    s.add_argument("--kind", required=True, choices=("disc", "sphere"))
    s.add_argument("--max-cells", type=int, required=True)
    s.add_argument("--min-cells", type=int, default=1)
    s.add_argument("--max-tetras", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--budget", type=int)
    s.set_defaults(func=cmd_roundtrip)

    s = sub.add_parser("stats", parents=[common], help="summarise a census directory")
    s.add_argument("dir")
    s.set_defaults(func=cmd_stats)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, BudgetExceeded, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE
    except _Reject as exc:
        _emit(args, exc.report, f"rejected: {exc}")
        return INVALID
    except (CausalSliceError, MembershipFailed) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        _emit(args, _error_report(exc), f"invalid: {type(exc).__name__}: {exc}")
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
