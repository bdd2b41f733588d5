"""Command-line front end: construct, verify, bounds, characterize, simulate, search."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from . import __version__
from .bounds import CLOSED_FORM, EXHAUSTIVE, bound_report
from .characterize import characterize
from .code import LinearCode, locality_profile
from .constructions import FAMILIES, AlphaAssignment, ConstructionParams, construct, search_alphas
from .repair import simulate
from .verifier import verify


def _emit(kind: str, params: Dict[str, Any], body: Dict[str, Any], fmt: str, out=None) -> None:
    out = out or sys.stdout
    doc = {"tool": "lrckit", "version": __version__, "command": kind, "params": params, "result": body}
    if fmt == "structured":
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return
    out.write(f"# lrckit {__version__} {kind}\n")
    out.write("# " + " ".join(f"{k}={_fmt(v)}" for k, v in sorted(params.items())) + "\n")
    width = max((len(k) for k in body), default=0)
    for key, value in body.items():
        out.write(f"{key.ljust(width)}  {_fmt(value)}\n")


def _fmt(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    if value is None:
        return "-"
    return str(value).lower() if isinstance(value, bool) else str(value)


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except FileNotFoundError:
        raise CliError(f"file not found: {path}")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}")


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}")


class CliError(Exception):
    pass


def cmd_construct(args) -> Dict[str, Any]:
    alphas = AlphaAssignment.from_text(_read(args.alphas)) if args.alphas else None
    params = ConstructionParams(args.family, args.q, args.n, args.r, m=args.m, k=args.k, alphas=alphas)
    code = construct(params)
    text = code.to_text()
    if args.out:
        _write(args.out, text)
    body = verify(code, args.r).as_dict()
    if not args.out:
        body["code"] = text.splitlines()
    return body


def cmd_verify(args) -> Dict[str, Any]:
    code = LinearCode.from_text(_read(args.code))
    return verify(code, args.r).as_dict()


def cmd_bounds(args) -> Dict[str, Any]:
    rep = bound_report(args.n, args.k, args.r, args.q, d=args.d, s=args.s, mode=args.mode)
    body = rep.as_dict()
    keys = ["singleton_like", "general_bound", "general_bound_t", "cm_bound_k", "cm_bound_t",
            "rate_ok", "availability_bound", "estimators"]
    return {k: body[k] for k in keys}


def cmd_characterize(args) -> Dict[str, Any]:
    code = LinearCode.from_text(_read(args.code))
    profile = locality_profile(code)
    r = args.r if args.r is not None else profile.all_symbol
    cpcm = characterize(code, r, profile)
    text = cpcm.to_text()
    if args.out:
        _write(args.out, text)
    body = {
        "r": r,
        "l": cpcm.l,
        "h1": cpcm.h1.to_lists(),
        "h2": cpcm.h2.to_lists(),
        "coverage_trace": [sorted(s) for s in cpcm.coverage_trace],
        "picked_coordinates": list(cpcm.picked),
    }
    return body


def cmd_simulate(args) -> Dict[str, Any]:
    code = LinearCode.from_text(_read(args.code))
    metrics = simulate(code, args.trials, args.seed)
    body = metrics.as_dict()
    return {k: body[k] for k in ("success_rate", "mean_reads", "max_reads", "baseline_reads", "trials", "seed", "n", "k")}


def cmd_search(args) -> Dict[str, Any]:
    res = search_alphas(args.q, args.n, args.r, args.extra, args.target_d, seed=args.seed,
                        scan_cap=args.scan_cap, random_tries=args.random_tries)
    if res.found and args.out:
        _write(args.out, res.alphas.to_text())
    return {
        "found": res.found,
        "reason": res.reason,
        "evaluated": res.evaluated,
        "phase": res.phase,
        "seed": args.seed,
        "alphas": [list(g) for g in res.alphas.grid] if res.found else None,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrckit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"lrckit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("construct", help="build a code from one of the optimal families")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, default=1, help="extension degree (linearized family)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--alphas", help="alpha grid file")
    p.add_argument("--out", help="write the code file here")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="audit a code file")
    p.add_argument("--code", required=True)
    p.add_argument("--r", type=int, help="claimed locality (default: computed)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="evaluate distance bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, help="target distance for the dimension bound")
    p.add_argument("--s", type=int, help="availability")
    p.add_argument("--mode", choices=(CLOSED_FORM, EXHAUSTIVE), default=CLOSED_FORM)
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("characterize", help="split H into locality rows and the rest")
    p.add_argument("--code", required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_characterize)

    p = sub.add_parser("simulate", help="single-erasure repair simulation")
    p.add_argument("--code", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("search", help="search alpha grids for a target distance")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--extra", type=int, required=True, help="number of power rows")
    p.add_argument("--target-d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scan-cap", type=int, default=20000)
    p.add_argument("--random-tries", type=int, default=2000)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_search)
    return parser


def _params(args) -> Dict[str, Any]:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "format", "command")}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) is not None and not 0 <= getattr(args, "seed", 0) < 2**64:
        parser.error("--seed must be an unsigned 64-bit integer")
    try:
        body = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(args.command, _params(args), body, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
