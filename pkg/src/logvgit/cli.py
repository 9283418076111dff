"""Command-line front end.

Every command produces a report ``{engine_version, command, input, result}``
serialized with sorted keys, so identical jobs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import __version__
from . import bounds as B
from . import cm
from .engine import candidate_walls, destabilizing_family, limit_pair, verdict_in_coords
from .errors import ParseError, VGITError
from .one_param import OneParamSubgroup, generate_candidates
from .poly import as_fraction, format_rational, render
from .records import (
    cache_candidates,
    candidates_for,
    candidates_to_record,
    load_pair,
    pair_from_record,
    pair_to_record,
    read_json,
)
from .torus import WeightTable, extended_verdict, three_a2_weight_table

COMMANDS = ("walls", "check", "limit", "families", "cm", "df", "bounds", "torus", "candidates")


@dataclass
class JobSpec:
    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    input_path: str | None = None
    payload: dict | None = None
    output_path: str | None = None
    output_format: str = "record"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command {self.command!r}")
        if self.input_path is not None and self.payload is not None:
            raise ParseError("give either an input file or an inline payload, not both")


def _int_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in str(text).replace(" ", "").split(","))
    except ValueError:
        raise ParseError(f"expected a comma-separated integer vector, got {text!r}") from None


def _rational_vector(text: str) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in str(text).replace(" ", "").split(","))


def _need(params: dict, *names: str) -> list:
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise ParseError(f"missing required option(s): {', '.join('--' + m for m in missing)}")
    return [params[n] for n in names]


def _pair(job: JobSpec):
    if job.payload is not None:
        return pair_from_record(job.payload)
    if job.input_path is None:
        raise ParseError("this command needs --pair")
    return load_pair(job.input_path)


def _lambda(params: dict) -> OneParamSubgroup:
    (lam,) = _need(params, "lambda")
    return OneParamSubgroup(_int_vector(lam))


# --- command implementations ------------------------------------------------------


def _cmd_walls(job: JobSpec) -> dict:
    n, d = _need(job.parameters, "n", "d")
    walls = candidate_walls(n, d, candidates_for(n, d, job.parameters.get("cache")))
    return {"walls": [w.to_record() for w in walls], "count": len(walls)}


def _cmd_check(job: JobSpec) -> dict:
    (t,) = _need(job.parameters, "t")
    pair = _pair(job)
    candidates = candidates_for(pair.n, pair.d, job.parameters.get("cache"))
    verdict = verdict_in_coords(pair, t, candidates, over_permutations=job.parameters.get("all_orderings", False))
    return verdict.to_record()


def _cmd_limit(job: JobSpec) -> dict:
    pair = _pair(job)
    f0, h0, is_log = limit_pair(pair, _lambda(job.parameters))
    return {"f0": render(f0), "h0": render(h0), "is_log_pair": is_log}


def _cmd_families(job: JobSpec) -> dict:
    t, j, d = _need(job.parameters, "t", "j", "d")
    family = destabilizing_family(_lambda(job.parameters), t, j, d)
    return {"monomials": [list(m) for m in sorted(family, reverse=True)], "count": len(family)}


def _cmd_cm(job: JobSpec) -> dict:
    n, d, beta = _need(job.parameters, "n", "d", "beta")
    coeffs = cm.cm_coefficients(n, d, beta)
    out = coeffs.to_record()
    out["beta"] = format_rational(as_fraction(beta))
    out["t_approx"] = f"{float(coeffs.t):.12g}"
    return out


def _cmd_df(job: JobSpec) -> dict:
    (beta,) = _need(job.parameters, "beta")
    pair = _pair(job)
    data, samples = cm.weight_data_of_one_ps(pair, _lambda(job.parameters))
    return {
        "df": format_rational(cm.df_from_coefficients(data, as_fraction(beta))),
        "b0": format_rational(data.b0),
        "b1": format_rational(data.b1),
        "b0_tilde": format_rational(data.b0_tilde),
        "w_samples": [s.to_record() for s in samples],
    }


def _cmd_bounds(job: JobSpec) -> dict:
    p = job.parameters
    if p.get("gap") is not None:
        return {"bound": str(B.gap_bound(p["gap"]))}
    if p.get("quotient_order") is not None:
        return {"volume": format_rational(B.quotient_volume(p["quotient_order"]))}
    if p.get("max_order"):
        (beta,) = _need(p, "beta")
        return {"max_order": B.max_group_order_cubic(beta), "above_cubic_threshold": B.beta0_cubic_predicate(beta)}
    if p.get("beta0"):
        n, d = _need(p, "n", "d")
        out = {"beta0_approx": str(B.beta0_Pn(n, d, precision=20))}
        if p.get("beta") is not None:
            out["above"] = B.is_above_beta0(n, d, p["beta"])
        return out
    if p.get("codim"):
        n, d = _need(p, "n", "d")
        out = {"z1prime": B.codim_z1prime(n, d), "z2": B.codim_z2(n, d)}
        if d <= n + 1:
            out["z1"] = B.codim_z1(n, d)
        return out
    if p.get("liu") is not None:
        (n,) = _need(p, "n")
        degree, vol = p["liu"]
        return {"ok": B.liu_bound_ok(B.VolumeBoundQuery(n, as_fraction(degree), as_fraction(vol)))}
    raise ParseError("bounds needs one of --gap, --quotient-order, --max-order, --beta0, --codim, --liu")


def _cmd_torus(job: JobSpec) -> dict:
    p = job.parameters
    (coeffs,) = _need(p, "coeffs")
    group: list = []
    if job.payload is not None or job.input_path is not None:
        rec = job.payload if job.payload is not None else read_json(job.input_path)
        try:
            table = WeightTable(int(rec["rank"]), tuple(tuple(w) for w in rec["weights"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"weight table needs rank and weights ({exc})") from None
        group = rec.get("group", [])
    else:
        table = three_a2_weight_table()
    shift = _rational_vector(p["shift"]) if p.get("shift") is not None else None
    verdict = extended_verdict(_rational_vector(coeffs), table, shift, group)
    return verdict.to_record()


def _cmd_candidates(job: JobSpec) -> dict:
    n, d = _need(job.parameters, "n", "d")
    cache = job.parameters.get("cache")
    if cache is not None:
        found = cache_candidates(n, d, cache)
    else:
        found = generate_candidates(n, d)
    rec = candidates_to_record(n, d, found)
    rec["count"] = len(found)
    return rec


HANDLERS: dict[str, Callable[[JobSpec], dict]] = {
    "walls": _cmd_walls,
    "check": _cmd_check,
    "limit": _cmd_limit,
    "families": _cmd_families,
    "cm": _cmd_cm,
    "df": _cmd_df,
    "bounds": _cmd_bounds,
    "torus": _cmd_torus,
    "candidates": _cmd_candidates,
}


def _echo(job: JobSpec) -> dict:
    echo = {k: v for k, v in job.parameters.items() if v is not None and v is not False}
    if job.input_path is not None:
        echo["input_path"] = job.input_path
        if job.command not in ("torus",):
            try:
                echo["pair"] = pair_to_record(load_pair(job.input_path))
            except VGITError:
                pass
    if job.payload is not None:
        echo["payload"] = job.payload
    return echo


def _render_text(value: Any, indent: str = "") -> str:
    if isinstance(value, dict):
        lines = []
        for k in sorted(value):
            v = value[k]
            nested = isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v))
            if nested and v:
                lines.append(f"{indent}{k}:")
                lines.append(_render_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(value, list):
        return "\n".join(
            f"{indent}-\n" + _render_text(v, indent + "  ") if isinstance(v, dict) else f"{indent}- {_scalar(v)}"
            for v in value
        )
    return f"{indent}{_scalar(value)}"


def _scalar(v: Any) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(str(x) for x in v) + ")"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def run(job: JobSpec) -> tuple[int, str]:
    """Execute a job; returns the exit status and the serialized report."""
    try:
        result = HANDLERS[job.command](job)
        status = 0
        body = {"engine_version": __version__, "command": job.command, "input": _echo(job), "result": result}
    except VGITError as exc:
        status = exc.exit_code
        body = {
            "engine_version": __version__,
            "command": job.command,
            "error": {"type": type(exc).__name__, "message": str(exc), "exit_code": status},
        }
    if job.output_format == "text":
        report = _render_text(body) + "\n"
    else:
        report = json.dumps(body, sort_keys=True, indent=2) + "\n"
    return status, report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--t")
    common.add_argument("--beta")
    common.add_argument("--pair", help="pair JSON {n, d, f, h} (or a weight table for torus)")
    common.add_argument("--lambda", dest="lambda_", metavar="A0,A1,...")
    common.add_argument("--shift", metavar="S0,S1,...")
    common.add_argument("--cache", help="candidate cache file (read if present, else written)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("record", "text"), default="record")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="logvgit", description="Exact VGIT and CM computations for log pairs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("walls", parents=[common], help="candidate walls in (0, d/(n+1)]")
    p = sub.add_parser("check", parents=[common], help="coordinate-relative stability verdict")
    p.add_argument("--all-orderings", action="store_true", help="also try every coordinate permutation")
    sub.add_parser("limit", parents=[common], help="limit pair under a 1-PS")
    p = sub.add_parser("families", parents=[common], help="destabilizing monomial family")
    p.add_argument("--j", type=int, help="index realizing the hyperplane weight")
    sub.add_parser("cm", parents=[common], help="CM coefficients a, b and t(beta)")
    sub.add_parser("df", parents=[common], help="Donaldson-Futaki invariant of a 1-PS degeneration")
    p = sub.add_parser("bounds", parents=[common], help="numerical thresholds")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--gap", type=int, metavar="N")
    g.add_argument("--quotient-order", type=int, metavar="K")
    g.add_argument("--max-order", action="store_true")
    g.add_argument("--beta0", action="store_true")
    g.add_argument("--codim", action="store_true")
    g.add_argument("--liu", nargs=2, metavar=("DEGREE", "VOLHAT"))
    p = sub.add_parser("torus", parents=[common], help="centroid verdict (3A2 table unless --pair gives one)")
    p.add_argument("--coeffs", metavar="C0,C1,...")
    sub.add_parser("candidates", parents=[common], help="generate (and cache) the candidate 1-PS")
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    params = {k: v for k, v in vars(args).items() if k not in ("command", "pair", "out", "format", "verbose")}
    if "lambda_" in params:
        params["lambda"] = params.pop("lambda_")
    return JobSpec(args.command, params, input_path=args.pair, output_path=args.out, output_format=args.format)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        job = job_from_args(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    status, report = run(job)
    if job.output_path and status == 0:
        Path(job.output_path).write_text(report)
    else:
        (sys.stdout if status == 0 else sys.stderr).write(report)
    return status


if __name__ == "__main__":
    sys.exit(main())
