"""Command-line entry point: ``a1lab {validate,lines,conics,criteria,cover}``.

Exit codes: 0 pass, 1 fail, 2 inconclusive, 64 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .cipair import (CIPair, DEFAULT_BUDGET, criteria, cover_type, dump_pair, load_pair,
                     universal_cover, validate_pair)
from .errors import (A1LabError, ConstructionError, DegenerateInputError, InputError,
                     PreconditionError, ReductionError, TooLargeError, UnsupportedError)
from .exactalg.fields import FieldSpec, parse_field_option
from .exactalg.literals import parse_point_text, point_to_literal
from .geomcheck.enumerate import canonical_key, enumerate_solutions
from .geomcheck.general import general_point, general_point_pair
from .geomcheck.oracles import oracle_a1_conics, oracle_a1_lines
from .geomcheck.report import FAIL, INCONCLUSIVE, PASS
from .moduli import (conic_boundary_locus, conic_fiber_type, delta_degree_metadata,
                     expected_dimension_lines, line_moduli_through_point)

SCHEMA_VERSION = "1.0"
DEFAULT_SEED = 0xA1C0DE
EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
EXIT_USAGE = 64
COMMANDS = ("validate", "lines", "conics", "criteria", "cover")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunConfig:
    command: str
    pair_file: str
    field: FieldSpec | None
    seed: int
    budget: int
    output: str | None
    emit_json: bool
    threads: int
    points: list[str]
    timing: bool = False
    validate_cover: bool = False


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer seed: {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="a1lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "validate": "Jacobian smoothness check of X and D over a finite field",
        "lines": "A1-lines through a point: symbolic system vs brute-force oracle",
        "conics": "node locus of reducible A1-conics through two points vs oracle",
        "criteria": "numeric criteria (log Fano, conic bound, cover bound)",
        "cover": "degree-k cyclic cover branched along D, as a new pair file",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--pair", required=True, metavar="FILE", help="pair file (JSON)")
        p.add_argument("--field", metavar="p[,r]", help="work over F_p or F_{p^r} instead of the pair's field")
        p.add_argument("--seed", type=_seed, help="RNG seed (default $A1LAB_SEED or 0xA1C0DE)")
        p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="sample budget")
        p.add_argument("--point", action="append", default=[], metavar="c0,...,cn",
                       help="explicit point (repeat for conics); extension residues as a:b")
        p.add_argument("--json", action="store_true", help="emit the JSON report")
        p.add_argument("--out", metavar="FILE",
                       help="write the report here (for cover: the new pair file)")
        p.add_argument("--threads", type=_positive, default=os.cpu_count() or 1)
        p.add_argument("--timing", action="store_true", help="include wall-clock times in reports")
        if name == "cover":
            p.add_argument("--validate", action="store_true", help="validate the cover pair")
    return parser


def _config(args) -> RunConfig:
    seed = args.seed
    if seed is None:
        env = os.environ.get("A1LAB_SEED")
        seed = _seed(env) if env else DEFAULT_SEED
    field = None
    if args.field:
        try:
            field = parse_field_option(args.field)
        except (InputError, UnsupportedError) as exc:
            raise UsageError(f"--field: {exc}") from exc
    return RunConfig(args.command, args.pair, field, seed, args.budget, args.out, args.json,
                     args.threads, list(args.point), args.timing, getattr(args, "validate", False))


def _finite_field(cfg: RunConfig, pair: CIPair) -> FieldSpec:
    field = cfg.field or pair.field
    if not field.is_finite:
        raise UsageError(f"{cfg.command} needs a finite field; pass --field for pairs over Q")
    return field


def _points(cfg: RunConfig, field: FieldSpec) -> list[tuple]:
    out = []
    for text in cfg.points:
        try:
            out.append(parse_point_text(field, text))
        except (InputError, ValueError) as exc:
            raise UsageError(f"--point {text!r}: {exc}") from exc
    return out


def _pts(field, pts) -> list:
    return [point_to_literal(field, p) for p in pts]


def _envelope(cfg: RunConfig, pair: CIPair, verdict: str, field: FieldSpec | None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": cfg.command,
        "verdict": verdict,
        "seed": cfg.seed,
        "pair_type": {"n": pair.n, "degrees": list(pair.degrees), "k": pair.k},
        "field": None if field is None else field.to_json(),
    }


def _set_difference_witness(a: list, b: list):
    diff = sorted(set(a) ^ set(b), key=canonical_key)
    return diff[0] if diff else None


def _no_general(cfg, pair, field, exc) -> dict:
    out = _envelope(cfg, pair, INCONCLUSIVE, field)
    out["message"] = f"automatic point selection failed: {exc}"
    return out


# -- commands ------------------------------------------------------------------


def cmd_validate(cfg: RunConfig, pair: CIPair) -> dict:
    field = _finite_field(cfg, pair)
    report = validate_pair(pair, field, cfg.budget, seed=cfg.seed, threads=cfg.threads)
    out = _envelope(cfg, pair, report.verdict, field)
    out["report"] = report.to_json(include_timing=cfg.timing)
    return out


def cmd_lines(cfg: RunConfig, pair: CIPair) -> dict:
    t0 = time.perf_counter()
    field = _finite_field(cfg, pair)
    explicit = _points(cfg, field)
    if len(explicit) > 1:
        raise UsageError("lines takes at most one --point")
    if explicit:
        x, chosen_field, auto = explicit[0], field, False
    else:
        try:
            choice = general_point(pair, field, seed=cfg.seed)
        except DegenerateInputError as exc:
            return _no_general(cfg, pair, field, exc)
        x, chosen_field, auto = choice.points[0], choice.field, True
    P = pair.over(chosen_field)
    try:
        pres = line_moduli_through_point(P, x)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from exc
    oracle = oracle_a1_lines(P, x, chosen_field)
    verdict, witness, message = INCONCLUSIVE, None, ""
    moduli_points = None
    try:
        moduli_points = enumerate_solutions(pres, chosen_field, threads=cfg.threads)
    except TooLargeError as exc:
        message = str(exc)
    if moduli_points is not None:
        witness = _set_difference_witness(moduli_points, oracle)
        verdict = PASS if witness is None else FAIL
        if witness is not None:
            message = "symbolic and brute-force point sets differ"
    out = _envelope(cfg, pair, verdict, chosen_field)
    out.update({
        "point": point_to_literal(chosen_field, x),
        "point_auto_selected": auto,
        "presentation": pres.to_json(),
        "declared_type": list(pres.declared_type),
        "expected_dim": expected_dimension_lines(pair),
        "generically_empty": pres.generically_empty,
        "moduli_points": None if moduli_points is None else _pts(chosen_field, moduli_points),
        "oracle_points": _pts(chosen_field, oracle),
        "equivalence": verdict,
        "witness": None if witness is None else point_to_literal(chosen_field, witness),
        "message": message,
    })
    if cfg.timing:
        out["wall_time_ms"] = round((time.perf_counter() - t0) * 1e3, 3)
    return out


def cmd_conics(cfg: RunConfig, pair: CIPair) -> dict:
    t0 = time.perf_counter()
    if pair.k != 1:
        raise UsageError(f"conics needs a pair of type (d_1,...,d_c;1); this pair has k = {pair.k}")
    fiber = conic_fiber_type(pair)
    meta = delta_degree_metadata(pair)
    field = _finite_field(cfg, pair)
    if field.characteristic == 2:
        raise UsageError("conics needs characteristic != 2")
    explicit = _points(cfg, field)
    if explicit and len(explicit) != 2:
        raise UsageError("conics takes exactly two --point options (or none)")
    if explicit:
        (p, q), chosen_field, auto = explicit, field, False
    else:
        try:
            choice = general_point_pair(pair, field, seed=cfg.seed)
        except DegenerateInputError as exc:
            return _no_general(cfg, pair, field, exc)
        (p, q), chosen_field, auto = choice.points, choice.field, True
    P = pair.over(chosen_field)
    try:
        delta = conic_boundary_locus(P, p, q)
    except (PreconditionError, DegenerateInputError) as exc:
        raise UsageError(str(exc)) from exc
    message = ""
    try:
        oracle = oracle_a1_conics(P, p, q, chosen_field)
    except TooLargeError as exc:
        oracle = oracle_a1_conics(P, p, q, chosen_field, count_conics=False)
        message = f"smooth conic count skipped: {exc}"
    verdict, witness, nodes = INCONCLUSIVE, None, None
    try:
        nodes = enumerate_solutions(delta, chosen_field, threads=cfg.threads)
    except TooLargeError as exc:
        message = (message + "; " if message else "") + str(exc)
    if nodes is not None:
        witness = _set_difference_witness(nodes, oracle.node_points)
        verdict = PASS if witness is None else FAIL
    out = _envelope(cfg, pair, verdict, chosen_field)
    out.update({
        "points": _pts(chosen_field, (p, q)),
        "points_auto_selected": auto,
        "delta": delta.to_json(),
        "delta_type": list(delta.declared_type),
        "fiber_type": fiber.to_json(),
        "degree_metadata": meta.to_json(),
        "node_points": None if nodes is None else _pts(chosen_field, nodes),
        "oracle": oracle.to_json(chosen_field),
        "equivalence": verdict,
        "witness": None if witness is None else point_to_literal(chosen_field, witness),
        "message": message,
    })
    if cfg.timing:
        out["wall_time_ms"] = round((time.perf_counter() - t0) * 1e3, 3)
    return out


def cmd_criteria(cfg: RunConfig, pair: CIPair) -> dict:
    out = _envelope(cfg, pair, PASS, cfg.field or pair.field)
    out["criteria"] = criteria(pair).to_json()
    out["expected_dim_lines"] = expected_dimension_lines(pair)
    out["cover_type"] = {"n": pair.n + 1, "degrees": list(cover_type(pair.type).degrees), "k": 1}
    out["cover_a1_simply_connected_bound"] = criteria(cover_type(pair.type)).a1_simply_connected_bound
    return out


def cmd_cover(cfg: RunConfig, pair: CIPair) -> dict:
    base = pair.over(cfg.field) if cfg.field else pair
    try:
        cover = universal_cover(base)
    except ConstructionError as exc:
        out = _envelope(cfg, pair, FAIL, base.field)
        out.update({"cover": None, "message": str(exc), "validation": None})
        return out
    if cfg.output:
        Path(cfg.output).write_text(dump_pair(cover) + "\n", encoding="utf-8")
    verdict, validation = PASS, None
    if cfg.validate_cover:
        field = _finite_field(cfg, cover)
        report = validate_pair(cover, field, cfg.budget, seed=cfg.seed, threads=cfg.threads)
        verdict, validation = report.verdict, report.to_json(include_timing=cfg.timing)
    out = _envelope(cfg, pair, verdict, base.field)
    out.update({
        "cover": cover.to_json(),
        "cover_type": {"n": cover.n, "degrees": list(cover.degrees), "k": cover.k},
        "written_to": cfg.output,
        "message": "",
        "validation": validation,
    })
    return out


HANDLERS = {
    "validate": cmd_validate,
    "lines": cmd_lines,
    "conics": cmd_conics,
    "criteria": cmd_criteria,
    "cover": cmd_cover,
}


def _summary(report: dict) -> str:
    lines = [f"{report['command']}: {report['verdict']}"]
    t = report["pair_type"]
    lines.append(f"type ({','.join(map(str, t['degrees']))};{t['k']}) in P^{t['n']}")
    for key in ("declared_type", "delta_type", "expected_dim", "equivalence", "criteria",
                "fiber_type", "cover_type", "message"):
        if report.get(key) not in (None, ""):
            lines.append(f"{key}: {json.dumps(report[key], sort_keys=True)}")
    inner = report.get("report") or report.get("validation")
    if inner:
        lines.append(f"points examined: {inner['points_examined']}")
        if inner.get("witness"):
            lines.append(f"witness: {inner['witness']}  {inner['message']}")
    if report.get("witness"):
        lines.append(f"witness: {report['witness']}")
    return "\n".join(lines)


def _emit(cfg: RunConfig, text: str, to_stdout: bool):
    if to_stdout:
        sys.stdout.write(text + "\n")
    else:
        Path(cfg.output).write_text(text + "\n", encoding="utf-8")


def run(cfg: RunConfig) -> int:
    try:
        pair = load_pair(cfg.pair_file)
    except FileNotFoundError:
        raise UsageError(f"no such pair file: {cfg.pair_file}")
    if cfg.field is not None and pair.field.is_finite and pair.field != cfg.field:
        if pair.field.characteristic != cfg.field.characteristic or cfg.field.degree % pair.field.degree:
            raise UsageError(f"--field {cfg.field} does not contain the pair's field {pair.field}")
    report = HANDLERS[cfg.command](cfg, pair)
    to_stdout = cfg.output is None or cfg.command == "cover"
    if cfg.emit_json:
        _emit(cfg, json.dumps(report, sort_keys=True, indent=1), to_stdout)
    else:
        _emit(cfg, _summary(report), to_stdout)
    return EXIT_CODES[report["verdict"]]


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = _config(args)
        return run(cfg)
    except (UsageError, InputError, PreconditionError, ReductionError, UnsupportedError,
            DegenerateInputError) as exc:
        print(f"a1lab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except A1LabError as exc:
        print(f"a1lab {args.command}: {exc}", file=sys.stderr)
        return EXIT_CODES[INCONCLUSIVE]


if __name__ == "__main__":
    raise SystemExit(main())
