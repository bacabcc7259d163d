"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 rule-file or CSV parse error,
3 domain error (degenerate defuzzification, capacity limits, bad numbers).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from pathlib import Path

from . import axioms, plotting, rule_dsl
from .errors import CapacityError, ConfigurationError, DomainError, MissingEntryError, TdtswError
from .inference import InferenceResult, infer, scenario_grid
from .relations import Coefficients, Distribution, expectations_mc, governance_state

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3
RULES_ENV = "TDTSW_RULES"


class UsageError(Exception):
    pass


class InputParseError(Exception):
    """A CSV row could not be read; carries a ``file:line:col`` prefix."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _num(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"{text!r} is not a finite number")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tdtsw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def rules_opts(p):
        p.add_argument("--rules", help=f"rule file (default: ${RULES_ENV} or the bundled tdtsw.rules)")
        p.add_argument("--defuzz", choices=("centroid", "mom"), default="centroid")

    p = sub.add_parser("eval", help="evaluate one (D, T) pair and print the full trace")
    p.add_argument("--d", type=_num, required=True)
    p.add_argument("--t", type=_num, required=True)
    rules_opts(p)
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("grid", help="evaluate the 3x3 scenario grid R1..R9")
    rules_opts(p)
    p.add_argument("--format", choices=("table", "json", "svg"), default="table")
    p.add_argument("--figure", help="also write the grid figure to this path (svg, png or pdf)")

    p = sub.add_parser("batch", help="score an id,d,t CSV file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default="-", help="scored CSV path, '-' for stdout")
    p.add_argument("--figure", help="also write a scatter of the scored rows")
    rules_opts(p)

    p = sub.add_parser("relations", help="governance equations, deterministic or Monte Carlo")
    for name in ("alpha", "beta", "gamma", "delta"):
        p.add_argument(f"--{name}", type=_num, default=0.0)
    for name in ("alpha", "beta", "gamma"):
        p.add_argument(f"--eff-{name}", type=_num, help=f"{name} for the effectiveness equation (default: --{name})")
    p.add_argument("--d", type=_num)
    p.add_argument("--t", type=_num)
    p.add_argument("--mc", type=int, metavar="N", help="Monte Carlo sample count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--dist-d", help="point:v | uniform:lo,hi | tri:a,b,c")
    p.add_argument("--dist-t", help="point:v | uniform:lo,hi | tri:a,b,c")
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("axioms", help="evaluate aDTSW/pDTSW/tDTSW or count their models")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--formula", choices=axioms.FORMULA_NAMES)
    which.add_argument("--postulate", type=int, choices=range(1, 15), metavar="1..14")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check", metavar="NAME=0,NAME=1,...")
    mode.add_argument("--models", action="store_true")
    p.add_argument("--list", action="store_true", help="with --models, print every satisfying assignment")
    return parser


def _load_rules(path):
    path = path or os.environ.get(RULES_ENV)
    if path:
        return rule_dsl.load(path)
    return rule_dsl.load_bundled()


def _g(x: float) -> str:
    return repr(float(x))


def _degrees(vec) -> str:
    return " ".join(f"{k}={_g(v)}" for k, v in vec.items())


def format_result_table(result: InferenceResult) -> str:
    lines = [f"inputs      {' '.join(f'{k}={_g(v)}' for k, v in result.inputs.items())}"]
    for name, vec in result.fuzzified.items():
        lines.append(f"fuzzified   {name}: {_degrees(vec)}")
    lines.append(f"firings     {_degrees(result.firings)}")
    lines.append(f"aggregated  {_degrees(result.aggregated)}")
    lines.append(f"crisp       {_g(result.crisp)}")
    lines.append(f"label       {result.label}")
    lines.append(f"color       {result.color.value}")
    return "\n".join(lines) + "\n"


def _table(header, rows) -> str:
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    out = []
    for r in [header, *rows]:
        out.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(out) + "\n"


def cmd_eval(args, out):
    rb = _load_rules(args.rules)
    names = [v.name for v in rb.inputs]
    if len(names) != 2:
        raise ConfigurationError("eval expects a rule base with exactly two inputs")
    result = infer(rb, {names[0]: args.d, names[1]: args.t}, args.defuzz)
    if args.format == "json":
        out.write(json.dumps(result.to_dict(), indent=2) + "\n")
    else:
        out.write(format_result_table(result))


def cmd_grid(args, out):
    rb = _load_rules(args.rules)
    table = scenario_grid(rb, method=args.defuzz)
    if args.figure:
        plotting.render_scenario_grid(table, args.figure)
    if args.format == "svg":
        out.write(plotting.scenario_grid_svg(table))
    elif args.format == "json":
        cells = [{
            "id": c.id,
            table.variables[0]: c.labels[0],
            table.variables[1]: c.labels[1],
            "point": list(c.point),
            **c.result.to_dict(),
        } for c in table]
        out.write(json.dumps({"variables": list(table.variables), "cells": cells}, indent=2) + "\n")
    else:
        a, b = table.variables
        rows = [(c.id, c.labels[0], c.labels[1], c.result.label, c.result.color.value,
                 f"{c.result.crisp:.3f}") for c in table]
        out.write(_table(("id", a, b, "label", "color", "crisp"), rows))


def score_rows(rb, text: str, source: str, method="centroid"):
    """Score CSV text; returns (header, rows, points) with scores appended."""
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise InputParseError(f"{source}:1:1: missing header row (expected id,d,t)") from None
    header = [h.strip() for h in header]
    if header and header[0].startswith("\ufeff"):
        header[0] = header[0][1:]
    for col in ("id", "d", "t"):
        if col not in header:
            raise InputParseError(f"{source}:1:1: header lacks column {col!r} (expected id,d,t)")
    idx = {col: header.index(col) for col in ("id", "d", "t")}
    out_name = rb.output.name.lower()
    extra = [f"{out_name}_{label.lower()}" for label in rb.output.labels]
    extra += [f"{out_name}_crisp", f"{out_name}_label", "color"]
    inputs = [v.name for v in rb.inputs]
    rows, points = [], []
    for record in reader:
        line = reader.line_num
        if not record or all(not f.strip() for f in record):
            continue
        if len(record) != len(header):
            raise InputParseError(f"{source}:{line}:1: expected {len(header)} fields, found {len(record)}")
        if not record[idx["id"]].strip():
            raise InputParseError(f"{source}:{line}:{idx['id'] + 1}: empty id")
        values = {}
        for col in ("d", "t"):
            raw = record[idx[col]].strip()
            try:
                values[col] = _num(raw)
            except (ValueError, argparse.ArgumentTypeError):
                raise InputParseError(
                    f"{source}:{line}:{idx[col] + 1}: cannot read {col} value {raw!r} as a number"
                ) from None
        result = infer(rb, {inputs[0]: values["d"], inputs[1]: values["t"]}, method)
        scores = [_g(result.aggregated[label]) for label in rb.output.labels]
        scores += [_g(result.crisp), result.label, result.color.value]
        rows.append(record + scores)
        points.append((values["d"], values["t"], result.color))
    return header + extra, rows, points


def cmd_batch(args, out):
    rb = _load_rules(args.rules)
    if len(rb.inputs) != 2:
        raise ConfigurationError("batch expects a rule base with exactly two inputs")
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    header, rows, points = score_rows(rb, text, args.input, args.defuzz)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if args.output == "-":
        out.write(buf.getvalue())
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    if args.figure:
        plotting.render_batch(points, args.figure)


def cmd_relations(args, out):
    wcoef = Coefficients(args.alpha, args.beta, args.gamma, args.delta)
    ecoef = Coefficients(
        args.alpha if args.eff_alpha is None else args.eff_alpha,
        args.beta if args.eff_beta is None else args.eff_beta,
        args.gamma if args.eff_gamma is None else args.eff_gamma,
        args.delta,
    )
    deterministic = args.d is not None or args.t is not None
    if deterministic == (args.mc is not None):
        raise UsageError("relations: give either --d and --t, or --mc with --dist-d and --dist-t")
    if deterministic:
        if args.d is None or args.t is None:
            raise UsageError("relations: --d and --t must be given together")
        state = governance_state(args.d, args.t, wcoef, wcoef, ecoef)
        payload = vars(state)
        if args.format == "json":
            out.write(json.dumps(payload, indent=2) + "\n")
        else:
            out.write(_table(("quantity", "value"), [(k, _g(v)) for k, v in payload.items()]))
        return
    if not (args.dist_d and args.dist_t):
        raise UsageError("relations: --mc needs --dist-d and --dist-t")
    if args.mc < 1:
        raise DomainError(f"sample count must be at least 1, got {args.mc}")
    report = expectations_mc(Distribution.parse(args.dist_d), Distribution.parse(args.dist_t),
                             wcoef, wcoef, ecoef, n=args.mc, seed=args.seed, workers=args.workers)
    if args.format == "json":
        out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        rows = [(q, _g(e.mean), _g(e.se), _g(e.ci_low), _g(e.ci_high)) for q, e in report.estimates.items()]
        out.write(f"n={report.n} seed={report.seed}\n")
        out.write(_table(("quantity", "mean", "se", "ci95_low", "ci95_high"), rows))


def cmd_axioms(args, out):
    if args.list and not args.models:
        raise UsageError("axioms: --list requires --models")
    if args.formula:
        name, formula = args.formula, axioms.build_formula(args.formula)
    else:
        name, formula = f"postulate {args.postulate}", axioms.postulate(args.postulate)
    if args.check is not None:
        assignment = axioms.parse_assignment(args.check)
        missing = sorted(axioms.atoms(formula) - set(assignment))
        if missing:
            raise MissingEntryError(f"assignment is missing atom(s): {', '.join(missing)}")
        value = axioms.evaluate(formula, assignment)
        out.write(f"{name}: {'true' if value else 'false'}\n")
        return
    result = axioms.models(formula, listing=args.list)
    out.write(f"models: {result.count} / {result.total}\n")
    for a in result.listing:
        out.write(axioms.format_assignment(a) + "\n")


COMMANDS = {
    "eval": cmd_eval,
    "grid": cmd_grid,
    "batch": cmd_batch,
    "relations": cmd_relations,
    "axioms": cmd_axioms,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except rule_dsl.RuleSyntaxError as exc:
        for d in exc.diagnostics:
            err.write(f"{exc.source}:{d}\n")
        return EXIT_PARSE
    except InputParseError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (DomainError, CapacityError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except (ConfigurationError, MissingEntryError, TdtswError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
