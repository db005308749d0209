"""Command-line entry point: ``python -m multirel <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Sequence

from multirel import config
from multirel.calculus.liftings import (
    compose_mr,
    enumerate_pfns_c,
    lift,
    union_closure,
    up_closure,
)
from multirel.emitter.text_emitter import (
    PairSection,
    render_model,
    render_pairs,
    render_report,
    render_sections,
    render_table,
)
from multirel.errors import MultirelError
from multirel.laws.catalog import get_law, parse_law_id
from multirel.laws.engine import find_units, sweep
from multirel.laws.fixtures import TABLE_ORDER, singleton
from multirel.laws.universe import universe_carrier
from multirel.model.ir import EXHAUSTIVE, SAMPLED, LawReport, LiftKind, Model, Multirelation, Side
from multirel.parser.model_parser import parse_model_file

EXIT_OK = 0
EXIT_LAW_FAILS = 1
EXIT_USAGE = 2

_KINDS = [k.value for k in LiftKind]


def _load(path: str) -> Model:
    return parse_model_file(path)


def _mrel(model: Model, name: str) -> Multirelation:
    try:
        return model.mrels[name]
    except KeyError:
        known = ", ".join(model.mrels) or "none"
        raise MultirelError(f"no mrel named {name!r} in the model (known: {known})") from None


def _report_exit(report: LawReport) -> int:
    print(render_report(report), end="")
    return EXIT_OK if report.holds else EXIT_LAW_FAILS


# ─── Subcommands ────────────────────────────────────────────────────────────

def _cmd_lift(args: argparse.Namespace) -> int:
    mr = _mrel(_load(args.model), args.rel)
    print(render_pairs(lift(LiftKind(args.kind), mr)), end="")
    return EXIT_OK


def _cmd_compose(args: argparse.Namespace) -> int:
    model = _load(args.model)
    result = compose_mr(LiftKind(args.kind), _mrel(model, args.lhs), _mrel(model, args.rhs))
    print(render_pairs(result), end="")
    return EXIT_OK


def _cmd_table(args: argparse.Namespace) -> int:
    if args.model:
        operands = dict(_load(args.model).mrels)
    elif args.base == 1:
        fixture = singleton()
        operands = {name: fixture[name] for name in TABLE_ORDER}
    else:
        raise MultirelError("table without --model is only defined for --base 1")
    if not operands:
        raise MultirelError("the model declares no mrels")
    print(render_table(LiftKind(args.kind), operands), end="")
    return EXIT_OK


def _check_on_model(args: argparse.Namespace) -> int:
    law = get_law(parse_law_id(args.law))
    if law.predicate is None:
        raise MultirelError(f"{law.law.value} is decided by unit search; use --base instead")
    names = [n.strip() for n in (args.args or "").split(",") if n.strip()]
    if len(names) != law.arity:
        raise MultirelError(
            f"{law.law.value} takes {law.arity} operands ({', '.join(law.operands)}), "
            f"got {len(names)}"
        )
    model = _load(args.model)
    operands = tuple(_mrel(model, n) for n in names)
    for position, (name, mr) in enumerate(zip(names, operands)):
        row_filter = law.row_filter(position)
        if row_filter is not None and not all(row_filter(r, mr.target_base) for r in mr.rows):
            raise MultirelError(f"{name} is outside the class {law.law.value} quantifies over")
    holds = law.predicate(*operands)
    witness = None if holds else {role: mr.to_text() for role, mr in zip(law.operands, operands)}
    report = LawReport(law.law, len(operands[0].src), EXHAUSTIVE,
                       "holds" if holds else "fails", witness, checked=1)
    return _report_exit(report)


def _cmd_check(args: argparse.Namespace) -> int:
    if args.model:
        return _check_on_model(args)
    if args.base is None:
        raise MultirelError("check needs either --model with --args or --base")
    report = sweep(parse_law_id(args.law), args.base, args.mode, args.samples, args.seed)
    return _report_exit(report)


def _print_trace(record: dict[str, Any]) -> None:
    print(json.dumps(record, ensure_ascii=False))


def _cmd_sweep(args: argparse.Namespace) -> int:
    report = sweep(parse_law_id(args.law), args.base, args.mode, args.samples, args.seed,
                   workers=args.workers, trace=_print_trace if args.trace else None)
    return _report_exit(report)


def _cmd_closure(args: argparse.Namespace) -> int:
    mr = _mrel(_load(args.model), args.rel)
    closed = up_closure(mr) if args.which == "up" else union_closure(mr)
    print(render_pairs(closed), end="")
    return EXIT_OK


def _cmd_pfns(args: argparse.Namespace) -> int:
    mr = _mrel(_load(args.model), args.rel)
    pfns = enumerate_pfns_c(mr)
    sections = [PairSection(f"pfn {i}", f.labelled_pairs()) for i, f in enumerate(pfns, start=1)]
    print(render_sections(sections), end="")
    return EXIT_OK


def _cmd_units(args: argparse.Namespace) -> int:
    carrier = universe_carrier(args.base)
    units = find_units(LiftKind(args.kind), Side(args.side), carrier)
    if not units:
        print(f"no {args.side} units for {args.kind} composition on base size {args.base}")
        return EXIT_OK
    sections = [PairSection(f"unit {i}", u.labelled_pairs()) for i, u in enumerate(units, start=1)]
    print(render_sections(sections), end="")
    return EXIT_OK


def _cmd_show(args: argparse.Namespace) -> int:
    print(render_model(_load(args.model)), end="")
    return EXIT_OK


# ─── Argument parsing ───────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None,
                        help=f"Powerset cap on base carrier size (default {config.POWERSET_CAP})")
    common.add_argument("--enum-cap", type=int, default=None,
                        help=f"Choice-function enumeration cap (default {config.ENUMERATION_CAP})")
    common.add_argument("--verbose", action="store_true", help="Log engine progress to stderr")

    def law_sweep_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--mode", choices=[EXHAUSTIVE, SAMPLED], default=EXHAUSTIVE)
        p.add_argument("--samples", type=int, default=None,
                       help=f"Sampled instance count (default {config.DEFAULT_SAMPLES})")
        p.add_argument("--seed", type=int, default=None,
                       help=f"Seed for sampled sweeps (default {config.DEFAULT_SEED})")

    parser = argparse.ArgumentParser(
        prog="mrel", description="Finite models of multirelations and their liftings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lift", parents=[common], help="Print the lifting of a multirelation")
    p.add_argument("--kind", choices=_KINDS, required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--rel", required=True)
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("compose", parents=[common], help="Print lhs composed with rhs")
    p.add_argument("--kind", choices=_KINDS, required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("table", parents=[common], help="Print a composition table")
    p.add_argument("--kind", choices=_KINDS, required=True)
    p.add_argument("--base", type=int, default=1)
    p.add_argument("--model")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("check", parents=[common], help="Check a law on a model or a universe")
    p.add_argument("--law", required=True)
    p.add_argument("--model")
    p.add_argument("--args", help="Comma-separated mrel names, one per law operand")
    p.add_argument("--base", type=int)
    law_sweep_flags(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("sweep", parents=[common], help="Sweep a law over a universe")
    p.add_argument("--law", required=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--trace", action="store_true",
                   help="Emit one JSON record per checked instance")
    law_sweep_flags(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("closure", parents=[common], help="Print the up- or union-closure")
    p.add_argument("which", choices=["up", "union"])
    p.add_argument("--model", required=True)
    p.add_argument("--rel", required=True)
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("pfns", parents=[common], help="List the choice functions of an mrel")
    p.add_argument("--model", required=True)
    p.add_argument("--rel", required=True)
    p.set_defaults(func=_cmd_pfns)

    p = sub.add_parser("units", parents=[common], help="Search every unit on a universe")
    p.add_argument("--kind", choices=_KINDS, required=True)
    p.add_argument("--side", choices=[s.value for s in Side], default=Side.BOTH.value)
    p.add_argument("--base", type=int, default=1)
    p.set_defaults(func=_cmd_units)

    p = sub.add_parser("show", parents=[common], help="Print a model in canonical form")
    p.add_argument("--model", required=True)
    p.set_defaults(func=_cmd_show)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
    saved = config.POWERSET_CAP, config.ENUMERATION_CAP
    if args.cap is not None:
        config.POWERSET_CAP = args.cap
    if args.enum_cap is not None:
        config.ENUMERATION_CAP = args.enum_cap

    try:
        return args.func(args)
    except (MultirelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        config.POWERSET_CAP, config.ENUMERATION_CAP = saved


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
