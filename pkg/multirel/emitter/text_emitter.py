"""Render relations, composition tables, law reports and models as text."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from jinja2 import Environment, FileSystemLoader

from multirel.calculus.liftings import compose_mr
from multirel.model.ir import LawReport, LiftKind, Model, Multirelation, Relation

_TEMPLATES_DIR = Path(__file__).parent.parent / "templates"

# Operator column heading of a composition table.
_KIND_SYMBOLS = {
    LiftKind.KLEISLI: "o",
    LiftKind.PARIKH: "<>",
    LiftKind.PELEG: "*",
}


@dataclass
class PairSection:
    """A titled block of ``src -> tgt`` lines."""
    title: str
    pairs: list[tuple[str, str]]


@dataclass
class MrelView:
    name: str
    src: str
    base: str
    pairs: list[tuple[str, str]] = field(default_factory=list)


@lru_cache(maxsize=None)
def _env() -> Environment:
    return Environment(
        loader=FileSystemLoader(str(_TEMPLATES_DIR)),
        keep_trailing_newline=True,
        trim_blocks=True,
        lstrip_blocks=True,
    )


def render_pairs(rel: Relation, title: str = "") -> str:
    """Sorted pair listing, one ``src -> tgt`` line per pair."""
    return render_sections([PairSection(title, rel.labelled_pairs())])


def render_sections(sections: list[PairSection]) -> str:
    return _env().get_template("pairs.txt.j2").render(sections=sections)


def render_table(kind: LiftKind, operands: dict[str, Multirelation]) -> str:
    """The composition table of ``operands``: row α, column β holds α∙β.

    A cell shows the operand name equal to the result, or the result in set
    notation when no operand matches.
    """
    kind = LiftKind(kind)
    names = list(operands)

    def cell(result: Multirelation) -> str:
        for name, mr in operands.items():
            if mr == result:
                return name
        return result.to_text()

    grid = [[cell(compose_mr(kind, operands[a], operands[b])) for b in names] for a in names]
    label_width = max(len(_KIND_SYMBOLS[kind]), *(len(n) for n in names))
    widths = [max(len(names[j]), *(len(grid[i][j]) for i in range(len(names))))
              for j in range(len(names))]

    def line(label: str, cells: list[str]) -> str:
        padded = [c.ljust(w) for c, w in zip(cells, widths)]
        return f"{label.ljust(label_width)} | {' '.join(padded)}".rstrip()

    header = line(_KIND_SYMBOLS[kind], names)
    rule = "-" * (label_width + 1) + "+" + "-" * (sum(widths) + len(widths))
    rows = [line(a, grid[i]) for i, a in enumerate(names)]
    return _env().get_template("table.txt.j2").render(header=header, rule=rule, rows=rows)


def render_report(report: LawReport) -> str:
    """``law=<id> universe=<n> mode=<m> verdict=<v> [witness=k=v;...]``."""
    witness = ""
    if report.witness:
        witness = ";".join(f"{k}={v}" for k, v in report.witness.items())
    return _env().get_template("report.txt.j2").render(report=report, witness=witness)


def render_model(model: Model) -> str:
    """Model text that ``parse_model`` reads back to an equal Model."""
    mrels = []
    for name, mr in model.mrels.items():
        mrels.append(MrelView(name, mr.src.name, mr.target_base.name, mr.labelled_pairs()))
    return _env().get_template("model.mrel.j2").render(
        carriers=list(model.carriers.values()), mrels=mrels,
    )
