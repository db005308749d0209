"""Parse the line-oriented ``.mrel`` model format into a Model.

    # comment
    carrier X = a b c
    mrel beta : X -> P(X)
    a -> {b,c}
    b -> {}

Pair lines belong to the most recent ``mrel`` header. Errors carry the
1-based line and column of the offending token.
"""

from __future__ import annotations

import re
from pathlib import Path

from multirel.calculus.powerset import pow_carrier
from multirel.calculus.relation import mk_carrier
from multirel.errors import (
    DuplicateName,
    ModelSyntaxError,
    MultirelError,
    UnknownCarrier,
    UnknownElement,
)
from multirel.model.ir import Carrier, Model, Multirelation
from multirel.parser.subset_notation import LABEL_RE, parse_subset

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"

# carrier X = a b c
_CARRIER_RE = re.compile(rf"^\s*carrier\s+({_NAME})\s*=(.*)$")

# mrel beta : X -> P(Y)
_MREL_RE = re.compile(rf"^\s*mrel\s+({_NAME})\s*:\s*({_NAME})\s*->\s*P\(\s*({_NAME})\s*\)\s*$")

# a -> {b,c}
_PAIR_RE = re.compile(r"^\s*(\S+?)\s*->\s*(\{.*\})\s*$")

_KEYWORD_RE = re.compile(r"^\s*(carrier|mrel)\b")


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _relocate(exc: MultirelError, line: int, column: int) -> MultirelError:
    """Re-raise a positionless error from the calculus with a source position."""
    return type(exc)(str(exc), line, column)


class _Builder:
    """Accumulates one mrel block until the next header or end of input."""

    def __init__(self, name: str, src: Carrier, tgt_base: Carrier, line: int, column: int) -> None:
        self.name = name
        self.src = src
        self.tgt_base = tgt_base
        try:
            self.tgt = pow_carrier(tgt_base)
        except MultirelError as exc:
            raise _relocate(exc, line, column) from None
        self.rows = [0] * len(src)

    def add(self, elem: str, subset: str, line: int, elem_col: int, subset_col: int) -> None:
        if elem not in self.src:
            raise UnknownElement(
                f"{elem!r} is not an element of carrier {self.src.name}", line, elem_col
            )
        mask = parse_subset(subset, self.tgt_base, line, subset_col)
        self.rows[self.src.index(elem)] |= 1 << mask

    def build(self) -> Multirelation:
        return Multirelation(self.src, self.tgt, tuple(self.rows))


def parse_model(text: str) -> Model:
    """Parse model text (LF or CRLF line endings) into a validated Model."""
    model = Model()
    current: _Builder | None = None

    def finish() -> None:
        if current is not None:
            model.mrels[current.name] = current.build()

    for lineno, raw in enumerate(text.lstrip("\ufeff").splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue

        m = _CARRIER_RE.match(line)
        if m:
            finish()
            current = None
            name = m.group(1)
            if name in model.carriers:
                raise DuplicateName(f"carrier {name} is declared twice", lineno, m.start(1) + 1)
            elements = m.group(2).split()
            for elem_match in re.finditer(r"\S+", m.group(2)):
                if not LABEL_RE.fullmatch(elem_match.group()):
                    raise ModelSyntaxError(
                        f"malformed element {elem_match.group()!r}",
                        lineno, m.start(2) + elem_match.start() + 1,
                    )
            try:
                model.carriers[name] = mk_carrier(name, elements)
            except MultirelError as exc:
                raise _relocate(exc, lineno, m.start(2) + 1) from None
            continue

        m = _MREL_RE.match(line)
        if m:
            finish()
            name, src_name, base_name = m.group(1), m.group(2), m.group(3)
            if name in model.mrels:
                raise DuplicateName(f"mrel {name} is declared twice", lineno, m.start(1) + 1)
            for group in (2, 3):
                if m.group(group) not in model.carriers:
                    raise UnknownCarrier(
                        f"carrier {m.group(group)} is not declared", lineno, m.start(group) + 1
                    )
            current = _Builder(
                name, model.carriers[src_name], model.carriers[base_name], lineno, m.start(3) + 1
            )
            continue

        m = _PAIR_RE.match(line)
        if m:
            if current is None:
                raise ModelSyntaxError("pair line outside an mrel block", lineno, m.start(1) + 1)
            current.add(m.group(1), m.group(2), lineno, m.start(1) + 1, m.start(2) + 1)
            continue

        if _KEYWORD_RE.match(line):
            raise ModelSyntaxError(f"malformed declaration: {raw.strip()!r}", lineno, 1)

        col = len(line) - len(line.lstrip()) + 1
        raise ModelSyntaxError(f"unrecognised line: {raw.strip()!r}", lineno, col)

    finish()
    return model


def parse_model_file(path: str | Path) -> Model:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        column = exc.start - (data.rfind(b"\n", 0, exc.start) + 1) + 1
        raise ModelSyntaxError(
            f"invalid UTF-8 byte 0x{data[exc.start]:02x}", line, column
        ) from None
    return parse_model(text)
