"""Read the ``{a,c}`` subset notation into subset masks."""

from __future__ import annotations

import re

from multirel.errors import ModelSyntaxError, UnknownElement
from multirel.model.ir import Carrier

# Element labels: anything but whitespace, braces, commas and comment marks.
LABEL_RE = re.compile(r"[^\s{},#]+")

_SUBSET_RE = re.compile(r"^\{([^{}]*)\}$")


def parse_subset(text: str, base: Carrier, line: int = 0, column: int = 1) -> int:
    """Parse ``{e1,e2,...}`` over ``base``; ``{}`` is the empty set.

    ``column`` is the 1-based column of the opening brace; errors point at
    the offending element. Repeated elements collapse.
    """
    m = _SUBSET_RE.match(text)
    if not m:
        raise ModelSyntaxError(f"expected a subset like {{a,b}}, got {text!r}", line, column)
    body = m.group(1)
    mask = 0
    if not body.strip():
        return mask
    offset = column + 1
    for part in body.split(","):
        label = part.strip()
        at = offset + (len(part) - len(part.lstrip()))
        if not LABEL_RE.fullmatch(label or " "):
            raise ModelSyntaxError(f"malformed element {label!r} in {text!r}", line, at)
        if label not in base:
            raise UnknownElement(f"{label!r} is not an element of carrier {base.name}", line, at)
        mask |= 1 << base.index(label)
        offset += len(part) + 1
    return mask
