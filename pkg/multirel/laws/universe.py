"""Enumeration and seeded sampling of the multirelations over a base carrier.

A multirelation X→℘(Y) is identified with the integer whose bits are its
matrix read row by row, so index ``k`` of an exhaustive enumeration is the
multirelation with bit pattern ``k``.
"""

from __future__ import annotations

import random
from typing import Callable, Iterator

from multirel import config
from multirel.calculus.powerset import pow_carrier
from multirel.calculus.relation import mk_carrier
from multirel.errors import UniverseTooLarge
from multirel.model.ir import Carrier, Multirelation

# Per-row restriction of a class of multirelations; receives the row's
# family of subset masks and the target base carrier.
RowFilter = Callable[[int, Carrier], bool]


def universe_carrier(size: int) -> Carrier:
    """The carrier X = {a, b, ...} of the given size used by sweeps."""
    if size < 1 or size > len(config.UNIVERSE_LABELS):
        raise UniverseTooLarge(
            f"universe size {size} is outside 1..{len(config.UNIVERSE_LABELS)}"
        )
    return mk_carrier("X", config.UNIVERSE_LABELS[:size])


def count(src: Carrier, tgt_base: Carrier) -> int:
    return 1 << (len(src) * (1 << len(tgt_base)))


def relation_from_index(src: Carrier, tgt_base: Carrier, index: int) -> Multirelation:
    ptgt = pow_carrier(tgt_base)
    width = len(ptgt)
    full = ptgt.full_mask
    rows = tuple((index >> (i * width)) & full for i in range(len(src)))
    return Multirelation(src, ptgt, rows)


def enumerate_all(
    src: Carrier, tgt_base: Carrier, row_filter: RowFilter | None = None,
) -> Iterator[Multirelation]:
    """Every multirelation src→℘(tgt_base) in index order, optionally restricted."""
    for index in range(count(src, tgt_base)):
        mr = relation_from_index(src, tgt_base, index)
        if row_filter is None or all(row_filter(row, tgt_base) for row in mr.rows):
            yield mr


def sample(
    rng: random.Random, src: Carrier, tgt_base: Carrier, row_filter: RowFilter | None = None,
) -> Multirelation:
    """One uniform draw from the (restricted) class.

    Each row is drawn independently and redrawn until it passes ``row_filter``,
    which keeps the draw uniform over the class because every supported class
    is a product of per-row conditions.
    """
    ptgt = pow_carrier(tgt_base)
    width = len(ptgt)
    rows = []
    for _ in range(len(src)):
        row = rng.getrandbits(width)
        while row_filter is not None and not row_filter(row, tgt_base):
            row = rng.getrandbits(width)
        rows.append(row)
    return Multirelation(src, ptgt, tuple(rows))


def instance_rng(seed: int, index: int) -> random.Random:
    """The generator for sampled instance ``index``; independent of chunking."""
    return random.Random(f"{seed}/{index}")
