"""Intermediate representation dataclasses: carriers, relations, models and law reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from multirel.errors import CarrierMismatch, UnknownElement


@dataclass(frozen=True)
class Carrier:
    """A named, ordered finite set; element ``i`` of the order has index ``i``.

    A powerset carrier has ``base`` set and its element ``i`` is the subset of
    ``base`` whose members sit at the bit positions set in ``i``.
    """

    name: str
    elements: tuple[str, ...]
    base: Carrier | None = None
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})

    @property
    def kind(self) -> str:
        return "powerset" if self.base is not None else "base"

    @property
    def is_powerset(self) -> bool:
        return self.base is not None

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"{label!r} is not an element of carrier {self.name}") from None

    def __contains__(self, label: object) -> bool:
        return label in self._index


@dataclass(frozen=True, eq=False)
class Relation:
    """A boolean matrix between two carriers, one int bitmask per source row.

    Bit ``j`` of ``rows[i]`` is set iff element ``i`` of ``src`` is related to
    element ``j`` of ``tgt``. Values are immutable; every operation returns a
    new Relation.
    """

    src: Carrier
    tgt: Carrier
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != len(self.src):
            raise CarrierMismatch(
                f"matrix has {len(self.rows)} rows but carrier {self.src.name} "
                f"has {len(self.src)} elements"
            )
        limit = 1 << len(self.tgt)
        for row in self.rows:
            if row < 0 or row >= limit:
                raise CarrierMismatch(f"row {row:#x} does not fit carrier {self.tgt.name}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.src == other.src and self.tgt == other.tgt and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.src, self.tgt, self.rows))

    def holds(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Yield index pairs sorted by source index, then target index."""
        for i, row in enumerate(self.rows):
            j = 0
            while row:
                if row & 1:
                    yield i, j
                row >>= 1
                j += 1

    def labelled_pairs(self) -> list[tuple[str, str]]:
        return [(self.src.elements[i], self.tgt.elements[j]) for i, j in self.pairs()]

    def count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def to_text(self) -> str:
        """Inline set notation, e.g. ``{(a,{a,b}),(b,{})}``."""
        return "{" + ",".join(f"({a},{b})" for a, b in self.labelled_pairs()) + "}"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.src.name}->{self.tgt.name}: {self.to_text()})"


@dataclass(frozen=True, eq=False, repr=False)
class Multirelation(Relation):
    """A Relation whose target is a powerset carrier ℘(Y)."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.tgt.is_powerset:
            raise CarrierMismatch(
                f"multirelation target must be a powerset carrier, got {self.tgt.name}"
            )

    @property
    def target_base(self) -> Carrier:
        assert self.tgt.base is not None
        return self.tgt.base

    @classmethod
    def of(cls, rel: Relation) -> Multirelation:
        if isinstance(rel, Multirelation):
            return rel
        return cls(rel.src, rel.tgt, rel.rows)


class LiftKind(str, Enum):
    KLEISLI = "kleisli"
    PARIKH = "parikh"
    PELEG = "peleg"


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"


class LawId(str, Enum):
    KLEISLI_ASSOC = "kleisli-assoc"
    PARIKH_ASSOC = "parikh-assoc"
    PELEG_ASSOC = "peleg-assoc"
    PELEG_ASSOC_UNION_CLOSED = "peleg-assoc-union-closed"
    PELEG_ASSOC_ALL_UNION_CLOSED = "peleg-assoc-all-union-closed"
    PELEG_ASSOC_PFN = "peleg-assoc-pfn"
    PARIKH_ASSOC_UP_CLOSED = "parikh-assoc-up-closed"
    KLEISLI_RIGHT_UNIT = "kleisli-right-unit"
    KLEISLI_LEFT_UNIT = "kleisli-left-unit"
    PARIKH_LEFT_UNIT = "parikh-left-unit"
    PARIKH_RIGHT_UNIT = "parikh-right-unit"
    PARIKH_UNITS_UP_CLOSED = "parikh-units-up-closed"
    PELEG_UNIT = "peleg-unit"
    LIFT_EXTENSION_KLEISLI = "lift-extension-kleisli"
    LIFT_EXTENSION_PARIKH = "lift-extension-parikh"
    LIFT_EXTENSION_PELEG = "lift-extension-peleg"
    WEAK_PELEG_ASSOC = "weak-peleg-assoc"
    ORACLE_EQUIVALENCE_KLEISLI = "oracle-equivalence-kleisli"
    ORACLE_EQUIVALENCE_PARIKH = "oracle-equivalence-parikh"
    ORACLE_EQUIVALENCE_PELEG = "oracle-equivalence-peleg"


EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"


@dataclass(frozen=True)
class LawReport:
    """Outcome of a law check or sweep.

    ``witness`` maps operand names to rendered relations and is present iff
    the verdict is ``fails``. Sampled reports always record their seed.
    """

    law: LawId
    universe: int
    mode: str
    verdict: str
    witness: dict[str, str] | None = None
    checked: int = 0
    samples: int | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if (self.verdict == "fails") != (self.witness is not None):
            raise ValueError("a witness must be present exactly when the verdict is 'fails'")
        if self.mode == SAMPLED and self.seed is None:
            raise ValueError("sampled reports must record their seed")

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    @property
    def mode_label(self) -> str:
        if self.mode == SAMPLED:
            return f"sampled({self.samples},{self.seed})"
        return self.mode


@dataclass
class Model:
    """Named carriers and named multirelations read from a model file."""

    carriers: dict[str, Carrier] = field(default_factory=dict)
    mrels: dict[str, Multirelation] = field(default_factory=dict)
