"""Finite carriers and the relational calculus over boolean-matrix relations.

Rows are packed into Python ints, so composition is an OR over the rows
selected by a bitmask and residuals are per-row subset tests.
"""

from __future__ import annotations

from typing import Callable, Iterable

from multirel.errors import CarrierMismatch, DuplicateElement, EmptyCarrier, NotSubidentity
from multirel.model.ir import Carrier, Relation


def mk_carrier(name: str, elements: Iterable[str]) -> Carrier:
    """Build a base carrier whose element order is the given order."""
    elems = tuple(elements)
    if not elems:
        raise EmptyCarrier(f"carrier {name} has no elements")
    seen: set[str] = set()
    for e in elems:
        if e in seen:
            raise DuplicateElement(f"element {e!r} occurs twice in carrier {name}")
        seen.add(e)
    return Carrier(name=name, elements=elems)


def mk_relation(src: Carrier, tgt: Carrier, pairs: Iterable[tuple[str, str]]) -> Relation:
    """Build the relation holding exactly at the listed label pairs."""
    rows = [0] * len(src)
    for a, b in pairs:
        rows[src.index(a)] |= 1 << tgt.index(b)
    return Relation(src, tgt, tuple(rows))


def from_rows(src: Carrier, tgt: Carrier, rows: Iterable[int]) -> Relation:
    return Relation(src, tgt, tuple(rows))


def from_predicate(src: Carrier, tgt: Carrier, pred: Callable[[int, int], bool]) -> Relation:
    """Build the relation holding at (i, j) iff ``pred(i, j)``."""
    rows = []
    for i in range(len(src)):
        row = 0
        for j in range(len(tgt)):
            if pred(i, j):
                row |= 1 << j
        rows.append(row)
    return Relation(src, tgt, tuple(rows))


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

def empty(src: Carrier, tgt: Carrier) -> Relation:
    return Relation(src, tgt, (0,) * len(src))


def universal(src: Carrier, tgt: Carrier) -> Relation:
    return Relation(src, tgt, (tgt.full_mask,) * len(src))


def identity(carrier: Carrier) -> Relation:
    return Relation(carrier, carrier, tuple(1 << i for i in range(len(carrier))))


def subidentity(carrier: Carrier, labels: Iterable[str]) -> Relation:
    """The subidentity holding at (x, x) for each listed x."""
    return mk_relation(carrier, carrier, [(x, x) for x in labels])


# ---------------------------------------------------------------------------
# Composition, converse and lattice operations
# ---------------------------------------------------------------------------

def _require_same_type(alpha: Relation, beta: Relation, op: str) -> None:
    if alpha.src != beta.src or alpha.tgt != beta.tgt:
        raise CarrierMismatch(
            f"{op}: {alpha.src.name}->{alpha.tgt.name} and "
            f"{beta.src.name}->{beta.tgt.name} differ in type"
        )


def _require_composable(alpha: Relation, beta: Relation, op: str) -> None:
    if alpha.tgt != beta.src:
        raise CarrierMismatch(
            f"{op}: target {alpha.tgt.name} of the left operand is not "
            f"the source {beta.src.name} of the right operand"
        )


def compose(alpha: Relation, beta: Relation) -> Relation:
    """Relational composition αβ: (x,z) iff some y has (x,y)∈α and (y,z)∈β."""
    _require_composable(alpha, beta, "compose")
    brows = beta.rows
    rows = []
    for row in alpha.rows:
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc |= brows[j]
            row >>= 1
            j += 1
        rows.append(acc)
    return Relation(alpha.src, beta.tgt, tuple(rows))


def converse(alpha: Relation) -> Relation:
    cols = [0] * len(alpha.tgt)
    for i, j in alpha.pairs():
        cols[j] |= 1 << i
    return Relation(alpha.tgt, alpha.src, tuple(cols))


def meet(alpha: Relation, beta: Relation) -> Relation:
    _require_same_type(alpha, beta, "meet")
    return Relation(alpha.src, alpha.tgt, tuple(a & b for a, b in zip(alpha.rows, beta.rows)))


def join(alpha: Relation, beta: Relation) -> Relation:
    _require_same_type(alpha, beta, "join")
    return Relation(alpha.src, alpha.tgt, tuple(a | b for a, b in zip(alpha.rows, beta.rows)))


def join_all(src: Carrier, tgt: Carrier, relations: Iterable[Relation]) -> Relation:
    """Join of a family of relations of type src→tgt; the empty join is 0."""
    acc = empty(src, tgt)
    for rel in relations:
        acc = join(acc, rel)
    return acc


def includes(alpha: Relation, beta: Relation) -> bool:
    """True iff α ⊑ β. Note the order: the first argument is the smaller one."""
    _require_same_type(alpha, beta, "includes")
    return all(a & ~b == 0 for a, b in zip(alpha.rows, beta.rows))


# ---------------------------------------------------------------------------
# Residuals
# ---------------------------------------------------------------------------

def left_residual(alpha: Relation, beta: Relation) -> Relation:
    """α◁β: (x,z) iff every y with (y,z)∈β has (x,y)∈α."""
    _require_composable(alpha, beta, "left_residual")
    columns = converse(beta).rows
    rows = []
    for arow in alpha.rows:
        row = 0
        for z, col in enumerate(columns):
            if col & ~arow == 0:
                row |= 1 << z
        rows.append(row)
    return Relation(alpha.src, beta.tgt, tuple(rows))


def right_residual(alpha: Relation, beta: Relation) -> Relation:
    """α▷β: (x,z) iff every y with (x,y)∈α has (y,z)∈β."""
    _require_composable(alpha, beta, "right_residual")
    full = beta.tgt.full_mask
    brows = beta.rows
    rows = []
    for arow in alpha.rows:
        acc = full
        j = 0
        while arow:
            if arow & 1:
                acc &= brows[j]
            arow >>= 1
            j += 1
        rows.append(acc)
    return Relation(alpha.src, beta.tgt, tuple(rows))


# ---------------------------------------------------------------------------
# Domain and function predicates
# ---------------------------------------------------------------------------

def domain(alpha: Relation) -> Relation:
    """The subidentity on the source selecting the nonempty rows of α."""
    return Relation(
        alpha.src, alpha.src,
        tuple((1 << i) if row else 0 for i, row in enumerate(alpha.rows)),
    )


def is_univalent(alpha: Relation) -> bool:
    return all(row & (row - 1) == 0 for row in alpha.rows)


def is_total(alpha: Relation) -> bool:
    return all(alpha.rows)


def is_pfn(alpha: Relation) -> bool:
    return is_univalent(alpha)


def is_tfn(alpha: Relation) -> bool:
    return is_univalent(alpha) and is_total(alpha)


def is_subidentity(v: Relation) -> bool:
    if v.src != v.tgt:
        return False
    return all(row & ~(1 << i) == 0 for i, row in enumerate(v.rows))


def require_subidentity(v: Relation) -> None:
    if not is_subidentity(v):
        raise NotSubidentity(f"relation on {v.src.name}->{v.tgt.name} is not below the identity")


def subidentity_mask(v: Relation) -> int:
    """Bitmask of the elements x with (x,x) ∈ v."""
    require_subidentity(v)
    mask = 0
    for i, row in enumerate(v.rows):
        if row:
            mask |= 1 << i
    return mask


# ---------------------------------------------------------------------------
# Dedekind formula
# ---------------------------------------------------------------------------

def dedekind(alpha: Relation, beta: Relation, gamma: Relation) -> bool:
    """(DF): αβ ⊓ γ ⊑ α(β ⊓ α#γ)."""
    lhs = meet(compose(alpha, beta), gamma)
    rhs = compose(alpha, meet(beta, compose(converse(alpha), gamma)))
    return includes(lhs, rhs)


def dedekind_star(alpha: Relation, beta: Relation, gamma: Relation) -> bool:
    """(DF*): αβ ⊓ γ ⊑ (α ⊓ γβ#)(β ⊓ α#γ)."""
    lhs = meet(compose(alpha, beta), gamma)
    rhs = compose(
        meet(alpha, compose(gamma, converse(beta))),
        meet(beta, compose(converse(alpha), gamma)),
    )
    return includes(lhs, rhs)
