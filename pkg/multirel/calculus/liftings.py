"""Kleisli, Parikh and Peleg liftings of multirelations, the compositions they
induce, choice-function enumeration and the up-closed / union-closed classes."""

from __future__ import annotations

from itertools import product
from math import prod

from multirel import config
from multirel.calculus.powerset import (
    mask_members,
    membership,
    order_relation,
    pow_carrier,
    pow_functor,
    power_subidentity,
)
from multirel.calculus.relation import compose, domain, join_all, right_residual
from multirel.errors import CarrierMismatch, EnumerationCapExceeded
from multirel.model.ir import Carrier, LiftKind, Multirelation, Relation


def _require_multirelation(beta: Relation) -> Multirelation:
    if not beta.tgt.is_powerset:
        raise CarrierMismatch(
            f"expected a multirelation into a powerset carrier, got target {beta.tgt.name}"
        )
    return Multirelation.of(beta)


# ---------------------------------------------------------------------------
# Liftings
# ---------------------------------------------------------------------------

def kleisli_lift(beta: Relation) -> Relation:
    """β_∘ = ℘(β∋_Z): B ↦ the union of every C with (b, C) ∈ β for some b ∈ B."""
    mr = _require_multirelation(beta)
    return pow_functor(compose(mr, membership(mr.target_base)))


def parikh_lift(beta: Relation) -> Relation:
    """β_◇ = ∋_Y ▷ β: (B, A) iff (b, A) ∈ β for every b ∈ B."""
    mr = _require_multirelation(beta)
    return right_residual(membership(mr.src), mr)


def peleg_lift(beta: Relation) -> Relation:
    """β_*: (B, A) iff B ⊆ dom β and some choice C_b ∈ β(b), b ∈ B, has union A.

    Row B of the result is the set of unions reachable by choosing one image
    set per element of B, built from row ``B - {lowest b}`` in one pass over
    the choices of the lowest b. Rows for B ⊄ dom β stay empty.
    """
    mr = _require_multirelation(beta)
    py = pow_carrier(mr.src)
    pz = mr.tgt
    reach = [0] * len(py)
    reach[0] = 1  # only the empty union is reachable from the empty set
    for mask in range(1, len(py)):
        low = mask & -mask
        prev = reach[mask ^ low]
        choices = mr.rows[low.bit_length() - 1]
        if not prev or not choices:
            continue
        acc = 0
        for c in mask_members(choices):
            for u in mask_members(prev):
                acc |= 1 << (u | c)
        reach[mask] = acc
    return Relation(py, pz, tuple(reach))


def peleg_lift_by_enumeration(beta: Relation, cap: int | None = None) -> Relation:
    """β_* as the join of û_{dom β} f_∘ over every f ⊑_c β."""
    mr = _require_multirelation(beta)
    guard = power_subidentity(domain(mr))
    py = pow_carrier(mr.src)
    return join_all(
        py, mr.tgt,
        (compose(guard, kleisli_lift(f)) for f in enumerate_pfns_c(mr, cap=cap)),
    )


_LIFTS = {
    LiftKind.KLEISLI: kleisli_lift,
    LiftKind.PARIKH: parikh_lift,
    LiftKind.PELEG: peleg_lift,
}


def lift(kind: LiftKind, beta: Relation) -> Relation:
    return _LIFTS[LiftKind(kind)](beta)


def compose_mr(kind: LiftKind, alpha: Relation, beta: Relation) -> Multirelation:
    """α∙β = α λ(β) for the composition selected by ``kind``."""
    left = _require_multirelation(alpha)
    right = _require_multirelation(beta)
    if left.target_base != right.src:
        raise CarrierMismatch(
            f"compose_mr: left operand targets P({left.target_base.name}) but the "
            f"right operand starts at {right.src.name}"
        )
    return Multirelation.of(compose(left, lift(kind, right)))


# ---------------------------------------------------------------------------
# Choice functions
# ---------------------------------------------------------------------------

def enumerate_pfns_c(beta: Relation, cap: int | None = None) -> list[Multirelation]:
    """Every pfn f ⊑ β with dom f = dom β, in row-major lexicographic choice order.

    ``cap`` bounds the product of the nonempty row degrees and defaults to
    ``config.ENUMERATION_CAP``.
    """
    mr = _require_multirelation(beta)
    if cap is None:
        cap = config.ENUMERATION_CAP
    options = [mask_members(row) for row in mr.rows]
    count = prod(len(opts) for opts in options if opts)
    if count > cap:
        raise EnumerationCapExceeded(
            f"{count} choice functions exceed the enumeration cap {cap}"
        )
    per_row = [[1 << c for c in opts] if opts else [0] for opts in options]
    return [Multirelation(mr.src, mr.tgt, rows) for rows in product(*per_row)]


# ---------------------------------------------------------------------------
# Up-closed and union-closed classes
# ---------------------------------------------------------------------------

def up_closed_family(family: int, base: Carrier) -> int:
    """Every superset of a member of ``family``, as a family over ℘(base)."""
    order = order_relation(base).rows
    closed = 0
    for member in mask_members(family):
        closed |= order[member]
    return closed


def union_closed_family(family: int) -> int:
    """Close a family of subset masks (itself a bitmask) under binary union."""
    members = mask_members(family)
    frontier = list(members)
    while frontier:
        fresh = []
        for u in frontier:
            for v in members:
                w = u | v
                if not family >> w & 1:
                    family |= 1 << w
                    fresh.append(w)
        members.extend(fresh)
        frontier = fresh
    return family


def is_union_closed_family(family: int) -> bool:
    members = mask_members(family)
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            if not family >> (u | v) & 1:
                return False
    return True


def up_closure(alpha: Relation) -> Multirelation:
    """αΞ: the least up-closed multirelation containing α."""
    mr = _require_multirelation(alpha)
    return Multirelation.of(compose(mr, order_relation(mr.target_base)))


def is_up_closed(alpha: Relation) -> bool:
    return up_closure(alpha) == alpha


def is_union_closed(gamma: Relation) -> bool:
    """True iff every row's family of image sets is closed under binary union."""
    mr = _require_multirelation(gamma)
    return all(is_union_closed_family(row) for row in mr.rows)


def union_closure(gamma: Relation) -> Multirelation:
    mr = _require_multirelation(gamma)
    return Multirelation(mr.src, mr.tgt, tuple(union_closed_family(row) for row in mr.rows))
