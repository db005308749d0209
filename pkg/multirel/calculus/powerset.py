"""The powerset apparatus: ℘ carriers, membership, power transpose, the ℘ functor,
singleton maps, subset order and power subidentities.

Element ``i`` of ℘(Y) is the subset with mask ``i``, so a membership row is
its own mask and a power transpose row is ``1 << image``.
"""

from __future__ import annotations

from functools import lru_cache

from multirel import config
from multirel.calculus.relation import subidentity_mask
from multirel.errors import CarrierMismatch, CarrierTooLarge
from multirel.model.ir import Carrier, Relation


def subset_label(base: Carrier, mask: int) -> str:
    """Render a subset in base-carrier order: ``{a,c}``; the empty set is ``{}``."""
    members = [e for j, e in enumerate(base.elements) if mask >> j & 1]
    return "{" + ",".join(members) + "}"


def mask_members(mask: int) -> list[int]:
    return [j for j in range(mask.bit_length()) if mask >> j & 1]


def pow_carrier(base: Carrier, cap: int | None = None) -> Carrier:
    """℘(base): all 2**|base| subsets in ascending mask order.

    ``cap`` defaults to ``config.POWERSET_CAP`` read at call time.
    """
    if cap is None:
        cap = config.POWERSET_CAP
    if base.is_powerset:
        raise CarrierMismatch(f"powerset of powerset carrier {base.name} is not supported")
    if len(base) > cap:
        raise CarrierTooLarge(
            f"carrier {base.name} has {len(base)} elements; powerset cap is {cap}"
        )
    return _pow_carrier(base)


@lru_cache(maxsize=None)
def _pow_carrier(base: Carrier) -> Carrier:
    labels = tuple(subset_label(base, m) for m in range(1 << len(base)))
    return Carrier(name=f"P({base.name})", elements=labels, base=base)


def membership(base: Carrier) -> Relation:
    """∋_Y: ℘(Y)→Y with (B, y) iff y ∈ B."""
    pow_carrier(base)
    return _membership(base)


@lru_cache(maxsize=None)
def _membership(base: Carrier) -> Relation:
    pc = _pow_carrier(base)
    return Relation(pc, base, tuple(range(len(pc))))


def power_transpose(alpha: Relation) -> Relation:
    """α^@: X→℘(Y), the tfn sending x to its image set under α."""
    pc = pow_carrier(alpha.tgt)
    return Relation(alpha.src, pc, tuple(1 << row for row in alpha.rows))


def pow_functor(alpha: Relation) -> Relation:
    """℘(α): ℘(X)→℘(Y), the tfn sending A to its image under α."""
    px = pow_carrier(alpha.src)
    py = pow_carrier(alpha.tgt)
    images = [0] * len(px)
    for mask in range(1, len(px)):
        low = mask & -mask
        images[mask] = images[mask ^ low] | alpha.rows[low.bit_length() - 1]
    return Relation(px, py, tuple(1 << image for image in images))


def singleton_map(base: Carrier) -> Relation:
    """1_X: X→℘(X), x ↦ {x}."""
    pow_carrier(base)
    return _singleton_map(base)


@lru_cache(maxsize=None)
def _singleton_map(base: Carrier) -> Relation:
    pc = _pow_carrier(base)
    return Relation(base, pc, tuple(1 << (1 << i) for i in range(len(base))))


def order_relation(base: Carrier) -> Relation:
    """Ξ_Y on ℘(Y): (A, B) iff A ⊆ B."""
    pow_carrier(base)
    return _order_relation(base)


@lru_cache(maxsize=None)
def _order_relation(base: Carrier) -> Relation:
    pc = _pow_carrier(base)
    n = len(pc)
    rows = []
    for a in range(n):
        row = 0
        for b in range(n):
            if a & b == a:
                row |= 1 << b
        rows.append(row)
    return Relation(pc, pc, tuple(rows))


def power_subidentity(v: Relation) -> Relation:
    """û_v on ℘(Y): (A, A) iff every a ∈ A has (a, a) ∈ v."""
    allowed = subidentity_mask(v)
    pc = pow_carrier(v.src)
    return Relation(
        pc, pc,
        tuple((1 << a) if a | allowed == allowed else 0 for a in range(len(pc))),
    )
