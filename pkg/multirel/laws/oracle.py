"""Set-theoretic evaluation of the three compositions, independent of the liftings.

Subsets are handled as frozensets of element indices so that none of the
mask arithmetic in ``multirel.calculus`` is reused here.
"""

from __future__ import annotations

from itertools import combinations, product
from math import prod

from multirel import config
from multirel.errors import CarrierMismatch, EnumerationCapExceeded
from multirel.model.ir import LiftKind, Multirelation, Relation


def _as_sets(mr: Relation) -> list[list[frozenset[int]]]:
    """For each source element, the image sets it is related to."""
    base = mr.tgt.base
    assert base is not None
    images: list[list[frozenset[int]]] = [[] for _ in range(len(mr.src))]
    for i, j in mr.pairs():
        images[i].append(frozenset(k for k in range(len(base)) if j >> k & 1))
    return images


def _all_subsets(n: int) -> list[frozenset[int]]:
    return [frozenset(c) for r in range(n + 1) for c in combinations(range(n), r)]


def _to_mask(subset: frozenset[int]) -> int:
    return sum(1 << k for k in subset)


def _kleisli(block: frozenset[int], beta: list[list[frozenset[int]]]) -> set[frozenset[int]]:
    union: frozenset[int] = frozenset()
    for b in block:
        for image in beta[b]:
            union |= image
    return {union}


def _parikh(
    block: frozenset[int], beta: list[list[frozenset[int]]], targets: list[frozenset[int]],
) -> set[frozenset[int]]:
    return {a for a in targets if all(a in beta[b] for b in block)}


def _peleg(
    block: frozenset[int], beta: list[list[frozenset[int]]], cap: int,
) -> set[frozenset[int]]:
    members = sorted(block)
    total = prod(len(beta[b]) for b in members)
    if total > cap:
        raise EnumerationCapExceeded(
            f"{total} choice functions over {len(members)} elements exceed "
            f"the enumeration cap {cap}"
        )
    return {frozenset().union(*choice) for choice in product(*(beta[b] for b in members))}


def oracle_compose(
    kind: LiftKind, alpha: Relation, beta: Relation, cap: int | None = None,
) -> Multirelation:
    """α∙β read directly off the set formulas.

    kleisli: (a, A) iff some (a, B) ∈ α has A = ⋃ β(B);
    parikh:  (a, A) iff some (a, B) ∈ α has (b, A) ∈ β for every b ∈ B;
    peleg:   (a, A) iff some (a, B) ∈ α admits a choice C_b ∈ β(b) per b ∈ B
             whose union is A.
    """
    kind = LiftKind(kind)
    if not alpha.tgt.is_powerset or not beta.tgt.is_powerset:
        raise CarrierMismatch("oracle_compose expects multirelations into powerset carriers")
    if alpha.tgt.base != beta.src:
        raise CarrierMismatch(
            f"oracle_compose: left operand targets {alpha.tgt.name} but the right "
            f"operand starts at {beta.src.name}"
        )
    if cap is None:
        cap = config.ENUMERATION_CAP
    left = _as_sets(alpha)
    right = _as_sets(beta)
    targets = _all_subsets(len(beta.tgt.base))

    rows = []
    for blocks in left:
        row = 0
        for block in blocks:
            if kind is LiftKind.KLEISLI:
                results = _kleisli(block, right)
            elif kind is LiftKind.PARIKH:
                results = _parikh(block, right, targets)
            else:
                results = _peleg(block, right, cap)
            for result in results:
                row |= 1 << _to_mask(result)
        rows.append(row)
    return Multirelation(alpha.src, beta.tgt, tuple(rows))
