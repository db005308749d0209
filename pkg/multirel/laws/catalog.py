"""The checkable laws: each LawId with its arity, class restrictions and predicate."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import partial
from typing import Callable

from multirel.calculus.liftings import (
    compose_mr,
    is_union_closed_family,
    lift,
    up_closed_family,
)
from multirel.calculus.powerset import membership, singleton_map
from multirel.calculus.relation import compose, converse, includes
from multirel.errors import MultirelError
from multirel.laws.oracle import oracle_compose
from multirel.laws.universe import RowFilter
from multirel.model.ir import Carrier, LawId, LiftKind, Multirelation, Relation, Side


# ─── Law statements ─────────────────────────────────────────────────────────

def check_extension(kind: LiftKind, beta: Relation, gamma: Relation) -> bool:
    """λ(β λ(γ)) = λ(β) λ(γ); equivalent to associativity of the composition."""
    lifted_gamma = lift(kind, gamma)
    lhs = lift(kind, Multirelation.of(compose(beta, lifted_gamma)))
    rhs = compose(lift(kind, beta), lifted_gamma)
    return lhs == rhs


def check_associativity(kind: LiftKind, alpha: Relation, beta: Relation, gamma: Relation) -> bool:
    """(α∙β)∙γ = α∙(β∙γ)."""
    lhs = compose_mr(kind, compose_mr(kind, alpha, beta), gamma)
    rhs = compose_mr(kind, alpha, compose_mr(kind, beta, gamma))
    return lhs == rhs


def check_weak_associativity(alpha: Relation, beta: Relation, gamma: Relation) -> bool:
    """(α∗β)∗γ ⊑ α∗(β∗γ) for Peleg composition."""
    lhs = compose_mr(LiftKind.PELEG, compose_mr(LiftKind.PELEG, alpha, beta), gamma)
    rhs = compose_mr(LiftKind.PELEG, alpha, compose_mr(LiftKind.PELEG, beta, gamma))
    return includes(lhs, rhs)


def membership_converse(base: Carrier) -> Multirelation:
    """∋#: X→℘(X), (x, B) iff x ∈ B; the unit of Parikh composition on up-closed multirelations."""
    return Multirelation.of(converse(membership(base)))


def _right_unit(kind: LiftKind, alpha: Relation) -> bool:
    return compose_mr(kind, alpha, singleton_map(alpha.tgt.base)) == alpha


def _left_unit(kind: LiftKind, alpha: Relation) -> bool:
    return compose_mr(kind, singleton_map(alpha.src), alpha) == alpha


def _peleg_unit(alpha: Relation) -> bool:
    return _left_unit(LiftKind.PELEG, alpha) and _right_unit(LiftKind.PELEG, alpha)


def _parikh_units_up_closed(alpha: Relation) -> bool:
    left = compose_mr(LiftKind.PARIKH, membership_converse(alpha.src), alpha)
    right = compose_mr(LiftKind.PARIKH, alpha, membership_converse(alpha.tgt.base))
    return left == alpha and right == alpha


def _oracle_equivalence(kind: LiftKind, alpha: Relation, beta: Relation) -> bool:
    return oracle_compose(kind, alpha, beta) == compose_mr(kind, alpha, beta)


# ─── Class restrictions (per row) ───────────────────────────────────────────

def up_closed_row(row: int, base: Carrier) -> bool:
    return up_closed_family(row, base) == row


def union_closed_row(row: int, base: Carrier) -> bool:
    return is_union_closed_family(row)


def pfn_row(row: int, base: Carrier) -> bool:
    return row & (row - 1) == 0


# ─── Catalog ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Law:
    """One entry of the catalog.

    ``operands`` names the quantified multirelations (all endo on the swept
    universe) and ``filters`` restricts each of them to a class. Laws with
    ``unit_search`` set quantify over no operands: they hold iff the unit
    search on the universe finds a unit.
    """

    law: LawId
    operands: tuple[str, ...]
    predicate: Callable[..., bool] | None
    filters: tuple[RowFilter | None, ...] = ()
    unit_search: tuple[LiftKind, Side] | None = None
    summary: str = ""

    @property
    def arity(self) -> int:
        return len(self.operands)

    def row_filter(self, position: int) -> RowFilter | None:
        if position < len(self.filters):
            return self.filters[position]
        return None


_TRIPLE = ("alpha", "beta", "gamma")

LAWS: dict[LawId, Law] = {law.law: law for law in (
    Law(LawId.KLEISLI_ASSOC, _TRIPLE, partial(check_associativity, LiftKind.KLEISLI),
        summary="Kleisli composition is associative"),
    Law(LawId.PARIKH_ASSOC, _TRIPLE, partial(check_associativity, LiftKind.PARIKH),
        summary="Parikh composition is associative"),
    Law(LawId.PELEG_ASSOC, _TRIPLE, partial(check_associativity, LiftKind.PELEG),
        summary="Peleg composition is associative"),
    Law(LawId.PELEG_ASSOC_UNION_CLOSED, _TRIPLE, partial(check_associativity, LiftKind.PELEG),
        filters=(None, None, union_closed_row),
        summary="Peleg composition is associative when gamma is union-closed"),
    Law(LawId.PELEG_ASSOC_ALL_UNION_CLOSED, _TRIPLE, partial(check_associativity, LiftKind.PELEG),
        filters=(union_closed_row, union_closed_row, union_closed_row),
        summary="Peleg composition is associative on union-closed multirelations"),
    Law(LawId.PELEG_ASSOC_PFN, _TRIPLE, partial(check_associativity, LiftKind.PELEG),
        filters=(None, None, pfn_row),
        summary="Peleg composition is associative when gamma is a pfn"),
    Law(LawId.PARIKH_ASSOC_UP_CLOSED, _TRIPLE, partial(check_associativity, LiftKind.PARIKH),
        filters=(up_closed_row, up_closed_row, up_closed_row),
        summary="Parikh composition is associative on up-closed multirelations"),
    Law(LawId.KLEISLI_RIGHT_UNIT, ("alpha",), partial(_right_unit, LiftKind.KLEISLI),
        summary="the singleton map is a right unit of Kleisli composition"),
    Law(LawId.KLEISLI_LEFT_UNIT, (), None, unit_search=(LiftKind.KLEISLI, Side.LEFT),
        summary="Kleisli composition has a left unit"),
    Law(LawId.PARIKH_LEFT_UNIT, ("alpha",), partial(_left_unit, LiftKind.PARIKH),
        summary="the singleton map is a left unit of Parikh composition"),
    Law(LawId.PARIKH_RIGHT_UNIT, (), None, unit_search=(LiftKind.PARIKH, Side.RIGHT),
        summary="Parikh composition has a right unit"),
    Law(LawId.PARIKH_UNITS_UP_CLOSED, ("alpha",), _parikh_units_up_closed,
        filters=(up_closed_row,),
        summary="the membership converse is a two-sided Parikh unit on up-closed multirelations"),
    Law(LawId.PELEG_UNIT, ("alpha",), _peleg_unit,
        summary="the singleton map is a two-sided unit of Peleg composition"),
    Law(LawId.LIFT_EXTENSION_KLEISLI, ("beta", "gamma"), partial(check_extension, LiftKind.KLEISLI),
        summary="the Kleisli lifting satisfies the extension identity"),
    Law(LawId.LIFT_EXTENSION_PARIKH, ("beta", "gamma"), partial(check_extension, LiftKind.PARIKH),
        summary="the Parikh lifting satisfies the extension identity"),
    Law(LawId.LIFT_EXTENSION_PELEG, ("beta", "gamma"), partial(check_extension, LiftKind.PELEG),
        summary="the Peleg lifting satisfies the extension identity"),
    Law(LawId.WEAK_PELEG_ASSOC, _TRIPLE, check_weak_associativity,
        summary="(alpha*beta)*gamma is included in alpha*(beta*gamma)"),
    Law(LawId.ORACLE_EQUIVALENCE_KLEISLI, ("alpha", "beta"),
        partial(_oracle_equivalence, LiftKind.KLEISLI),
        summary="Kleisli composition agrees with its set formula"),
    Law(LawId.ORACLE_EQUIVALENCE_PARIKH, ("alpha", "beta"),
        partial(_oracle_equivalence, LiftKind.PARIKH),
        summary="Parikh composition agrees with its set formula"),
    Law(LawId.ORACLE_EQUIVALENCE_PELEG, ("alpha", "beta"),
        partial(_oracle_equivalence, LiftKind.PELEG),
        summary="Peleg composition agrees with its set formula"),
)}

# "lift-extension(kleisli)" -> "lift-extension-kleisli"
_PARAMETRISED_RE = re.compile(r"^([a-z-]+)\((kleisli|parikh|peleg)\)$")


def parse_law_id(text: str) -> LawId:
    name = text.strip()
    m = _PARAMETRISED_RE.match(name)
    if m:
        name = f"{m.group(1)}-{m.group(2)}"
    try:
        return LawId(name)
    except ValueError:
        known = ", ".join(law.value for law in LawId)
        raise MultirelError(f"unknown law {text!r}; known laws: {known}") from None


def get_law(law: LawId | str) -> Law:
    return LAWS[LawId(law)]
