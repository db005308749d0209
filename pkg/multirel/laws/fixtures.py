"""Named multirelations with known behaviour, pinned ahead of every sweep.

``singleton``          the four multirelations on X = {a}, in table order
``tsumagari``          Parikh liftings that break the extension identity on X = {a,b,c}
``furusawa-struth``    a non-associative Peleg triple on X = {a,b}
``kleisli-no-left-unit`` / ``parikh-no-right-unit``
                       every multirelation on X = {a}; searched first by the unit laws
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from multirel.calculus.powerset import pow_carrier
from multirel.calculus.relation import mk_carrier, mk_relation
from multirel.errors import MultirelError
from multirel.model.ir import Carrier, LawId, Multirelation


@dataclass(frozen=True)
class Fixture:
    name: str
    carrier: Carrier
    relations: dict[str, Multirelation]

    def __getitem__(self, key: str) -> Multirelation:
        return self.relations[key]


@dataclass(frozen=True)
class PinnedInstance:
    """A law instance checked before any sweep.

    With no operands the whole fixture is the candidate set of a unit search.
    """

    fixture: str
    law: LawId
    operands: tuple[str, ...] = ()


def _mrel(x: Carrier, pairs: list[tuple[str, str]]) -> Multirelation:
    return Multirelation.of(mk_relation(x, pow_carrier(x), pairs))


# ─── Fixture definitions ────────────────────────────────────────────────────

TABLE_ORDER = ("0", "alpha", "beta", "gamma")


@lru_cache(maxsize=None)
def singleton() -> Fixture:
    x = mk_carrier("X", ["a"])
    return Fixture("singleton", x, {
        "0": _mrel(x, []),
        "alpha": _mrel(x, [("a", "{}")]),
        "beta": _mrel(x, [("a", "{a}")]),
        "gamma": _mrel(x, [("a", "{}"), ("a", "{a}")]),
    })


@lru_cache(maxsize=None)
def tsumagari() -> Fixture:
    x = mk_carrier("X", ["a", "b", "c"])
    return Fixture("tsumagari", x, {
        "alpha": _mrel(x, [("a", "{a,b,c}"), ("b", "{a,b,c}"), ("c", "{a,b,c}")]),
        "beta": _mrel(x, [("a", "{b,c}"), ("b", "{a,c}"), ("c", "{a,b}")]),
        # Left operand that turns the failing extension into an associativity failure.
        "alpha_prime": _mrel(x, [("a", "{a,b}")]),
    })


@lru_cache(maxsize=None)
def furusawa_struth() -> Fixture:
    x = mk_carrier("X", ["a", "b"])
    return Fixture("furusawa-struth", x, {
        "alpha": _mrel(x, [("a", "{a,b}"), ("a", "{a}"), ("b", "{a}")]),
        "beta": _mrel(x, [("a", "{a}"), ("a", "{b}")]),
    })


@lru_cache(maxsize=None)
def kleisli_no_left_unit() -> Fixture:
    return Fixture("kleisli-no-left-unit", singleton().carrier, singleton().relations)


@lru_cache(maxsize=None)
def parikh_no_right_unit() -> Fixture:
    return Fixture("parikh-no-right-unit", singleton().carrier, singleton().relations)


FIXTURES = {
    "singleton": singleton,
    "tsumagari": tsumagari,
    "furusawa-struth": furusawa_struth,
    "kleisli-no-left-unit": kleisli_no_left_unit,
    "parikh-no-right-unit": parikh_no_right_unit,
}


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise MultirelError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


# ─── Pinned instances ───────────────────────────────────────────────────────

PINNED: tuple[PinnedInstance, ...] = (
    PinnedInstance("furusawa-struth", LawId.PELEG_ASSOC, ("alpha", "alpha", "beta")),
    PinnedInstance("furusawa-struth", LawId.WEAK_PELEG_ASSOC, ("alpha", "alpha", "beta")),
    PinnedInstance("furusawa-struth", LawId.LIFT_EXTENSION_PELEG, ("alpha", "beta")),
    PinnedInstance("furusawa-struth", LawId.ORACLE_EQUIVALENCE_PELEG, ("alpha", "beta")),
    PinnedInstance("tsumagari", LawId.PARIKH_ASSOC, ("alpha_prime", "beta", "alpha")),
    PinnedInstance("tsumagari", LawId.LIFT_EXTENSION_PARIKH, ("beta", "alpha")),
    PinnedInstance("tsumagari", LawId.ORACLE_EQUIVALENCE_PARIKH, ("beta", "alpha")),
    PinnedInstance("kleisli-no-left-unit", LawId.KLEISLI_LEFT_UNIT),
    PinnedInstance("parikh-no-right-unit", LawId.PARIKH_RIGHT_UNIT),
)


def pinned_instances(law: LawId, base_size: int) -> list[tuple[str, tuple[Multirelation, ...]]]:
    """The pinned operand tuples for ``law`` whose fixture lives on a base of ``base_size``."""
    found = []
    for pin in PINNED:
        if pin.law != law or not pin.operands:
            continue
        fixture = get_fixture(pin.fixture)
        if len(fixture.carrier) != base_size:
            continue
        found.append((pin.fixture, tuple(fixture[name] for name in pin.operands)))
    return found


def pinned_candidates(law: LawId, base_size: int) -> list[Fixture]:
    """Fixtures pinned as whole candidate sets for ``law`` on a base of ``base_size``."""
    found = []
    for pin in PINNED:
        if pin.law != law or pin.operands:
            continue
        fixture = get_fixture(pin.fixture)
        if len(fixture.carrier) == base_size:
            found.append(fixture)
    return found
