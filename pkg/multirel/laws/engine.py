"""Law checks, unit search and exhaustive/sampled sweeps over finite universes."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import islice, product
from math import prod
from typing import Any, Callable, Iterator

from multirel import config
from multirel.calculus.liftings import lift
from multirel.calculus.powerset import pow_carrier
from multirel.calculus.relation import compose, identity
from multirel.errors import MultirelError, UniverseTooLarge
from multirel.laws.catalog import (  # noqa: F401  re-exported law statements
    Law,
    check_associativity,
    check_extension,
    check_weak_associativity,
    get_law,
)
from multirel.laws.fixtures import pinned_candidates, pinned_instances
from multirel.laws.universe import (
    count,
    enumerate_all,
    instance_rng,
    sample,
    universe_carrier,
)
from multirel.model.ir import (
    EXHAUSTIVE,
    SAMPLED,
    Carrier,
    LawId,
    LawReport,
    LiftKind,
    Multirelation,
    Relation,
    Side,
)

logger = logging.getLogger(__name__)

TraceSink = Callable[[dict[str, Any]], None]

_UNIT_LAWS = {
    (LiftKind.KLEISLI, Side.LEFT): LawId.KLEISLI_LEFT_UNIT,
    (LiftKind.KLEISLI, Side.RIGHT): LawId.KLEISLI_RIGHT_UNIT,
    (LiftKind.PARIKH, Side.LEFT): LawId.PARIKH_LEFT_UNIT,
    (LiftKind.PARIKH, Side.RIGHT): LawId.PARIKH_RIGHT_UNIT,
    (LiftKind.PELEG, Side.LEFT): LawId.PELEG_UNIT,
    (LiftKind.PELEG, Side.RIGHT): LawId.PELEG_UNIT,
}


# ─── Units ──────────────────────────────────────────────────────────────────

def _require_unit_universe(carrier: Carrier) -> None:
    if len(carrier) > config.UNIT_SEARCH_LIMIT:
        raise UniverseTooLarge(
            f"unit search visits every multirelation on {carrier.name}; "
            f"base size {len(carrier)} exceeds the limit {config.UNIT_SEARCH_LIMIT}"
        )


def find_units(kind: LiftKind, side: Side, carrier: Carrier) -> list[Multirelation]:
    """Every ι: X→℘(X) that is a ``side`` unit of the composition on ``carrier``.

    The search is exhaustive over candidates and over the operands each
    candidate is tested against.
    """
    kind, side = LiftKind(kind), Side(side)
    _require_unit_universe(carrier)
    units = _search_units(kind, side, list(enumerate_all(carrier, carrier)))
    logger.debug("%s %s units on %s: %d found", kind.value, side.value, carrier.name, len(units))
    return units


def _search_units(
    kind: LiftKind, side: Side, everything: list[Multirelation],
) -> list[Multirelation]:
    """The members of ``everything`` that are ``side`` units against all of it."""
    lifts = [lift(kind, alpha) for alpha in everything]
    units = []
    for iota in everything:
        if side in (Side.LEFT, Side.BOTH):
            if not all(compose(iota, la) == alpha for alpha, la in zip(everything, lifts)):
                continue
        if side in (Side.RIGHT, Side.BOTH):
            lifted = lift(kind, iota)
            if not all(compose(alpha, lifted) == alpha for alpha in everything):
                continue
        units.append(iota)
    return units


def check_unit(
    kind: LiftKind,
    side: Side,
    iota: Relation,
    mode: str = EXHAUSTIVE,
    samples: int | None = None,
    seed: int | None = None,
) -> LawReport:
    """Check ι as a unit on its own carrier.

    The right side is decided by λ(ι) = id on ℘(X). The left side checks
    ι λ(α) = α for every α (exhaustive) or for seeded random α (sampled).
    ``Side.BOTH`` checks the right side first and reports the first failure.
    """
    kind, side = LiftKind(kind), Side(side)
    iota = Multirelation.of(iota)
    carrier = iota.src
    if side is Side.BOTH:
        right = check_unit(kind, Side.RIGHT, iota)
        if not right.holds:
            return right
        return check_unit(kind, Side.LEFT, iota, mode, samples, seed)

    law = _UNIT_LAWS[(kind, side)]
    if side is Side.RIGHT:
        lifted = lift(kind, iota)
        holds = lifted == identity(pow_carrier(carrier))
        witness = None if holds else {"iota": iota.to_text(), "lift": lifted.to_text()}
        return LawReport(law, len(carrier), EXHAUSTIVE, "holds" if holds else "fails",
                         witness, checked=1)

    if mode == EXHAUSTIVE:
        if len(carrier) > config.EXHAUSTIVE_LIMITS[1]:
            raise UniverseTooLarge(
                f"exhaustive unit check on base size {len(carrier)} exceeds "
                f"the limit {config.EXHAUSTIVE_LIMITS[1]}"
            )
        operands: Iterator[Multirelation] = enumerate_all(carrier, carrier)
    elif mode == SAMPLED:
        samples = config.DEFAULT_SAMPLES if samples is None else samples
        seed = config.DEFAULT_SEED if seed is None else seed
        operands = (sample(instance_rng(seed, k), carrier, carrier) for k in range(samples))
    else:
        raise MultirelError(f"unknown sweep mode {mode!r}")

    checked = 0
    for index, alpha in enumerate(operands):
        checked += 1
        if compose(iota, lift(kind, alpha)) != alpha:
            witness = {"instance": str(index), "iota": iota.to_text(), "alpha": alpha.to_text()}
            return LawReport(law, len(carrier), mode, "fails", witness, checked, samples, seed)
    return LawReport(law, len(carrier), mode, "holds", None, checked, samples, seed)


# ─── Extension failures as associativity failures ──────────────────────────

def associativity_witness(
    kind: LiftKind, beta: Relation, gamma: Relation,
) -> tuple[Multirelation, Multirelation, Multirelation] | None:
    """Turn a failing extension identity for (β, γ) into a failing triple.

    With α the identity on ℘(Y), viewed as a multirelation ℘(Y)→℘(Y), the
    two bracketings of α∙β∙γ are exactly the two sides of the extension
    identity. Returns None when the identity holds.
    """
    if check_extension(kind, beta, gamma):
        return None
    py = pow_carrier(beta.src)
    alpha = Multirelation.of(identity(py))
    return alpha, Multirelation.of(beta), Multirelation.of(gamma)


# ─── Sweeps ─────────────────────────────────────────────────────────────────

def _passes_filters(entry: Law, operands: tuple[Multirelation, ...]) -> bool:
    for position, mr in enumerate(operands):
        row_filter = entry.row_filter(position)
        if row_filter is not None and not all(row_filter(row, mr.target_base) for row in mr.rows):
            return False
    return True


def _render_operands(entry: Law, operands: tuple[Multirelation, ...]) -> dict[str, str]:
    return {name: mr.to_text() for name, mr in zip(entry.operands, operands)}


class _Universe:
    """The instance space of one sweep, addressable by instance index."""

    def __init__(self, entry: Law, carrier: Carrier, mode: str, seed: int, samples: int) -> None:
        self.entry = entry
        self.carrier = carrier
        self.mode = mode
        self.seed = seed
        if mode == EXHAUSTIVE:
            self.members = [
                list(enumerate_all(carrier, carrier, entry.row_filter(p)))
                for p in range(entry.arity)
            ]
            self.size = prod(len(m) for m in self.members)
        else:
            self.members = []
            self.size = samples

    def instances(self, start: int, stop: int) -> Iterator[tuple[int, tuple[Multirelation, ...]]]:
        if self.mode == EXHAUSTIVE:
            chunk = islice(product(*self.members), start, stop)
            yield from enumerate(chunk, start)
            return
        for index in range(start, stop):
            rng = instance_rng(self.seed, index)
            yield index, tuple(
                sample(rng, self.carrier, self.carrier, self.entry.row_filter(p))
                for p in range(self.entry.arity)
            )


def _scan(
    universe: _Universe, start: int, stop: int, trace: TraceSink | None = None,
) -> tuple[int, tuple[Multirelation, ...]] | None:
    """First failing instance in [start, stop), or None."""
    entry = universe.entry
    for index, operands in universe.instances(start, stop):
        holds = entry.predicate(*operands)
        if trace is not None:
            trace({"law": entry.law.value, "index": index, "holds": holds,
                   "operands": _render_operands(entry, operands)})
        if not holds:
            return index, operands
    return None


def _scan_chunk(
    law: str, base_size: int, mode: str, seed: int, samples: int, start: int, stop: int,
) -> tuple[int, tuple[Multirelation, ...]] | None:
    entry = get_law(law)
    universe = _Universe(entry, universe_carrier(base_size), mode, seed, samples)
    logger.debug("%s: scanning instances %d..%d", law, start, stop)
    return _scan(universe, start, stop)


def _scan_parallel(
    universe: _Universe, base_size: int, samples: int, workers: int,
) -> tuple[int, tuple[Multirelation, ...]] | None:
    chunks = workers * 4
    step = max(1, -(-universe.size // chunks))
    bounds = [(lo, min(lo + step, universe.size)) for lo in range(0, universe.size, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_scan_chunk, universe.entry.law.value, base_size, universe.mode,
                        universe.seed, samples, lo, hi)
            for lo, hi in bounds
        ]
        results = [f.result() for f in futures]
    failures = [r for r in results if r is not None]
    if not failures:
        return None
    return min(failures, key=lambda r: r[0])


def _unit_existence(entry: Law, base_size: int) -> LawReport:
    assert entry.unit_search is not None
    kind, side = entry.unit_search
    carrier = universe_carrier(base_size)
    _require_unit_universe(carrier)
    candidates = count(carrier, carrier)
    for fixture in pinned_candidates(entry.law, base_size):
        members = list(dict.fromkeys(fixture.relations.values()))
        # only a fixture holding every multirelation on its carrier decides existence
        if len(members) != count(fixture.carrier, fixture.carrier):
            continue
        verdict = "holds" if _search_units(kind, side, members) else "fails"
        witness = None
        if verdict == "fails":
            witness = {
                "instance": fixture.name,
                "search": f"no {side.value} unit among {len(members)} candidates",
            }
        logger.info("%s decided by pinned fixture %s", entry.law.value, fixture.name)
        return LawReport(entry.law, base_size, EXHAUSTIVE, verdict, witness, checked=len(members))

    units = find_units(kind, side, carrier)
    if units:
        return LawReport(entry.law, base_size, EXHAUSTIVE, "holds", None, checked=candidates)
    witness = {"search": f"no {side.value} unit among {candidates} candidates"}
    return LawReport(entry.law, base_size, EXHAUSTIVE, "fails", witness, checked=candidates)


def sweep(
    law: LawId | str,
    base_size: int,
    mode: str = EXHAUSTIVE,
    samples: int | None = None,
    seed: int | None = None,
    workers: int = 1,
    trace: TraceSink | None = None,
) -> LawReport:
    """Check ``law`` over every (exhaustive) or seeded random (sampled) instance.

    Pinned fixtures on a base of ``base_size`` are checked first. The first
    failing instance is reported; with ``workers > 1`` the instance space is
    split across processes and the lowest failing index wins, so the report
    does not depend on the worker count. Tracing forces a serial scan.
    """
    entry = get_law(law)
    if entry.unit_search is not None:
        return _unit_existence(entry, base_size)

    if mode == EXHAUSTIVE:
        limit = config.EXHAUSTIVE_LIMITS[entry.arity]
        if base_size > limit:
            raise UniverseTooLarge(
                f"{entry.law.value} quantifies over {entry.arity} multirelations; exhaustive "
                f"sweeps are limited to base size {limit}, got {base_size}"
            )
        samples = None
        seed = None
    elif mode == SAMPLED:
        samples = config.DEFAULT_SAMPLES if samples is None else samples
        seed = config.DEFAULT_SEED if seed is None else seed
        if base_size > config.POWERSET_CAP:
            raise UniverseTooLarge(
                f"base size {base_size} exceeds the powerset cap {config.POWERSET_CAP}"
            )
    else:
        raise MultirelError(f"unknown sweep mode {mode!r}")

    carrier = universe_carrier(base_size)
    checked = 0

    def failed(instance: str, operands: tuple[Multirelation, ...]) -> LawReport:
        witness = {"instance": instance, **_render_operands(entry, operands)}
        logger.info("%s fails on base %d at instance %s", entry.law.value, base_size, instance)
        return LawReport(entry.law, base_size, mode, "fails", witness, checked, samples, seed)

    for name, operands in pinned_instances(entry.law, base_size):
        if not _passes_filters(entry, operands):
            continue
        checked += 1
        holds = entry.predicate(*operands)
        if trace is not None:
            trace({"law": entry.law.value, "index": name, "holds": holds,
                   "operands": _render_operands(entry, operands)})
        if not holds:
            return failed(name, operands)

    universe = _Universe(entry, carrier, mode, seed or 0, samples or 0)
    logger.debug("%s: %d %s instances on base %d",
                 entry.law.value, universe.size, mode, base_size)
    if workers > 1 and trace is None:
        failure = _scan_parallel(universe, base_size, samples or 0, workers)
    else:
        failure = _scan(universe, 0, universe.size, trace)

    if failure is not None:
        index, operands = failure
        checked += index + 1
        return failed(str(index), operands)
    checked += universe.size
    logger.info("%s holds on base %d after %d instances", entry.law.value, base_size, checked)
    return LawReport(entry.law, base_size, mode, "holds", None, checked, samples, seed)
