"""Tests for the law engine: oracle, law statements, unit search and sweeps."""

from __future__ import annotations

from itertools import product

import pytest

from multirel.calculus.liftings import compose_mr
from multirel.calculus.powerset import pow_carrier, singleton_map
from multirel.calculus.relation import mk_carrier, mk_relation
from multirel.errors import EnumerationCapExceeded, MultirelError, UniverseTooLarge
from multirel.laws import fixtures
from multirel.laws.catalog import LAWS, get_law, parse_law_id
from multirel.laws.engine import (
    associativity_witness,
    check_associativity,
    check_extension,
    check_unit,
    check_weak_associativity,
    find_units,
    sweep,
)
from multirel.laws.fixtures import (
    furusawa_struth,
    get_fixture,
    pinned_candidates,
    pinned_instances,
    singleton,
    tsumagari,
)
from multirel.laws.oracle import oracle_compose
from multirel.laws.universe import (
    count,
    enumerate_all,
    instance_rng,
    relation_from_index,
    sample,
    universe_carrier,
)
from multirel.model.ir import EXHAUSTIVE, SAMPLED, LawId, LawReport, LiftKind, Multirelation, Side

X1 = singleton().carrier
X2 = mk_carrier("X", ["a", "b"])


# ─── Universe ───────────────────────────────────────────────────────────────

class TestUniverse:
    def test_carrier_labels(self):
        assert universe_carrier(3).elements == ("a", "b", "c")

    def test_carrier_bounds(self):
        with pytest.raises(UniverseTooLarge):
            universe_carrier(0)
        with pytest.raises(UniverseTooLarge):
            universe_carrier(7)

    def test_counts(self):
        assert count(X1, X1) == 4
        assert count(X2, X2) == 256
        assert len(list(enumerate_all(X1, X1))) == 4

    def test_index_is_row_major_bit_pattern(self):
        mr = relation_from_index(X2, X2, 0b0100_0011)
        assert mr.rows == (0b0011, 0b0100)

    def test_sampling_is_reproducible(self):
        first = [sample(instance_rng(7, k), X2, X2) for k in range(20)]
        second = [sample(instance_rng(7, k), X2, X2) for k in range(20)]
        assert first == second

    def test_sampling_respects_row_filter(self):
        law = get_law(LawId.PARIKH_ASSOC_UP_CLOSED)
        rng = instance_rng(0, 0)
        for _ in range(50):
            mr = sample(rng, X2, X2, law.row_filter(0))
            assert all(law.row_filter(0)(row, X2) for row in mr.rows)


# ─── Oracle ─────────────────────────────────────────────────────────────────

class TestOracle:
    @pytest.mark.parametrize("kind", list(LiftKind))
    def test_agrees_on_singleton_universe(self, kind):
        everything = list(enumerate_all(X1, X1))
        for alpha, beta in product(everything, repeat=2):
            assert oracle_compose(kind, alpha, beta) == compose_mr(kind, alpha, beta)

    @pytest.mark.parametrize("kind", list(LiftKind))
    def test_agrees_on_fixtures(self, kind):
        ts, fs = tsumagari(), furusawa_struth()
        for fixture in (ts, fs):
            for alpha, beta in product(fixture.relations.values(), repeat=2):
                assert oracle_compose(kind, alpha, beta) == compose_mr(kind, alpha, beta)

    def test_peleg_furusawa_struth(self):
        fs = furusawa_struth()
        inner = oracle_compose(LiftKind.PELEG, fs["alpha"], fs["beta"])
        result = oracle_compose(LiftKind.PELEG, fs["alpha"], inner)
        assert set(result.labelled_pairs()) == {
            ("a", "{a}"), ("a", "{b}"), ("a", "{a,b}"), ("b", "{a}"), ("b", "{b}"),
        }

    def test_peleg_cap(self):
        fs = furusawa_struth()
        with pytest.raises(EnumerationCapExceeded):
            oracle_compose(LiftKind.PELEG, fs["alpha"], fs["beta"], cap=1)

    def test_peleg_cap_counts_every_choice(self):
        x = universe_carrier(3)
        alpha = Multirelation.of(mk_relation(x, pow_carrier(x), [("a", "{a,b,c}")]))
        beta = Multirelation(x, pow_carrier(x), (0xFF, 0xFF, 0xFF))
        # 8 choices on each of three elements, though only 8 distinct unions
        with pytest.raises(EnumerationCapExceeded, match="512 choice functions"):
            oracle_compose(LiftKind.PELEG, alpha, beta, cap=100)
        assert oracle_compose(LiftKind.PELEG, alpha, beta, cap=512) == \
            compose_mr(LiftKind.PELEG, alpha, beta)


# ─── Law statements ─────────────────────────────────────────────────────────

class TestExtensionAndAssociativity:
    def test_parikh_extension_fails_on_tsumagari(self):
        ts = tsumagari()
        assert not check_extension(LiftKind.PARIKH, ts["beta"], ts["alpha"])

    def test_peleg_extension_fails_on_furusawa_struth(self):
        fs = furusawa_struth()
        assert not check_extension(LiftKind.PELEG, fs["alpha"], fs["beta"])

    def test_kleisli_extension_holds_on_fixtures(self):
        for fixture in (tsumagari(), furusawa_struth()):
            for beta, gamma in product(fixture.relations.values(), repeat=2):
                assert check_extension(LiftKind.KLEISLI, beta, gamma)

    def test_peleg_triple_is_not_associative(self):
        fs = furusawa_struth()
        assert not check_associativity(LiftKind.PELEG, fs["alpha"], fs["alpha"], fs["beta"])
        assert check_weak_associativity(fs["alpha"], fs["alpha"], fs["beta"])

    def test_parikh_triple_is_not_associative(self):
        ts = tsumagari()
        assert not check_associativity(
            LiftKind.PARIKH, ts["alpha_prime"], ts["beta"], ts["alpha"]
        )

    @pytest.mark.parametrize("kind", list(LiftKind))
    def test_extension_iff_associativity(self, kind):
        everything = list(enumerate_all(X1, X1))
        for beta, gamma in product(everything, repeat=2):
            triple = associativity_witness(kind, beta, gamma)
            if check_extension(kind, beta, gamma):
                assert triple is None
            else:
                assert not check_associativity(kind, *triple)

    def test_witness_from_tsumagari(self):
        ts = tsumagari()
        triple = associativity_witness(LiftKind.PARIKH, ts["beta"], ts["alpha"])
        assert triple is not None
        assert triple[0].src == pow_carrier(ts.carrier)
        assert not check_associativity(LiftKind.PARIKH, *triple)

    def test_no_witness_when_extension_holds(self):
        fs = furusawa_struth()
        assert associativity_witness(LiftKind.KLEISLI, fs["alpha"], fs["beta"]) is None


# ─── Units ──────────────────────────────────────────────────────────────────

class TestFindUnits:
    def test_parikh_left_unit_is_unique(self):
        assert find_units(LiftKind.PARIKH, Side.LEFT, X1) == [singleton()["beta"]]

    def test_no_parikh_right_unit(self):
        assert find_units(LiftKind.PARIKH, Side.RIGHT, X1) == []

    def test_no_kleisli_left_unit(self):
        assert find_units(LiftKind.KLEISLI, Side.LEFT, X1) == []

    def test_kleisli_right_units(self):
        # gamma lifts to the same map as beta, so both act as right units
        s = singleton()
        assert find_units(LiftKind.KLEISLI, Side.RIGHT, X1) == [s["beta"], s["gamma"]]

    def test_peleg_two_sided_unit(self):
        assert find_units(LiftKind.PELEG, Side.BOTH, X1) == [singleton()["beta"]]

    def test_search_limit(self):
        with pytest.raises(UniverseTooLarge, match="unit search"):
            find_units(LiftKind.PELEG, Side.LEFT, universe_carrier(3))


class TestCheckUnit:
    def test_peleg_singleton_map(self):
        report = check_unit(LiftKind.PELEG, Side.BOTH, singleton_map(X2))
        assert report.holds
        assert report.law == LawId.PELEG_UNIT
        assert report.checked == 256

    def test_kleisli_right_unit(self):
        report = check_unit(LiftKind.KLEISLI, Side.RIGHT, singleton_map(X2))
        assert report.holds
        assert report.checked == 1

    def test_kleisli_left_unit_fails(self):
        report = check_unit(LiftKind.KLEISLI, Side.LEFT, singleton_map(X1))
        assert not report.holds
        assert report.law == LawId.KLEISLI_LEFT_UNIT
        assert set(report.witness) == {"instance", "iota", "alpha"}

    def test_both_sides_report_right_failure_first(self):
        report = check_unit(LiftKind.PARIKH, Side.BOTH, singleton_map(X1))
        assert not report.holds
        assert report.law == LawId.PARIKH_RIGHT_UNIT
        assert report.witness["lift"] == "{({},{}),({},{a}),({a},{a})}"

    def test_sampled(self):
        report = check_unit(LiftKind.PELEG, Side.LEFT, singleton_map(X2),
                            mode=SAMPLED, samples=50, seed=3)
        assert report.holds
        assert report.checked == 50
        assert report.mode_label == "sampled(50,3)"

    def test_exhaustive_limit(self):
        with pytest.raises(UniverseTooLarge):
            check_unit(LiftKind.PELEG, Side.LEFT, singleton_map(universe_carrier(3)))


# ─── Catalog ────────────────────────────────────────────────────────────────

class TestCatalog:
    def test_every_law_is_catalogued(self):
        assert set(LAWS) == set(LawId)

    def test_parse_plain_and_parametrised(self):
        assert parse_law_id("kleisli-assoc") is LawId.KLEISLI_ASSOC
        assert parse_law_id("lift-extension(parikh)") is LawId.LIFT_EXTENSION_PARIKH
        assert parse_law_id(" oracle-equivalence(peleg) ") is LawId.ORACLE_EQUIVALENCE_PELEG

    def test_parse_unknown(self):
        with pytest.raises(MultirelError, match="unknown law 'nope'"):
            parse_law_id("nope")

    def test_unit_existence_laws_have_no_operands(self):
        for law_id in (LawId.KLEISLI_LEFT_UNIT, LawId.PARIKH_RIGHT_UNIT):
            entry = get_law(law_id)
            assert entry.arity == 0
            assert entry.predicate is None

    def test_unknown_fixture(self):
        with pytest.raises(MultirelError, match="unknown fixture"):
            get_fixture("nope")

    def test_pinned_instances_match_base(self):
        assert [name for name, _ in pinned_instances(LawId.PELEG_ASSOC, 2)] == ["furusawa-struth"]
        assert pinned_instances(LawId.PELEG_ASSOC, 1) == []
        assert [name for name, _ in pinned_instances(LawId.PARIKH_ASSOC, 3)] == ["tsumagari"]

    def test_unit_fixtures_are_whole_universes(self):
        for law_id, name in [
            (LawId.KLEISLI_LEFT_UNIT, "kleisli-no-left-unit"),
            (LawId.PARIKH_RIGHT_UNIT, "parikh-no-right-unit"),
        ]:
            (fixture,) = pinned_candidates(law_id, 1)
            assert fixture.name == name
            universe = set(enumerate_all(fixture.carrier, fixture.carrier))
            assert set(fixture.relations.values()) == universe
            assert pinned_instances(law_id, 1) == []
        assert pinned_candidates(LawId.KLEISLI_LEFT_UNIT, 2) == []


# ─── Reports ────────────────────────────────────────────────────────────────

class TestLawReport:
    def test_witness_required_on_failure(self):
        with pytest.raises(ValueError):
            LawReport(LawId.KLEISLI_ASSOC, 1, EXHAUSTIVE, "fails")

    def test_no_witness_on_success(self):
        with pytest.raises(ValueError):
            LawReport(LawId.KLEISLI_ASSOC, 1, EXHAUSTIVE, "holds", {"alpha": "{}"})

    def test_sampled_needs_seed(self):
        with pytest.raises(ValueError):
            LawReport(LawId.KLEISLI_ASSOC, 1, SAMPLED, "holds", samples=10)

    def test_sampled_label_echoes_default_seed(self):
        report = sweep(LawId.KLEISLI_ASSOC, 1, mode=SAMPLED, samples=5)
        assert report.seed == 0
        assert report.mode_label == "sampled(5,0)"

    def test_exhaustive_label_has_no_seed(self):
        report = sweep(LawId.KLEISLI_ASSOC, 1)
        assert report.seed is None
        assert report.mode_label == "exhaustive"


# ─── Sweeps ─────────────────────────────────────────────────────────────────

class TestSweep:
    def test_kleisli_assoc_on_singleton_universe(self):
        report = sweep(LawId.KLEISLI_ASSOC, 1)
        assert report.holds
        assert report.checked == 64
        assert report.mode == EXHAUSTIVE
        assert report.samples is None and report.seed is None

    def test_law_given_by_name(self):
        assert sweep("kleisli-right-unit", 2).checked == 256

    @pytest.mark.parametrize("law", [
        LawId.ORACLE_EQUIVALENCE_KLEISLI,
        LawId.ORACLE_EQUIVALENCE_PARIKH,
        LawId.ORACLE_EQUIVALENCE_PELEG,
    ])
    def test_oracle_equivalence_on_singleton_universe(self, law):
        assert sweep(law, 1).holds

    def test_peleg_union_closed_on_singleton_universe(self):
        report = sweep(LawId.PELEG_ASSOC_UNION_CLOSED, 1)
        assert report.holds
        assert report.checked == 64

    def test_pinned_failure_comes_first(self):
        report = sweep(LawId.PELEG_ASSOC, 2, mode=SAMPLED, samples=20, seed=0)
        assert not report.holds
        assert report.witness["instance"] == "furusawa-struth"
        assert report.checked == 1
        assert report.seed == 0

    def test_pinned_extension_failure(self):
        report = sweep(LawId.LIFT_EXTENSION_PELEG, 2)
        assert report.witness["instance"] == "furusawa-struth"
        assert report.witness["beta"] == furusawa_struth()["alpha"].to_text()

    def test_parikh_extension_fails_on_two_elements(self):
        report = sweep(LawId.LIFT_EXTENSION_PARIKH, 2)
        assert not report.holds
        assert report.checked == int(report.witness["instance"]) + 1
        assert set(report.witness) == {"instance", "beta", "gamma"}

    def test_unit_existence(self):
        report = sweep(LawId.PARIKH_RIGHT_UNIT, 1)
        assert not report.holds
        assert report.checked == 4
        assert report.witness == {
            "instance": "parikh-no-right-unit",
            "search": "no right unit among 4 candidates",
        }
        kleisli = sweep(LawId.KLEISLI_LEFT_UNIT, 1)
        assert kleisli.witness["instance"] == "kleisli-no-left-unit"

    def test_unit_existence_without_pinned_fixture(self, monkeypatch):
        monkeypatch.setattr(fixtures, "PINNED", ())
        report = sweep(LawId.PARIKH_RIGHT_UNIT, 1)
        assert report.witness == {"search": "no right unit among 4 candidates"}
        assert report.checked == 4

    def test_exhaustive_limits(self):
        with pytest.raises(UniverseTooLarge, match="exhaustive"):
            sweep(LawId.PELEG_ASSOC, 2)
        with pytest.raises(UniverseTooLarge):
            sweep(LawId.ORACLE_EQUIVALENCE_PELEG, 3)

    def test_unknown_mode(self):
        with pytest.raises(MultirelError, match="unknown sweep mode"):
            sweep(LawId.KLEISLI_ASSOC, 1, mode="fast")

    def test_sampled_is_reproducible(self):
        first = sweep(LawId.WEAK_PELEG_ASSOC, 2, mode=SAMPLED, samples=200, seed=11)
        second = sweep(LawId.WEAK_PELEG_ASSOC, 2, mode=SAMPLED, samples=200, seed=11)
        assert first == second
        assert first.holds
        assert first.checked == 201  # pinned triple plus samples

    def test_trace(self):
        records = []
        report = sweep(LawId.KLEISLI_RIGHT_UNIT, 1, trace=records.append)
        assert report.holds
        assert len(records) == 4
        assert [r["index"] for r in records] == list(range(4))
        assert all(r["holds"] and set(r["operands"]) == {"alpha"} for r in records)

    def test_workers_do_not_change_the_report(self):
        serial = sweep(LawId.LIFT_EXTENSION_PARIKH, 2)
        parallel = sweep(LawId.LIFT_EXTENSION_PARIKH, 2, workers=2)
        assert parallel == serial

    def test_workers_on_holding_law(self):
        assert sweep(LawId.KLEISLI_ASSOC, 1, workers=2) == sweep(LawId.KLEISLI_ASSOC, 1)
