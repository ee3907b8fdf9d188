"""
Tests for the superintuitionistic search, the named checks and reports.
"""
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from conftest import DATA_DIR
from ptvalidity.data.system_repo import load_system
from ptvalidity.errors import TranslationError
from ptvalidity.explorer import (
    FindingRecord,
    Findings,
    SearchCaps,
    anticorrelation_table,
    check_harrop_family,
    check_revised_conjecture,
    enumerate_formulas,
    find_superintuitionistic,
    harrop_antecedents,
    harrop_instance,
    known_schemata,
    report,
)
from ptvalidity.ipc import ipc_provable
from ptvalidity.rules import BotPolicy, clear_caches
from ptvalidity.semantics import ptv_valid
from ptvalidity.syntax import Atom, depth, parse_formula

F = parse_formula
P, Q, R = Atom("p"), Atom("q"), Atom("r")
HARROP = harrop_instance(F("p"), F("q"), F("r"))

RECORD = FindingRecord(
    formula="p -> q | r", system="toy1", ptv=True, ipc=False, policy="explosion", universe_size=3
)


class TestFormulaSources:
    def test_enumeration_counts(self):
        formulas = list(enumerate_formulas([P], max_depth=1))
        assert len(formulas) == 12
        assert len(set(formulas)) == 12
        assert formulas[:2] == [F("p"), F("bot")]

    def test_enumeration_is_shallowest_first(self):
        depths = [depth(f) for f in enumerate_formulas([P, Q], max_depth=2)]
        assert depths == sorted(depths)
        assert len(depths) == 1179

    def test_enumeration_without_bot(self):
        assert F("bot") not in list(enumerate_formulas([P], 1, include_bot=False))

    def test_harrop_instance(self):
        assert HARROP == F("(p -> q | r) -> (p -> q) | (p -> r)")

    def test_harrop_antecedents(self):
        assert harrop_antecedents([Q, P]) == [F(t) for t in ("p", "q", "p -> q", "q -> p", "p & q", "~p", "~q")]
        assert len(harrop_antecedents([P, Q], include_negations=False)) == 5

    def test_known_schemata_are_not_theorems(self):
        for f in known_schemata([P, Q, R]):
            assert not ipc_provable(f)


class TestSearch:
    def test_toy1_finds_the_one_step_inference(self, toy1):
        found = find_superintuitionistic(toy1, SearchCaps(max_depth=2, max_formulas=200, findings_cap=5))
        assert found[0].formula == F("p -> q | r")
        assert found.examined <= 200
        for finding in found:
            assert finding.ptv and not finding.ipc
            assert not ipc_provable(finding.formula)
            assert ptv_valid(toy1, finding.formula).valid

    def test_harrop_system_finds_the_harrop_instance(self, harrop_system):
        found = find_superintuitionistic(harrop_system, SearchCaps(max_depth=3, max_formulas=2))
        assert [f.formula for f in found] == [HARROP]
        assert found.examined == 2
        assert not found.truncated

    def test_double_negation_depends_on_policy(self, level1_p):
        caps = SearchCaps(max_depth=3, max_formulas=3)
        explosion = [f.formula for f in find_superintuitionistic(level1_p, caps)]
        atom = [f.formula for f in find_superintuitionistic(level1_p, caps, BotPolicy.ATOM)]
        assert F("~~p -> p") in explosion
        assert F("p | ~p") in explosion
        assert atom == [F("~p | ~~p")]

    def test_optimized_search_agrees(self, level1_pq):
        caps = SearchCaps(max_depth=2, max_formulas=150)
        plain = [f.formula for f in find_superintuitionistic(level1_pq, caps)]
        fast = [f.formula for f in find_superintuitionistic(level1_pq, caps, optimized=True)]
        assert plain == fast

    def test_findings_cap_truncates(self, toy1):
        found = find_superintuitionistic(toy1, SearchCaps(max_depth=2, findings_cap=1))
        assert len(found) == 1
        assert found.truncated
        assert report(found).endswith("# truncated after 1 findings\n")

    def test_record(self, toy1):
        found = find_superintuitionistic(toy1, SearchCaps(max_depth=2, max_formulas=1))
        assert found[0].to_record() == RECORD


class TestNamedChecks:
    def test_harrop_family(self, harrop_system):
        rows = check_harrop_family(harrop_system, [F("p")])
        assert [(r.translation, r.valid) for r in rows] == [("{p}", True)]

    def test_negated_antecedents(self, harrop_system):
        with pytest.raises(TranslationError):
            check_harrop_family(harrop_system, [F("~p")])
        rows = check_harrop_family(harrop_system, [F("~p")], strict=False)
        assert rows[0].translation == "-"

    def test_anticorrelation(self, toy1, harrop_system):
        rows = anticorrelation_table([toy1, harrop_system], F("p"))
        assert [(r.system, r.inference_valid, r.harrop_valid) for r in rows] == [
            ("toy1", True, False),
            ("harrop", False, True),
        ]

    def test_revised_conjecture(self, toy1, toy2):
        rows = check_revised_conjecture([toy1, toy2], [F("p -> p"), F("p -> q | r")])
        assert [(r.ipc, r.gptv, r.flag) for r in rows] == [(True, True, ""), (False, False, "")]
        rows = check_revised_conjecture([toy1], [F("p -> q | r")])
        assert rows[0].flag == "unrefuted"


class TestReport:
    def test_csv(self):
        assert report([RECORD], "csv") == (
            "formula,system,ptv,ipc,policy,universe-size\n"
            "p -> q | r,toy1,true,false,explosion,3\n"
        )

    def test_text(self):
        assert report([RECORD]).splitlines() == [
            "formula     system  ptv   ipc    policy     universe-size",
            "p -> q | r  toy1    true  false  explosion  3",
        ]

    def test_truncation_notice(self):
        assert report(Findings([], truncated=True)).splitlines()[-1] == "# truncated after 0 findings"
        assert "truncated" not in report([RECORD])

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            report([RECORD], "xml")


@seed(20240611)
@settings(max_examples=15, deadline=None)
@given(
    st.sampled_from(["toy1.sys", "toy2.sys", "level1_pq.sys"]),
    st.integers(min_value=1, max_value=2),
    st.integers(min_value=1, max_value=80),
    st.sampled_from(list(BotPolicy)),
)
def test_search_and_report_are_deterministic(name, max_depth, max_formulas, policy):
    caps = SearchCaps(max_depth=max_depth, max_formulas=max_formulas, findings_cap=5)
    runs = []
    for _ in range(2):
        clear_caches()
        found = find_superintuitionistic(load_system(DATA_DIR / name), caps, policy)
        runs.append((report(found), report(found, "csv")))
    assert runs[0] == runs[1]
