"""
Tests for natural-deduction arguments: parsing, well-formedness, reduction,
normalization and validity.
"""
from dataclasses import replace

import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from conftest import (
    ARGUMENT_CORPUS as CORPUS,
    CAPTURE,
    DETOUR,
    EXAMPLE1,
    INTERCHANGE_A,
    INTERCHANGE_B,
    SIDE_BY_SIDE,
    TWO_STEP_IMP,
    base,
)
from ptvalidity.errors import (
    ArgumentSyntaxError,
    AtomOutsideSystem,
    BaseNotInSystem,
    IllFormed,
    NotADetour,
)
from ptvalidity.arguments import (
    INTRO_KINDS,
    Assume,
    Infer,
    Kind,
    ReductionStep,
    canonical_labels,
    check_wellformed,
    find_detours,
    is_closed,
    normalize,
    open_assumptions,
    parse_argument,
    print_argument,
    reduce_once,
    require_wellformed,
    s_valid_argument,
)
from ptvalidity.rules import Base, BotPolicy
from ptvalidity.semantics import replay
from ptvalidity.syntax import Imp, parse_formula
from ptvalidity.systems import curated_system

F = parse_formula


VALIDITY_SYSTEM_RULES = ["p", "q", "r", "(p => q)", "(p => r)", "((p => q) => r)"]


@pytest.fixture
def validity_system():
    """64 bases; s is governed but no rule mentions it."""
    return curated_system(VALIDITY_SYSTEM_RULES, atoms=["s"])


class TestParsing:
    def test_assume(self):
        assert parse_argument("(assume h p -> q)") == Assume("h", F("p -> q"))

    def test_inference(self):
        a = parse_argument(EXAMPLE1)
        assert isinstance(a, Infer)
        assert a.kind is Kind.IMP_E
        assert a.conclusion == F("q")
        assert [c.conclusion for c in a.children] == [F("p -> q"), F("p")]

    def test_atomic_with_assumed_rule(self):
        a = parse_argument(INTERCHANGE_A)
        inner = a.children[0]
        assert inner.rule.key == "(p => q)"
        assert inner.assumed == "k"

    def test_comments_are_ignored(self):
        a = parse_argument("# modus ponens\n(impE q (assume h1 p -> q) # major\n (assume h2 p))")
        assert a == parse_argument(EXAMPLE1)

    @pytest.mark.parametrize("text", CORPUS)
    def test_print_parses_back(self, text):
        a = parse_argument(text)
        assert parse_argument(print_argument(a)) == a
        assert parse_argument(print_argument(a, indent="  ")) == a

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "(foo p)",
            "(assume h p",
            "(impI p -> p [h] (assume h p)) extra",
            '(atomic "(p =>" p)',
            "(assume h p &)",
            "(impI [h] (assume h p))",
        ],
    )
    def test_syntax_errors(self, text):
        with pytest.raises(ArgumentSyntaxError):
            parse_argument(text)

    def test_error_points_at_unknown_kind(self):
        with pytest.raises(ArgumentSyntaxError) as exc:
            parse_argument("(andI p & q (assume a p) (frob p))")
        assert exc.value.position == 26


class TestWellFormedness:
    @pytest.mark.parametrize("text", CORPUS)
    def test_corpus_is_well_formed(self, text):
        assert check_wellformed(parse_argument(text)) == []

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("(andI p & q (assume a p))", "needs 2 premise(s)"),
            ("(impE r (assume f p -> q) (assume a p))", "impE cannot conclude r"),
            ("(impI p -> q [h] (assume h q))", "label h must assume p"),
            ("(andI p & q [h] (assume a p) (assume b q))", "andI discharges nothing"),
            ("(impI p -> p [h] (assume k p))", "unbound label h"),
            ("(impI p -> p -> p [h] (impI p -> p [h] (assume h p)))", "label h rebound"),
            ("(andI p & q (assume h p) (assume h q))", "label h assumes different formulas"),
            ('(atomic "(p => q)" q (assume a r))', "premises do not match"),
            ('(atomic "(p => q)" r (assume a p))', "rule concludes q"),
        ],
    )
    def test_violations(self, text, fragment):
        violations = check_wellformed(parse_argument(text))
        assert any(fragment in str(v) for v in violations), [str(v) for v in violations]

    def test_violation_paths(self):
        violations = check_wellformed(parse_argument("(andI p & q (assume a p) (andE1 q (assume b q)))"))
        assert [v.path for v in violations] == [(1,)]

    def test_require_wellformed(self):
        with pytest.raises(IllFormed) as exc:
            require_wellformed(parse_argument("(andI p & q (assume a p))"))
        assert len(exc.value.violations) == 1

    def test_open_assumptions(self):
        assert open_assumptions(parse_argument(EXAMPLE1)) == [("h1", F("p -> q")), ("h2", F("p"))]
        assert open_assumptions(parse_argument(INTERCHANGE_A)) == [("k", F("p -> q"))]
        assert open_assumptions(parse_argument(INTERCHANGE_B)) == [("f", F("p -> q"))]
        assert is_closed(parse_argument(DETOUR))


class TestReduction:
    def test_imp_detour_grafts_the_minor_premise(self):
        a = parse_argument(DETOUR)
        assert find_detours(a) == [ReductionStep((), "imp")]
        reduced = reduce_once(a, ReductionStep((), "imp"))
        assert reduced == parse_argument('(atomic "(p => q)" q (atomic "p" p))')

    def test_and_detour(self):
        a = parse_argument("(andE2 q (andI p & q (assume a p) (assume b q)))")
        assert reduce_once(a, ReductionStep((), "and")) == Assume("b", F("q"))

    def test_or_detour_substitutes_into_the_branch(self):
        a = parse_argument(CORPUS[8])
        reduced = reduce_once(a, ReductionStep((), "or"))
        assert reduced == parse_argument("(impE r (assume g q -> r) (assume b q))")

    def test_binders_are_renamed_to_avoid_capture(self):
        reduced = reduce_once(parse_argument(CAPTURE), ReductionStep((), "imp"))
        assert reduced == parse_argument(
            "(impI p -> p & r [h1] (andI p & r (assume h1 p) (assume k r)))"
        )
        assert open_assumptions(reduced) == [("k", F("r"))]

    @pytest.mark.parametrize(
        "text,step",
        [
            (EXAMPLE1, ReductionStep((), "imp")),
            (SIDE_BY_SIDE, ReductionStep((0,), "imp")),
            (SIDE_BY_SIDE, ReductionStep((5,), "and")),
            (DETOUR, ReductionStep((0, 0), "imp")),
        ],
    )
    def test_not_a_detour(self, text, step):
        with pytest.raises(NotADetour):
            reduce_once(parse_argument(text), step)

    def test_strategies_order_detours(self):
        a = parse_argument(SIDE_BY_SIDE)
        assert [d.position for d in find_detours(a)] == [(0,), (1,)]
        assert [d.position for d in find_detours(a, "rightmost-innermost")] == [(1,), (0,)]
        with pytest.raises(ValueError):
            find_detours(a, "random")


class TestNormalization:
    def test_detour_takes_one_step(self):
        res = normalize(parse_argument(DETOUR))
        assert res.steps == 1
        assert not res.exhausted

    def test_fuel(self):
        res = normalize(parse_argument(TWO_STEP_IMP), fuel=1)
        assert res.exhausted
        assert res.steps == 1
        assert normalize(parse_argument(TWO_STEP_IMP)).steps == 2

    def test_normal_arguments_are_untouched(self):
        a = parse_argument(EXAMPLE1)
        assert normalize(a) == normalize(a, fuel=1)
        assert normalize(a).argument is a

    @pytest.mark.parametrize("text", CORPUS)
    def test_corpus_properties(self, text):
        a = parse_argument(text)
        before = {label: f for label, f in open_assumptions(a)}
        res = normalize(a, fuel=100)
        assert not res.exhausted
        b = res.argument
        assert b.conclusion == a.conclusion
        assert find_detours(b) == []
        assert check_wellformed(b) == []
        after = {label: f for label, f in open_assumptions(b)}
        assert after.items() <= before.items()

    @pytest.mark.parametrize("text", CORPUS)
    def test_strategies_reach_the_same_normal_form(self, text):
        a = parse_argument(text)
        left = normalize(a).argument
        right = normalize(a, strategy="rightmost-innermost").argument
        assert canonical_labels(left) == canonical_labels(right)

    @pytest.mark.parametrize("text", CORPUS)
    def test_validity_survives_normalization(self, text, validity_system):
        sys = validity_system
        at = base("(p => q)", "((p => q) => r)")
        a = parse_argument(text)
        b = normalize(a).argument
        assert s_valid_argument(sys, at, a).valid == s_valid_argument(sys, at, b).valid


def test_canonical_labels():
    a = parse_argument("(impI p -> p [zz] (assume zz p))")
    b = parse_argument("(impI p -> p [h] (assume h p))")
    assert canonical_labels(a) == canonical_labels(b)
    assert canonical_labels(a) == parse_argument("(impI p -> p [h1] (assume h1 p))")
    assert canonical_labels(parse_argument(EXAMPLE1)) == parse_argument(
        "(impE q (assume o1 p -> q) (assume o2 p))"
    )


class TestValidity:
    def test_open_argument_uses_consequence(self, toy1):
        v = s_valid_argument(toy1, Base(), parse_argument(EXAMPLE1))
        assert v.valid
        assert v.certificate.note == "open; formula-level"

    def test_depends_on_the_system(self, toy1, toy2):
        a = parse_argument('(orI1 q | r (atomic "(p => q)" q (assume a p)))')
        assert s_valid_argument(toy1, Base(), a).valid
        assert not s_valid_argument(toy2, Base(), a).valid

    def test_closed_introduction(self, toy1):
        v = s_valid_argument(toy1, Base(), parse_argument(CORPUS[4]))
        assert v.valid
        assert v.certificate.note == "closed; impI"

    def test_closed_atomic_needs_the_base(self, level1_p):
        a = parse_argument('(atomic "p" p)')
        assert s_valid_argument(level1_p, base("p"), a).valid
        v = s_valid_argument(level1_p, Base(), a)
        assert not v.valid
        assert v.certificate.clause == "atom"

    def test_interchange_argument(self):
        sys = curated_system(["p", "((p => q) => r)"])
        assert s_valid_argument(sys, sys.base_at(1), parse_argument(INTERCHANGE_B)).valid

    def test_ill_formed_arguments_are_refused(self, toy1):
        with pytest.raises(IllFormed):
            s_valid_argument(toy1, Base(), parse_argument("(andI p & q (assume a p))"))

    def test_base_must_belong(self, toy1):
        with pytest.raises(BaseNotInSystem):
            s_valid_argument(toy1, base("q"), parse_argument(EXAMPLE1))

    def test_atoms_must_be_governed(self, toy1):
        with pytest.raises(AtomOutsideSystem):
            s_valid_argument(toy1, Base(), parse_argument(CORPUS[-2]))

    def test_open_and_closed_certificates_replay(self, toy1):
        for text in (EXAMPLE1, CORPUS[4]):
            v = s_valid_argument(toy1, Base(), parse_argument(text))
            assert v.valid
            assert replay(v.certificate, toy1)

    @pytest.mark.parametrize("policy", list(BotPolicy))
    @pytest.mark.parametrize("text", CORPUS)
    def test_certificates_replay(self, text, policy, validity_system):
        a = parse_argument(text)
        for at in (Base(), base("(p => q)", "((p => q) => r)"), base("p", "q")):
            v = s_valid_argument(validity_system, at, a, policy)
            assert replay(v.certificate, validity_system, policy)
            assert not replay(replace(v.certificate, valid=not v.valid), validity_system, policy)


# natural-deduction rules only; CAPTURE rebinds its open label inside
PURE = [t for t in CORPUS if '"' not in t and t != CAPTURE]


def close(a, reverse):
    """Discharge every open assumption with implication introductions."""
    pending = open_assumptions(a)
    if reverse:
        pending = pending[::-1]
    for label, f in pending:
        a = Infer(Kind.IMP_I, Imp(f, a.conclusion), (a,), discharge=(label,))
    return a


@seed(20240611)
@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PURE), st.booleans())
def test_closed_normal_arguments_end_in_an_introduction(text, reverse):
    a = close(parse_argument(text), reverse)
    assert is_closed(a)
    assert check_wellformed(a) == []
    b = normalize(a).argument
    assert is_closed(b)
    assert isinstance(b, Infer) and b.kind in INTRO_KINDS
