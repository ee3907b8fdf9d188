"""
Tests for formula parsing, printing and structural queries.
"""
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from ptvalidity.errors import FormulaSyntaxError
from ptvalidity.syntax import (
    BOT,
    And,
    Atom,
    Imp,
    Or,
    atoms_of,
    depth,
    is_disjunction_free,
    neg,
    parse_formula,
    print_formula,
    rename_atoms,
    size,
    var,
)

p, q, r = var("p"), var("q"), var("r")

ATOMS = st.sampled_from([p, q, r])
FORMULAS = st.recursive(
    st.one_of(ATOMS, st.just(BOT)),
    lambda sub: st.one_of(
        st.builds(And, sub, sub), st.builds(Or, sub, sub), st.builds(Imp, sub, sub)
    ),
    max_leaves=12,
)


def test_precedence_and_associativity():
    assert parse_formula("p -> q -> r") == Imp(p, Imp(q, r))
    assert parse_formula("p & q | r") == Or(And(p, q), r)
    assert parse_formula("p | q & r") == Or(p, And(q, r))
    assert parse_formula("p & q & r") == And(And(p, q), r)
    assert parse_formula("~p & q") == And(neg(p), q)
    assert parse_formula("p -> q | r") == Imp(p, Or(q, r))


def test_bot_spellings():
    assert parse_formula("bot") == BOT
    assert parse_formula("_|_") == BOT
    assert parse_formula("~p") == Imp(p, BOT)


def test_printer_uses_minimal_parentheses():
    assert print_formula(Imp(Imp(p, q), r)) == "(p -> q) -> r"
    assert print_formula(Imp(p, Imp(q, r))) == "p -> q -> r"
    assert print_formula(And(p, And(q, r))) == "p & (q & r)"
    assert print_formula(neg(neg(p))) == "~~p"
    assert print_formula(neg(And(p, q))) == "~(p & q)"
    assert print_formula(Imp(neg(neg(p)), p)) == "~~p -> p"


@pytest.mark.parametrize("text", ["", "   ", "p ->", "(p", "p q", "p & & q", "P", "p $ q"])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text)


def test_empty_input_reports_position_zero():
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_formula("")
    assert exc.value.position == 0


def test_error_position_points_at_offending_token():
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_formula("p & )")
    assert exc.value.position == 4
    assert exc.value.column == 5


def test_bot_is_not_an_atom_name():
    with pytest.raises(ValueError):
        Atom("bot")


def test_structural_queries():
    f = parse_formula("(p -> q) & ~r")
    assert atoms_of(f) == {Atom("p"), Atom("q"), Atom("r")}
    assert depth(p) == 0
    assert depth(f) == 2
    assert size(f) == 7
    assert not is_disjunction_free(f)
    assert is_disjunction_free(parse_formula("p & q -> r"))
    assert not is_disjunction_free(parse_formula("p | q"))


def test_rename_atoms():
    f = parse_formula("p -> q")
    assert rename_atoms(f, {Atom("p"): Atom("r")}) == parse_formula("r -> q")


@seed(20240611)
@settings(max_examples=200)
@given(FORMULAS)
def test_print_then_parse_is_identity(f):
    assert parse_formula(print_formula(f)) == f
