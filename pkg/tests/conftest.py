"""
Global test configuration and fixtures for pytest.
"""
from pathlib import Path

import pytest
from hypothesis import strategies as st

from ptvalidity.rules import Base, clear_caches, parse_rule
from ptvalidity.syntax import BOT, And, Formula, Imp, Or, var
from ptvalidity.systems import ExplicitSystem, GeneratorSpec, GeneratedSystem, curated_system

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = Path(__file__).parent / "golden"

HARROP_UNIVERSE = ("p", "q", "r", "(p => q)", "(p => r)", "(q => r)", "((p => q) => r)")

# arguments exercised by the normalization and validity checks
EXAMPLE1 = "(impE q (assume h1 p -> q) (assume h2 p))"
DETOUR = '(impE q (impI p -> q [h] (atomic "(p => q)" q (assume h p))) (atomic "p" p))'
INTERCHANGE_A = '(impI p -> q [h] (atomic "(p => q)" @k q (assume h p)))'
INTERCHANGE_B = '(atomic "((p => q) => r)" r [hp] (impE q (assume f p -> q) (assume hp p)))'
TWO_STEP_IMP = (
    "(impE p & r (impE r -> p & r (impI p -> r -> p & r [a] (impI r -> p & r [b]"
    " (andI p & r (assume a p) (assume b r)))) (assume c p)) (assume d r))"
)
SIDE_BY_SIDE = (
    "(impE q (andE1 p -> q (andI (p -> q) & p (assume f p -> q) (assume a p)))"
    " (andE2 p (andI (p -> q) & p (assume f p -> q) (assume a p))))"
)
CAPTURE = (
    "(impE p -> p & r (impI r -> p -> p & r [h] (impI p -> p & r [k]"
    " (andI p & r (assume k p) (assume h r)))) (assume k r))"
)

ARGUMENT_CORPUS = [
    EXAMPLE1,
    DETOUR,
    INTERCHANGE_A,
    INTERCHANGE_B,
    "(impI p -> p [h] (assume h p))",
    "(andE1 p (andI p & q (assume a p) (assume b q)))",
    "(andE2 q (andI p & q (assume a p) (assume b q)))",
    "(orE r [x y] (orI1 p | q (assume a p)) (impE r (assume f p -> r) (assume x p))"
    " (impE r (assume g q -> r) (assume y q)))",
    "(orE r [x y] (orI2 p | q (assume b q)) (impE r (assume f p -> r) (assume x p))"
    " (impE r (assume g q -> r) (assume y q)))",
    TWO_STEP_IMP,
    "(andI p & q (assume a p) (assume b q))",
    "(impI p & q -> q & p [h] (andI q & p (andE2 q (assume h p & q)) (andE1 p (assume h p & q))))",
    "(impI (p -> q) -> (q -> r) -> p -> r [f] (impI (q -> r) -> p -> r [g] (impI p -> r [x]"
    " (impE r (assume g q -> r) (impE q (assume f p -> q) (assume x p))))))",
    "(botE p (impE bot (assume n ~q) (assume m q)))",
    "(orE q | p [a b] (assume d p | q) (orI2 q | p (assume a p)) (orI1 q | p (assume b q)))",
    "(impE p & p (impI p -> p & p [h] (andI p & p (assume h p) (assume h p))) (assume c p))",
    "(impE q -> q (impI (q -> q) -> q -> q [h] (assume h q -> q)) (impI q -> q [h2] (assume h2 q)))",
    CAPTURE,
    "(andE1 p (assume h p & q))",
    "(impI p -> q -> p & q [a] (impI q -> p & q [b] (andI p & q (assume a p) (assume b q))))",
    '(atomic "(p => q)" q (atomic "p" p))',
    "(impI p -> p | q [h] (orE p | q [x y] (orI1 p | q (assume h p)) (orI1 p | q (assume x p))"
    " (orI2 p | q (assume y q))))",
    SIDE_BY_SIDE,
    '(atomic "(((p => q) => r) => s)" s [k] (atomic "(q => r)" r'
    ' (atomic "(p => q)" @k q (assume a p))))',
    "(impI ~~p -> ~~p [h] (assume h ~~p))",
]


def base(*rules: str) -> Base:
    """Base from rule texts."""
    return Base(frozenset(parse_rule(r) for r in rules))


def formulas(names=("p", "q", "r"), max_leaves: int = 8):
    """Strategy for formulas over the atoms ``names`` and bot."""
    leaves = st.one_of(st.sampled_from([var(n) for n in names]), st.just(BOT))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(And, sub, sub), st.builds(Or, sub, sub), st.builds(Imp, sub, sub)
        ),
        max_leaves=max_leaves,
    )


def formulas_to_depth(names=("p", "q"), max_depth: int = 3):
    """Strategy for formulas over ``names`` and bot no deeper than ``max_depth``."""
    leaves = st.one_of(st.sampled_from([var(n) for n in names]), st.just(BOT))
    level = leaves
    for _ in range(max_depth):
        level = st.one_of(
            leaves,
            st.builds(And, level, level),
            st.builds(Or, level, level),
            st.builds(Imp, level, level),
        )
    return level


def mirror(f: Formula) -> Formula:
    """Swap the operands of every conjunction and disjunction."""
    if isinstance(f, (And, Or)):
        return type(f)(mirror(f.right), mirror(f.left))
    if isinstance(f, Imp):
        return Imp(mirror(f.left), mirror(f.right))
    return f


@pytest.fixture(autouse=True)
def fresh_derivers():
    """Derivability memos are process-wide; start every test clean."""
    clear_caches()
    yield


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def toy1() -> ExplicitSystem:
    """Bases: {}, {p, (p => q)}, {p, (p => r)}."""
    return ExplicitSystem(
        [base(), base("p", "(p => q)"), base("p", "(p => r)")], name="toy1"
    )


@pytest.fixture
def toy2() -> ExplicitSystem:
    """toy1 plus the base {p}."""
    return ExplicitSystem(
        [base(), base("p", "(p => q)"), base("p", "(p => r)"), base("p")], name="toy2"
    )


@pytest.fixture
def harrop_system() -> GeneratedSystem:
    """Powerset of the seven-rule universe used for the Harrop instance (128 bases)."""
    return curated_system(HARROP_UNIVERSE, name="harrop")


@pytest.fixture
def level1_p() -> GeneratedSystem:
    return GeneratedSystem(
        GeneratorSpec(atoms=("p",), max_level=1, max_premises=2), name="level1(p)"
    )


@pytest.fixture
def level1_pq() -> GeneratedSystem:
    """Universe {p, q, (p => q), (q => p)}: 16 bases."""
    return GeneratedSystem(
        GeneratorSpec(atoms=("p", "q"), max_level=1, max_premises=2), name="level1(p q)"
    )
