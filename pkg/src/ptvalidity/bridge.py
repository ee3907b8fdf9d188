"""
Translations between higher-level atomic rules and disjunction-free formulas.

A rule ``(R1, ..., Rn => q)`` corresponds to ``(f(R1) & ... & f(Rn)) -> q``;
conversely a disjunction-free formula splits into one rule per conjunct of
its consequent.
"""
from __future__ import annotations

import logging
from typing import FrozenSet

from .errors import BotPresent, DisjunctionPresent
from .rules import AxiomR, CompoundR, Rule
from .syntax import BOT, FALSUM, And, AtomF, Bot, Formula, Imp, Or, conj, subformulas

logger = logging.getLogger(__name__)


def rule_to_formula(r: Rule) -> Formula:
    """
    Translate a rule into its formula.

    Premises are conjoined left-nested in canonical order, so the output is
    deterministic.

    Args:
        r: Any rule

    Returns:
        A formula built from atoms, ``&`` and ``->``
    """
    head: Formula = BOT if r.conclusion == FALSUM else AtomF(r.conclusion)
    if not r.premises:
        return head
    return Imp(conj([rule_to_formula(p) for p in r.sorted_premises()]), head)


def formula_to_rules(f: Formula) -> FrozenSet[Rule]:
    """
    Translate a disjunction-free formula into the set of rules it stands for.

    Args:
        f: Formula built from atoms, ``&`` and ``->``

    Returns:
        One rule per conjunct of the (curried) consequent

    Raises:
        DisjunctionPresent: If ``f`` contains ``|``
        BotPresent: If ``f`` contains bot
    """
    for g in subformulas(f):
        if isinstance(g, Or):
            raise DisjunctionPresent(f)
        if isinstance(g, Bot):
            raise BotPresent(f)
    return _rules(f)


def _rules(f: Formula) -> FrozenSet[Rule]:
    if isinstance(f, AtomF):
        return frozenset({AxiomR(f.atom)})
    if isinstance(f, And):
        return _rules(f.left) | _rules(f.right)
    assert isinstance(f, Imp)
    antecedent = _rules(f.left)
    return frozenset(CompoundR(antecedent | r.premises, r.conclusion) for r in _rules(f.right))


def round_trip_check(r: Rule) -> bool:
    """True iff translating ``r`` to a formula and back yields exactly ``{r}``."""
    try:
        back = formula_to_rules(rule_to_formula(r))
    except (DisjunctionPresent, BotPresent):
        return False
    ok = back == frozenset({r})
    if not ok:
        logger.debug(f"Round trip failed for {r}: got {sorted(x.key for x in back)}")
    return ok


def implication_depth(f: Formula) -> int:
    """Largest number of ``->`` nodes on any branch of ``f``."""
    if isinstance(f, Imp):
        return 1 + max(implication_depth(f.left), implication_depth(f.right))
    if isinstance(f, (And, Or)):
        return max(implication_depth(f.left), implication_depth(f.right))
    return 0
