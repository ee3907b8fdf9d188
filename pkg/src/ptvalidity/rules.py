"""
Higher-level atomic rules, bases and least-fixpoint derivability.

A rule concludes an atom from premises that are themselves rules. Applying a
rule whose premise is ``(D => q)`` requires a derivation of ``q`` in the base
extended by the discharged rules ``D``; an atomic premise ``p`` is the
special case with ``D`` empty.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from .errors import BotConclusionError, RuleSyntaxError
from .syntax import ATOM_PATTERN, FALSUM, Atom

logger = logging.getLogger(__name__)


class BotPolicy(str, Enum):
    """How bot is treated at the atomic level."""

    EXPLOSION = "explosion"  # no derivable bot; bot valid iff every universe atom is derivable
    ATOM = "atom"  # bot is an atom; once derived, every atom is derivable


@dataclass(frozen=True, slots=True, eq=False)
class Rule:
    """
    An atomic rule. Premise order is irrelevant: premises form a set, and a
    rule without premises is an axiom.
    """

    premises: FrozenSet["Rule"]
    conclusion: Atom
    key: str = field(init=False, repr=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.premises, frozenset):
            object.__setattr__(self, "premises", frozenset(self.premises))
        if self.premises:
            inner = ", ".join(sorted(p.key for p in self.premises))
            key = f"({inner} => {self.conclusion.name})"
        else:
            key = self.conclusion.name
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Rule):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Rule") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return self.key

    @property
    def is_axiom(self) -> bool:
        return not self.premises

    def sorted_premises(self) -> Tuple["Rule", ...]:
        return tuple(sorted(self.premises))


def AxiomR(conclusion: Atom) -> Rule:
    return Rule(frozenset(), conclusion)


def CompoundR(premises: Iterable[Rule], conclusion: Atom) -> Rule:
    """Build a rule; an empty premise collection yields the axiom."""
    return Rule(frozenset(premises), conclusion)


def level(r: Rule) -> int:
    """Axioms have level 0; otherwise one more than the deepest premise."""
    if not r.premises:
        return 0
    return 1 + max(level(p) for p in r.premises)


def rule_atoms(r: Rule) -> FrozenSet[Atom]:
    out = {r.conclusion}
    for p in r.premises:
        out |= rule_atoms(p)
    return frozenset(out)


def is_self_concluding(r: Rule) -> bool:
    """True when the conclusion is already one of the atomic premises (e.g. ``p => p``)."""
    return any(p.is_axiom and p.conclusion == r.conclusion for p in r.premises)


@dataclass(frozen=True, slots=True)
class Base:
    """A finite set of atomic rules."""

    rules: FrozenSet[Rule] = frozenset()

    @classmethod
    def of(cls, *rules: Rule) -> "Base":
        return cls(frozenset(rules))

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.sorted_rules())

    def __contains__(self, r: object) -> bool:
        return r in self.rules

    def sorted_rules(self) -> Tuple[Rule, ...]:
        return tuple(sorted(self.rules))

    def sort_key(self) -> Tuple[int, Tuple[str, ...]]:
        """Size first, then the sorted canonical rule texts."""
        return (len(self.rules), tuple(r.key for r in self.sorted_rules()))

    def union(self, rules: Iterable[Rule]) -> "Base":
        return Base(self.rules | frozenset(rules))

    def issubset(self, other: "Base") -> bool:
        return self.rules <= other.rules

    def atoms(self) -> FrozenSet[Atom]:
        out: set = set()
        for r in self.rules:
            out |= rule_atoms(r)
        return frozenset(out)

    def __str__(self) -> str:
        return "{" + ", ".join(r.key for r in self.sorted_rules()) + "}"


# --- Rule text ---

_RULE_TOKEN_RE = re.compile(
    r"(?P<skip>\s+)|(?P<arrow>=>)|(?P<bot>_\|_)|(?P<op>[(),])" rf"|(?P<name>{ATOM_PATTERN})"
)


def _tokenize_rule(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _RULE_TOKEN_RE.match(text, pos)
        if m is None:
            raise RuleSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup or ""
        if kind != "skip":
            value = m.group()
            if kind == "op":
                kind = value
            elif kind == "name" and value == "bot":
                kind = "bot"
            tokens.append((kind, value, pos))
        pos = m.end()
    return tokens


class _RuleParser:
    def __init__(self, text: str, allow_bot: bool):
        self.text = text
        self.allow_bot = allow_bot
        self.tokens = _tokenize_rule(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else "eof"

    def where(self) -> int:
        return self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)

    def expect(self, kind: str) -> Tuple[str, str, int]:
        if self.peek() != kind:
            found = "end of input" if self.peek() == "eof" else repr(self.tokens[self.i][1])
            raise RuleSyntaxError(f"expected {kind!r}, found {found}", self.text, self.where())
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def atom(self) -> Atom:
        if self.peek() == "bot":
            if not self.allow_bot:
                raise BotConclusionError(
                    "rules concluding bot need !allow-bot-conclusions", self.text, self.where()
                )
            self.i += 1
            return FALSUM
        return Atom(self.expect("name")[1])

    def rule(self) -> Rule:
        if self.peek() != "(":
            return AxiomR(self.atom())
        self.i += 1
        premises: List[Rule] = []
        if self.peek() != "arrow":
            premises.append(self.rule())
            while self.peek() == ",":
                self.i += 1
                premises.append(self.rule())
        self.expect("arrow")
        conclusion = self.atom()
        self.expect(")")
        return CompoundR(premises, conclusion)


def parse_rule(text: str, allow_bot: bool = False) -> Rule:
    """
    Parse rule text such as ``(p, (q => s) => r)``.

    Args:
        text: Rule text
        allow_bot: Accept bot (or ``_|_``) as a conclusion

    Returns:
        The canonical rule

    Raises:
        RuleSyntaxError: On malformed text
        BotConclusionError: If bot appears without ``allow_bot``
    """
    parser = _RuleParser(text, allow_bot)
    if not parser.tokens:
        raise RuleSyntaxError("empty rule", text, 0)
    r = parser.rule()
    if parser.peek() != "eof":
        raise RuleSyntaxError(
            f"unexpected token {parser.tokens[parser.i][1]!r}", text, parser.where()
        )
    return r


def print_rule(r: Rule) -> str:
    return r.key


# --- Derivability ---


@dataclass(frozen=True)
class Derivation:
    """
    A finite derivation of ``conclusion``. ``rule`` is None for a bot
    elimination step. ``assumed`` holds the rules discharged by the parent
    step and available throughout this subtree.
    """

    conclusion: Atom
    rule: Optional[Rule]
    premises: Tuple["Derivation", ...] = ()
    assumed: FrozenSet[Rule] = frozenset()

    def steps(self) -> List[str]:
        """Rule applications in the order they are performed."""
        out: List[str] = []
        if self.assumed:
            out.append("assume " + ", ".join(r.key for r in sorted(self.assumed)))
        for child in self.premises:
            out.extend(child.steps())
        by = self.rule.key if self.rule is not None else "bot-elim"
        out.append(f"{self.conclusion.name} by {by}")
        if self.assumed:
            out.append("discharge " + ", ".join(r.key for r in sorted(self.assumed)))
        return out

    def rules_cited(self) -> FrozenSet[Rule]:
        out = set() if self.rule is None else {self.rule}
        for child in self.premises:
            out |= child.rules_cited()
        return frozenset(out)


def rules_used(d: Derivation, base: Base) -> FrozenSet[Rule]:
    """The rules of ``base`` that derivation ``d`` applies."""
    return d.rules_cited() & base.rules


def check_derivation(d: Derivation, base: Base, policy: BotPolicy = BotPolicy.EXPLOSION) -> bool:
    """Independently verify that ``d`` is a derivation from ``base``."""
    return _check(d, base.rules | d.assumed, policy)


def _check(d: Derivation, available: FrozenSet[Rule], policy: BotPolicy) -> bool:
    if d.rule is None:
        return (
            policy is BotPolicy.ATOM
            and len(d.premises) == 1
            and d.premises[0].conclusion == FALSUM
            and not d.premises[0].assumed
            and _check(d.premises[0], available, policy)
        )
    if d.rule not in available or d.rule.conclusion != d.conclusion:
        return False
    if d.conclusion == FALSUM and policy is BotPolicy.EXPLOSION:
        return False
    premises = d.rule.sorted_premises()
    if len(premises) != len(d.premises):
        return False
    for p, child in zip(premises, d.premises):
        if child.conclusion != p.conclusion or child.assumed != p.premises:
            return False
        if not _check(child, available | p.premises, policy):
            return False
    return True


_UNBOUNDED = 1 << 62


class Deriver:
    """
    Computes the least set of atoms derivable from a set of rules.

    Results are memoized per rule set. The set for ``S`` depends only on
    itself and on strictly larger sets ``S | D`` (discharged premises), so
    the recursion is well founded.
    """

    def __init__(self, policy: BotPolicy = BotPolicy.EXPLOSION):
        self.policy = policy
        # rule set -> {atom: (firing index, rule)}
        self._memo: Dict[FrozenSet[Rule], Dict[Atom, Tuple[int, Rule]]] = {}

    def __len__(self) -> int:
        return len(self._memo)

    def _holds(self, atom: Atom, derived: Dict[Atom, Tuple[int, Rule]]) -> bool:
        if atom in derived:
            return True
        return self.policy is BotPolicy.ATOM and FALSUM in derived

    def _premise_holds(
        self, rules: FrozenSet[Rule], derived: Dict[Atom, Tuple[int, Rule]], premise: Rule
    ) -> bool:
        extended = rules | premise.premises
        if extended == rules:
            return self._holds(premise.conclusion, derived)
        return self._holds(premise.conclusion, self._closure(extended))

    def _closure(self, rules: FrozenSet[Rule]) -> Dict[Atom, Tuple[int, Rule]]:
        cached = self._memo.get(rules)
        if cached is not None:
            return cached

        ordered = sorted(rules)
        derived: Dict[Atom, Tuple[int, Rule]] = {}
        changed = True
        while changed:
            changed = False
            for r in ordered:
                c = r.conclusion
                if c in derived:
                    continue
                if c == FALSUM and self.policy is BotPolicy.EXPLOSION:
                    continue
                if all(self._premise_holds(rules, derived, p) for p in r.sorted_premises()):
                    derived[c] = (len(derived), r)
                    changed = True

        self._memo[rules] = derived
        return derived

    def derivable(self, base: Base) -> FrozenSet[Atom]:
        """Atoms with a derivation; under the atom policy FALSUM stands for 'everything'."""
        return frozenset(self._closure(base.rules))

    def derives(self, base: Base, goal: Atom) -> bool:
        derived = self._closure(base.rules)
        if goal == FALSUM:
            return self.policy is BotPolicy.ATOM and FALSUM in derived
        return self._holds(goal, derived)

    def derivation(self, base: Base, goal: Atom) -> Optional[Derivation]:
        """A witness derivation of ``goal`` from ``base``, or None."""
        if not self.derives(base, goal):
            return None
        return self._build(base.rules, goal, _UNBOUNDED, frozenset())

    def _build(
        self, rules: FrozenSet[Rule], atom: Atom, bound: int, assumed: FrozenSet[Rule]
    ) -> Derivation:
        derived = self._closure(rules)
        entry = derived.get(atom)
        if entry is not None and entry[0] < bound:
            index, rule = entry
            children = []
            for p in rule.sorted_premises():
                extended = rules | p.premises
                child_bound = index if extended == rules else _UNBOUNDED
                children.append(self._build(extended, p.conclusion, child_bound, p.premises))
            return Derivation(atom, rule, tuple(children), assumed)
        # only reachable through bot under the atom policy
        bot_index = derived[FALSUM][0]
        return Derivation(
            atom, None, (self._build(rules, FALSUM, bot_index + 1, frozenset()),), assumed
        )


_DERIVERS: Dict[BotPolicy, Deriver] = {}


def deriver_for(policy: BotPolicy) -> Deriver:
    """Shared memoizing deriver for ``policy``."""
    d = _DERIVERS.get(policy)
    if d is None:
        d = _DERIVERS[policy] = Deriver(policy)
    return d


def clear_caches() -> None:
    _DERIVERS.clear()


def derives(base: Base, goal: Atom, policy: BotPolicy = BotPolicy.EXPLOSION) -> bool:
    """
    Decide whether ``goal`` is derivable from ``base``.

    Args:
        base: The atomic base
        goal: An atom (FALSUM is only derivable under the atom policy)
        policy: Treatment of bot

    Returns:
        True iff goal is in the least set closed under the base's rules
    """
    return deriver_for(policy).derives(base, goal)


def derivable_atoms(
    base: Base, universe_atoms: Iterable[Atom], policy: BotPolicy = BotPolicy.EXPLOSION
) -> FrozenSet[Atom]:
    d = deriver_for(policy)
    return frozenset(a for a in universe_atoms if d.derives(base, a))


def derivation(
    base: Base, goal: Atom, policy: BotPolicy = BotPolicy.EXPLOSION
) -> Optional[Derivation]:
    return deriver_for(policy).derivation(base, goal)
