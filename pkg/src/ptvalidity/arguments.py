"""
Natural-deduction arguments: representation, well-formedness, detour
reduction, normalization and validity relative to a base.

Argument text is an S-expression::

    (assume h p -> q)
    (impE q (assume h1 p -> q) (assume h2 p))
    (impI p -> p [h] (assume h p))
    (atomic "(p, (q => s) => s)" s [hq] (assume hp p) (impE s (assume f q -> s) (assume hq q)))
    (atomic "(q => s)" @k s (assume hq q))

An ``atomic`` node applies a rule to one child per premise (in any order).
Its discharge list binds assumptions made available by compound premises:
an atom ``p`` when the premise discharges ``p``, or an assumed-rule
application marked ``@label``. An ``@label`` application left unbound is an
open assumption of the rule's formula.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, replace
from enum import Enum
from itertools import permutations
from typing import Dict, FrozenSet, Iterator, List, Literal, Optional, Sequence, Set, Tuple, Union

from .bridge import rule_to_formula
from .errors import (
    ArgumentSyntaxError,
    BaseNotInSystem,
    FormulaSyntaxError,
    IllFormed,
    NotADetour,
    RuleSyntaxError,
)
from .rules import AxiomR, Base, BotPolicy, Rule, deriver_for, parse_rule
from .semantics import Certificate, PolicyLike, Verdict, consequence, require_atoms, valid
from .syntax import BOT, FALSUM, And, Atom, AtomF, Bot, Formula, Imp, Or, parse_formula, print_formula
from .systems import System

logger = logging.getLogger(__name__)

LABEL_PATTERN = r"[A-Za-z_][A-Za-z0-9_']*"
_LABEL_RE = re.compile(LABEL_PATTERN)


class Kind(str, Enum):
    AND_I = "andI"
    AND_E1 = "andE1"
    AND_E2 = "andE2"
    OR_I1 = "orI1"
    OR_I2 = "orI2"
    OR_E = "orE"
    IMP_I = "impI"
    IMP_E = "impE"
    BOT_E = "botE"
    ATOMIC = "atomic"


INTRO_KINDS = frozenset({Kind.AND_I, Kind.OR_I1, Kind.OR_I2, Kind.IMP_I})
BINDING_KINDS = frozenset({Kind.IMP_I, Kind.OR_E, Kind.ATOMIC})
_ARITY = {
    Kind.AND_I: 2,
    Kind.AND_E1: 1,
    Kind.AND_E2: 1,
    Kind.OR_I1: 1,
    Kind.OR_I2: 1,
    Kind.OR_E: 3,
    Kind.IMP_I: 1,
    Kind.IMP_E: 2,
    Kind.BOT_E: 1,
}


@dataclass(frozen=True)
class Assume:
    label: str
    formula: Formula

    @property
    def conclusion(self) -> Formula:
        return self.formula

    @property
    def children(self) -> Tuple["Argument", ...]:
        return ()


@dataclass(frozen=True)
class Infer:
    """
    An inference step. ``rule`` is set for atomic steps; ``assumed`` names
    the binder of an assumed rule being applied instead of a base rule.
    """

    kind: Kind
    conclusion: Formula
    children: Tuple["Argument", ...] = ()
    discharge: Tuple[str, ...] = ()
    rule: Optional[Rule] = None
    assumed: Optional[str] = None


Argument = Union[Assume, Infer]
Path = Tuple[int, ...]
Connective = Literal["and", "or", "imp"]
Strategy = Literal["leftmost-outermost", "rightmost-innermost"]


@dataclass(frozen=True)
class ReductionStep:
    position: Path
    connective: Connective


@dataclass(frozen=True)
class Violation:
    path: Path
    reason: str

    def __str__(self) -> str:
        return f"at {list(self.path)}: {self.reason}"


@dataclass(frozen=True)
class NormalizationResult:
    argument: Argument
    steps: int
    exhausted: bool = False


def _atom_formula(a: Atom) -> Formula:
    return BOT if a == FALSUM else AtomF(a)


# --- Tree access ---


def subtree(a: Argument, path: Sequence[int]) -> Argument:
    """Node at ``path``; raises IndexError when the path leaves the tree."""
    for i in path:
        a = a.children[i]
    return a


def replace_at(a: Argument, path: Sequence[int], new: Argument) -> Argument:
    if not path:
        return new
    assert isinstance(a, Infer)
    i, rest = path[0], path[1:]
    children = list(a.children)
    children[i] = replace_at(children[i], rest, new)
    return replace(a, children=tuple(children))


def nodes(a: Argument, path: Path = ()) -> Iterator[Tuple[Path, Argument]]:
    """Pre-order walk yielding (path, node)."""
    yield path, a
    for i, c in enumerate(a.children):
        yield from nodes(c, path + (i,))


def all_labels(a: Argument) -> Set[str]:
    out: Set[str] = set()
    for _, n in nodes(a):
        if isinstance(n, Assume):
            out.add(n.label)
        else:
            out.update(n.discharge)
            if n.assumed is not None:
                out.add(n.assumed)
    return out


def _uses(a: Argument, label: str, path: Path = ()) -> List[Tuple[Path, Argument]]:
    """Free uses of ``label``: assumptions and assumed-rule applications."""
    if isinstance(a, Assume):
        return [(path, a)] if a.label == label else []
    out: List[Tuple[Path, Argument]] = []
    if a.assumed == label:
        out.append((path, a))
    if label in a.discharge:
        return out
    for i, c in enumerate(a.children):
        out.extend(_uses(c, label, path + (i,)))
    return out


def open_assumptions(a: Argument) -> List[Tuple[str, Formula]]:
    """
    Undischarged assumptions as (label, formula), in order of first use.
    An unbound assumed-rule application contributes the rule's formula.
    """
    seen: Dict[Tuple[str, Formula], None] = {}

    def visit(n: Argument, bound: FrozenSet[str]) -> None:
        if isinstance(n, Assume):
            if n.label not in bound:
                seen.setdefault((n.label, n.formula), None)
            return
        if n.assumed is not None and n.assumed not in bound and n.rule is not None:
            seen.setdefault((n.assumed, rule_to_formula(n.rule)), None)
        inner = bound | frozenset(n.discharge)
        for c in n.children:
            visit(c, inner)

    visit(a, frozenset())
    return list(seen)


def is_closed(a: Argument) -> bool:
    return not open_assumptions(a)


# --- Well-formedness ---


def _shape(n: Infer) -> Optional[str]:
    """Local shape violation of ``n``, or None."""
    k, c, ch = n.kind, n.conclusion, n.children
    if k is Kind.ATOMIC:
        if n.rule is None:
            return "atomic step without a rule"
        if c != _atom_formula(n.rule.conclusion):
            return f"atomic step concludes {print_formula(c)}, rule concludes {n.rule.conclusion}"
        if len(ch) != len(n.rule.premises):
            return f"rule {n.rule} has {len(n.rule.premises)} premise(s), got {len(ch)}"
        return None
    if n.rule is not None or n.assumed is not None:
        return f"{k.value} step cannot carry a rule"
    if len(ch) != _ARITY[k]:
        return f"{k.value} needs {_ARITY[k]} premise(s), got {len(ch)}"
    cs = [x.conclusion for x in ch]
    if k is Kind.AND_I:
        ok = c == And(cs[0], cs[1])
    elif k is Kind.AND_E1:
        ok = isinstance(cs[0], And) and cs[0].left == c
    elif k is Kind.AND_E2:
        ok = isinstance(cs[0], And) and cs[0].right == c
    elif k is Kind.OR_I1:
        ok = isinstance(c, Or) and c.left == cs[0]
    elif k is Kind.OR_I2:
        ok = isinstance(c, Or) and c.right == cs[0]
    elif k is Kind.OR_E:
        ok = isinstance(cs[0], Or) and cs[1] == c and cs[2] == c
    elif k is Kind.IMP_I:
        ok = isinstance(c, Imp) and c.right == cs[0]
    elif k is Kind.IMP_E:
        ok = isinstance(cs[0], Imp) and cs[0].left == cs[1] and cs[0].right == c
    else:
        ok = isinstance(cs[0], Bot) and isinstance(c, AtomF)
    if not ok:
        shown = ", ".join(print_formula(x) for x in cs)
        return f"{k.value} cannot conclude {print_formula(c)} from {shown}"
    return None


def _discharged_item(use: Argument) -> Optional[Rule]:
    """The rule a bound use stands for inside an atomic step."""
    if isinstance(use, Assume):
        return AxiomR(use.formula.atom) if isinstance(use.formula, AtomF) else None
    return use.rule


def match_premises(n: Infer) -> Optional[Tuple[Rule, ...]]:
    """
    Assign a premise of ``n.rule`` to each child so that conclusions agree and
    every bound use in a child is discharged by its premise.
    """
    assert n.rule is not None
    items: List[Set[Optional[Rule]]] = [set() for _ in n.children]
    for label in n.discharge:
        for i, c in enumerate(n.children):
            items[i].update(_discharged_item(u) for _, u in _uses(c, label))
    for perm in permutations(n.rule.sorted_premises()):
        if all(
            c.conclusion == _atom_formula(p.conclusion) and items[i] <= set(p.premises)
            for i, (c, p) in enumerate(zip(n.children, perm))
        ):
            return perm
    return None


def check_wellformed(a: Argument) -> List[Violation]:
    """
    Every violated invariant, each with the path of the offending node.

    An empty list means the argument is well formed.
    """
    out: List[Violation] = []

    def visit(n: Argument, path: Path, bound: FrozenSet[str]) -> None:
        if isinstance(n, Assume):
            return
        reason = _shape(n)
        if reason:
            out.append(Violation(path, reason))
        if n.discharge and n.kind not in BINDING_KINDS:
            out.append(Violation(path, f"{n.kind.value} discharges nothing"))
        if len(set(n.discharge)) != len(n.discharge):
            out.append(Violation(path, "duplicate label in discharge list"))
        for label in n.discharge:
            if label in bound:
                out.append(Violation(path, f"label {label} rebound"))
        if reason is None:
            out.extend(_binding_violations(n, path))
        inner = bound | frozenset(n.discharge)
        for i, c in enumerate(n.children):
            visit(c, path + (i,), inner)

    visit(a, (), frozenset())

    formulas: Dict[str, Formula] = {}
    for label, f in open_assumptions(a):
        if formulas.setdefault(label, f) != f:
            out.append(Violation((), f"label {label} assumes different formulas"))
    return out


def _binding_violations(n: Infer, path: Path) -> List[Violation]:
    out: List[Violation] = []

    def expect(label: str, uses: List[Tuple[Path, Argument]], f: Formula, at: int) -> None:
        for p, u in uses:
            if not isinstance(u, Assume) or u.formula != f:
                out.append(
                    Violation(path + (at,) + p, f"label {label} must assume {print_formula(f)}")
                )

    if n.kind is Kind.IMP_I:
        assert isinstance(n.conclusion, Imp)
        for label in n.discharge:
            uses = _uses(n.children[0], label)
            if not uses:
                out.append(Violation(path, f"unbound label {label}"))
            expect(label, uses, n.conclusion.left, 0)
    elif n.kind is Kind.OR_E:
        major = n.children[0].conclusion
        assert isinstance(major, Or)
        for label in n.discharge:
            if _uses(n.children[0], label):
                out.append(Violation(path, f"label {label} used in the major premise"))
            left, right = _uses(n.children[1], label), _uses(n.children[2], label)
            if not left and not right:
                out.append(Violation(path, f"unbound label {label}"))
            expect(label, left, major.left, 1)
            expect(label, right, major.right, 2)
    elif n.kind is Kind.ATOMIC:
        for label in n.discharge:
            if not any(_uses(c, label) for c in n.children):
                out.append(Violation(path, f"unbound label {label}"))
        if match_premises(n) is None:
            out.append(Violation(path, f"premises do not match rule {n.rule}"))
    return out


def require_wellformed(a: Argument) -> None:
    violations = check_wellformed(a)
    if violations:
        raise IllFormed(violations)


# --- Detours and reduction ---


def detour_at(n: Argument) -> Optional[Connective]:
    """Connective of the detour rooted at ``n``, if ``n`` eliminates a matching introduction."""
    if not isinstance(n, Infer) or not n.children:
        return None
    major = n.children[0]
    if not isinstance(major, Infer):
        return None
    if n.kind is Kind.IMP_E and major.kind is Kind.IMP_I:
        return "imp"
    if n.kind in (Kind.AND_E1, Kind.AND_E2) and major.kind is Kind.AND_I:
        return "and"
    if n.kind is Kind.OR_E and major.kind in (Kind.OR_I1, Kind.OR_I2):
        return "or"
    return None


def find_detours(a: Argument, strategy: Strategy = "leftmost-outermost") -> List[ReductionStep]:
    """All detours, in the order ``strategy`` would reduce them."""
    found: List[ReductionStep] = []

    def outer(n: Argument, path: Path) -> None:
        conn = detour_at(n)
        if conn:
            found.append(ReductionStep(path, conn))
        for i, c in enumerate(n.children):
            outer(c, path + (i,))

    def inner(n: Argument, path: Path) -> None:
        for i in reversed(range(len(n.children))):
            inner(n.children[i], path + (i,))
        conn = detour_at(n)
        if conn:
            found.append(ReductionStep(path, conn))

    if strategy == "leftmost-outermost":
        outer(a, ())
    elif strategy == "rightmost-innermost":
        inner(a, ())
    else:
        raise ValueError(f"unknown strategy: {strategy}")
    return found


def _fresh(used: Set[str]) -> str:
    i = 1
    while f"h{i}" in used:
        i += 1
    used.add(f"h{i}")
    return f"h{i}"


def _rename_free(n: Argument, old: str, new: str) -> Argument:
    if isinstance(n, Assume):
        return replace(n, label=new) if n.label == old else n
    assumed = new if n.assumed == old else n.assumed
    if old in n.discharge:
        return replace(n, assumed=assumed)
    children = tuple(_rename_free(c, old, new) for c in n.children)
    return replace(n, children=children, assumed=assumed)


def _freshen_binders(n: Argument, clash: Set[str], used: Set[str]) -> Argument:
    """Rename every binder in ``n`` whose label is in ``clash``."""
    if isinstance(n, Assume):
        return n
    discharge = list(n.discharge)
    children = list(n.children)
    for j, label in enumerate(discharge):
        if label in clash:
            new = _fresh(used)
            discharge[j] = new
            children = [_rename_free(c, label, new) for c in children]
    children = [_freshen_binders(c, clash, used) for c in children]
    return replace(n, discharge=tuple(discharge), children=tuple(children))


def _substitute(n: Argument, labels: FrozenSet[str], replacement: Argument) -> Argument:
    if isinstance(n, Assume):
        return replacement if n.label in labels else n
    children = tuple(_substitute(c, labels, replacement) for c in n.children)
    return replace(n, children=children)


def _graft(
    target: Argument, labels: Sequence[str], replacement: Argument, used: Set[str]
) -> Argument:
    clash = all_labels(replacement)
    used |= clash | all_labels(target)
    target = _freshen_binders(target, clash, used)
    return _substitute(target, frozenset(labels), replacement)


def reduce_once(a: Argument, at: ReductionStep) -> Argument:
    """
    Contract the detour at ``at.position``.

    Raises:
        NotADetour: If the position is missing, is not a detour, or is a
            detour of another connective
    """
    try:
        node = subtree(a, at.position)
    except IndexError:
        raise NotADetour(at.position, "no such node") from None
    conn = detour_at(node)
    if conn is None:
        raise NotADetour(at.position, "not an elimination of a matching introduction")
    if conn != at.connective:
        raise NotADetour(at.position, f"detour is on {conn}, not {at.connective}")
    assert isinstance(node, Infer)

    intro = node.children[0]
    assert isinstance(intro, Infer)
    used = all_labels(a)
    if conn == "and":
        new = intro.children[0 if node.kind is Kind.AND_E1 else 1]
    elif conn == "imp":
        new = _graft(intro.children[0], intro.discharge, node.children[1], used)
    else:
        branch = node.children[1 if intro.kind is Kind.OR_I1 else 2]
        new = _graft(branch, node.discharge, intro.children[0], used)
    logger.debug(f"Reduced {conn} detour at {list(at.position)}")
    return replace_at(a, at.position, new)


def normalize(
    a: Argument, fuel: int = 10_000, strategy: Strategy = "leftmost-outermost"
) -> NormalizationResult:
    """
    Reduce detours until none remain or ``fuel`` steps have been taken.

    Args:
        a: A well-formed argument
        fuel: Largest number of reduction steps
        strategy: Which detour to contract first

    Returns:
        The reduced argument, the number of steps and whether fuel ran out
    """
    steps = 0
    current = a
    while True:
        detours = find_detours(current, strategy)
        if not detours:
            return NormalizationResult(current, steps)
        if steps >= fuel:
            logger.warning(f"Normalization stopped after {steps} steps")
            return NormalizationResult(current, steps, exhausted=True)
        current = reduce_once(current, detours[0])
        steps += 1


def canonical_labels(a: Argument) -> Argument:
    """
    Alpha-normal copy: binders become h1, h2, ... in pre-order and open
    labels become o1, o2, ... in order of first use.
    """
    counter = [0]
    free: Dict[str, str] = {}

    def lookup(label: str, env: Dict[str, str]) -> str:
        if label in env:
            return env[label]
        if label not in free:
            free[label] = f"o{len(free) + 1}"
        return free[label]

    def first_use(n: Infer, label: str) -> Tuple[int, ...]:
        order = [p for p, _ in _walk_uses(n, label)]
        return order[0] if order else (1 << 30,)

    def visit(n: Argument, env: Dict[str, str]) -> Argument:
        if isinstance(n, Assume):
            return replace(n, label=lookup(n.label, env))
        assumed = lookup(n.assumed, env) if n.assumed is not None else None
        inner = dict(env)
        ordered = sorted(n.discharge, key=lambda lab: first_use(n, lab))
        discharge = []
        for label in ordered:
            counter[0] += 1
            inner[label] = f"h{counter[0]}"
            discharge.append(inner[label])
        children = tuple(visit(c, inner) for c in n.children)
        return replace(n, discharge=tuple(discharge), children=children, assumed=assumed)

    return visit(a, {})


def _walk_uses(n: Infer, label: str) -> List[Tuple[Path, Argument]]:
    out: List[Tuple[Path, Argument]] = []
    for i, c in enumerate(n.children):
        out.extend(_uses(c, label, (i,)))
    return out


# --- Text ---

_KEYWORDS = ("assume",) + tuple(k.value for k in Kind)
_ARG_START_RE = re.compile(r"\(\s*(?:" + "|".join(_KEYWORDS) + r")(?![A-Za-z0-9_'])")
_COMMENT_RE = re.compile(r"#[^\n]*")


class _ArgParser:
    def __init__(self, text: str):
        self.source = text
        # blank comments, keeping positions
        self.text = _COMMENT_RE.sub(lambda m: " " * len(m.group()), text)
        self.pos = 0

    def error(self, message: str, pos: Optional[int] = None) -> ArgumentSyntaxError:
        return ArgumentSyntaxError(message, self.source, self.pos if pos is None else pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def word(self, what: str) -> str:
        self.skip()
        m = _LABEL_RE.match(self.text, self.pos)
        if m is None:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def formula(self) -> Formula:
        self.skip()
        start = self.pos
        depth = 0
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated argument")
            ch = self.text[self.pos]
            if depth == 0 and (ch in "[)" or (ch == "(" and _ARG_START_RE.match(self.text, self.pos))):
                break
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            self.pos += 1
        raw = self.text[start:self.pos]
        if not raw.strip():
            raise self.error("missing formula", start)
        try:
            return parse_formula(raw)
        except FormulaSyntaxError as e:
            raise self.error(f"bad formula: {e}", start + e.position) from e

    def labels(self) -> Tuple[str, ...]:
        self.expect("[")
        out: List[str] = []
        while self.peek() != "]":
            if not self.peek():
                raise self.error("unterminated discharge list")
            out.append(self.word("label"))
        self.pos += 1
        return tuple(out)

    def rule(self) -> Rule:
        self.expect('"')
        end = self.text.find('"', self.pos)
        if end < 0:
            raise self.error("unterminated rule text")
        start, self.pos = self.pos, end + 1
        try:
            return parse_rule(self.text[start:end], allow_bot=True)
        except RuleSyntaxError as e:
            raise self.error(f"bad rule: {e}", start + e.position) from e

    def argument(self) -> Argument:
        self.expect("(")
        start = self.pos
        head = self.word("argument kind")
        if head == "assume":
            label = self.word("label")
            f = self.formula()
            self.expect(")")
            return Assume(label, f)
        try:
            kind = Kind(head)
        except ValueError:
            raise self.error(f"unknown argument kind {head!r}", start) from None

        rule = self.rule() if kind is Kind.ATOMIC else None
        assumed = None
        if kind is Kind.ATOMIC and self.peek() == "@":
            self.pos += 1
            assumed = self.word("label")
        conclusion = self.formula()
        discharge = self.labels() if self.peek() == "[" else ()
        children: List[Argument] = []
        while self.peek() != ")":
            if self.peek() != "(":
                raise self.error("expected a sub-argument or ')'")
            children.append(self.argument())
        self.pos += 1
        return Infer(kind, conclusion, tuple(children), discharge, rule, assumed)


def parse_argument(text: str) -> Argument:
    """
    Parse one argument. Well-formedness is not checked.

    Raises:
        ArgumentSyntaxError: On malformed text, with the offending position
    """
    parser = _ArgParser(text)
    if parser.at_end():
        raise parser.error("empty argument")
    a = parser.argument()
    if not parser.at_end():
        raise parser.error("trailing text after argument")
    return a


def print_argument(a: Argument, indent: Optional[str] = None, _level: int = 0) -> str:
    """S-expression text; with ``indent`` each sub-argument starts a new line."""
    if isinstance(a, Assume):
        return f"(assume {a.label} {print_formula(a.formula)})"
    head = f"({a.kind.value}"
    if a.rule is not None:
        head += f' "{a.rule.key}"'
    if a.assumed is not None:
        head += f" @{a.assumed}"
    head += f" {print_formula(a.conclusion)}"
    if a.discharge:
        head += " [" + " ".join(a.discharge) + "]"
    if not a.children:
        return head + ")"
    if indent is None:
        return head + " " + " ".join(print_argument(c) for c in a.children) + ")"
    pad = indent * (_level + 1)
    body = "".join(f"\n{pad}{print_argument(c, indent, _level + 1)}" for c in a.children)
    return head + body + ")"


# --- Validity ---


@dataclass(frozen=True)
class _Premise:
    argument: Argument
    extra: Tuple[Formula, ...] = ()


def _premises(n: Infer) -> List[_Premise]:
    if n.kind is Kind.IMP_I:
        assert isinstance(n.conclusion, Imp)
        return [_Premise(n.children[0], (n.conclusion.left,))]
    return [_Premise(c) for c in n.children]


def s_valid_argument(
    system: System, base: Base, a: Argument, policy: PolicyLike = BotPolicy.EXPLOSION
) -> Verdict:
    """
    Validity of an argument at ``base``.

    Open arguments are valid when their conclusion is a consequence of their
    open assumptions. Closed arguments ending in an introduction are valid
    when their premises are; closed arguments ending in an atom when the base
    derives it; any other closed argument when its conclusion is valid.

    Raises:
        IllFormed: If ``a`` violates the well-formedness invariants
        BaseNotInSystem: If ``base`` is not a member
        AtomOutsideSystem: If a formula of ``a`` mentions an atom outside the system
    """
    require_wellformed(a)
    if not system.member(base):
        raise BaseNotInSystem(base)
    require_atoms(system, [n.conclusion for _, n in nodes(a)])
    pol = policy if isinstance(policy, BotPolicy) else BotPolicy(policy)
    cert = _certify_argument(system, base, a, (), pol)
    return Verdict(cert.valid, cert, pol)


def _certify_argument(
    system: System, base: Base, a: Argument, extra: Tuple[Formula, ...], policy: BotPolicy
) -> Certificate:
    assumptions = tuple(dict.fromkeys(extra + tuple(f for _, f in open_assumptions(a))))
    if assumptions:
        v = consequence(system, base, assumptions, a.conclusion, policy)
        return Certificate(
            "argument",
            base,
            v.valid,
            a.conclusion,
            assumptions,
            children=(v.certificate,),
            note="open; formula-level",
        )
    if isinstance(a, Infer) and a.kind in INTRO_KINDS:
        children = tuple(
            _certify_argument(system, base, p.argument, p.extra, policy) for p in _premises(a)
        )
        ok = all(c.valid for c in children)
        return Certificate(
            "argument", base, ok, a.conclusion, children=children, note=f"closed; {a.kind.value}"
        )
    if isinstance(a.conclusion, AtomF):
        d = deriver_for(policy).derivation(base, a.conclusion.atom)
        return Certificate("atom", base, d is not None, a.conclusion, witness=d)
    v = valid(system, base, a.conclusion, policy)
    return Certificate(
        "argument", base, v.valid, a.conclusion, children=(v.certificate,), note="closed; formula-level"
    )
