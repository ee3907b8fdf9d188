"""
Propositional formulas: representation, parsing, printing and structural queries.

Negation is surface syntax only: ``~A`` parses to ``Imp(A, BOT)`` and an
implication into bot prints back as ``~A``.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Callable, FrozenSet, Iterator, List, Mapping, Sequence, Tuple, Union

from .errors import FormulaSyntaxError

logger = logging.getLogger(__name__)

ATOM_PATTERN = r"[a-z][a-zA-Z0-9_]*"
_ATOM_RE = re.compile(ATOM_PATTERN)
RESERVED = frozenset({"bot"})


@dataclass(frozen=True, slots=True, order=True)
class Atom:
    """An atomic sentence, named by a lowercase identifier."""

    name: str

    def __post_init__(self) -> None:
        if not _ATOM_RE.fullmatch(self.name) or self.name in RESERVED:
            raise ValueError(f"invalid atom name: {self.name!r}")

    def __str__(self) -> str:
        return self.name


def _falsum_atom() -> Atom:
    # bot cannot be built through the validating constructor
    a = object.__new__(Atom)
    object.__setattr__(a, "name", "bot")
    return a


FALSUM = _falsum_atom()
"""The distinguished atom standing for bot inside atomic rules."""


@dataclass(frozen=True, slots=True)
class AtomF:
    atom: Atom
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("atom", self.atom)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Bot:
    def __hash__(self) -> int:
        return 0x0B07

    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("and", self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("or", self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Imp:
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("imp", self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return print_formula(self)


Formula = Union[AtomF, Bot, And, Or, Imp]
BOT = Bot()


# --- Constructors ---


def var(name: str) -> AtomF:
    """Shorthand for the formula consisting of atom ``name``."""
    return AtomF(Atom(name))


def neg(f: Formula) -> Imp:
    return Imp(f, BOT)


def conj(fs: Sequence[Formula]) -> Formula:
    """Left-nested conjunction of a non-empty sequence."""
    if not fs:
        raise ValueError("conj needs at least one formula")
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def is_negation(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Bot)


# --- Lexer ---

_TOKEN_RE = re.compile(
    r"(?P<skip>\s+|\#[^\n]*)"
    r"|(?P<imp>->)"
    r"|(?P<bot>_\|_)"
    r"|(?P<op>[|&~()])"
    rf"|(?P<name>{ATOM_PATTERN})"
)

Token = Tuple[str, str, int]  # kind, text, position


def _tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup or ""
        if kind != "skip":
            value = m.group()
            if kind == "name" and value == "bot":
                kind = "bot"
            elif kind == "op":
                kind = value
            tokens.append((kind, value, pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else "eof"

    def where(self) -> int:
        return self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)

    def expect(self, kind: str) -> Token:
        if self.peek() != kind:
            found = "end of input" if self.peek() == "eof" else repr(self.tokens[self.i][1])
            raise FormulaSyntaxError(f"expected {kind!r}, found {found}", self.text, self.where())
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def formula(self) -> Formula:
        return self.imp()

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "imp":
            self.i += 1
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        out = self.conj()
        while self.peek() == "|":
            self.i += 1
            out = Or(out, self.conj())
        return out

    def conj(self) -> Formula:
        out = self.neg()
        while self.peek() == "&":
            self.i += 1
            out = And(out, self.neg())
        return out

    def neg(self) -> Formula:
        kind = self.peek()
        if kind == "~":
            self.i += 1
            return Imp(self.neg(), BOT)
        if kind == "bot":
            self.i += 1
            return BOT
        if kind == "name":
            return AtomF(Atom(self.expect("name")[1]))
        if kind == "(":
            self.i += 1
            inner = self.formula()
            self.expect(")")
            return inner
        if kind == "eof":
            raise FormulaSyntaxError("unexpected end of input", self.text, self.where())
        raise FormulaSyntaxError(
            f"unexpected token {self.tokens[self.i][1]!r}", self.text, self.where()
        )


def parse_formula(text: str) -> Formula:
    """
    Parse formula text.

    Precedence is ``~`` > ``&`` > ``|`` > ``->``; ``->`` associates to the
    right, ``&`` and ``|`` to the left.

    Args:
        text: Formula text

    Returns:
        The formula tree

    Raises:
        FormulaSyntaxError: On empty input or any syntax error
    """
    parser = _Parser(text)
    if not parser.tokens:
        raise FormulaSyntaxError("empty formula", text, 0)
    f = parser.formula()
    if parser.peek() != "eof":
        raise FormulaSyntaxError(
            f"unexpected token {parser.tokens[parser.i][1]!r}", text, parser.where()
        )
    return f


# --- Printer ---

_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_ATOM = 1, 2, 3, 4


def _prec(f: Formula) -> int:
    if isinstance(f, (AtomF, Bot)) or is_negation(f):
        return _PREC_ATOM
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, Or):
        return _PREC_OR
    return _PREC_IMP


def _wrap(f: Formula, parens: bool) -> str:
    s = print_formula(f)
    return f"({s})" if parens else s


def print_formula(f: Formula) -> str:
    """Print with the minimal parentheses needed to re-parse to ``f``."""
    if isinstance(f, AtomF):
        return f.atom.name
    if isinstance(f, Bot):
        return "bot"
    if is_negation(f):
        assert isinstance(f, Imp)
        return "~" + _wrap(f.left, _prec(f.left) < _PREC_ATOM)
    if isinstance(f, And):
        return f"{_wrap(f.left, _prec(f.left) < _PREC_AND)} & {_wrap(f.right, _prec(f.right) <= _PREC_AND)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left, _prec(f.left) < _PREC_OR)} | {_wrap(f.right, _prec(f.right) <= _PREC_OR)}"
    return f"{_wrap(f.left, _prec(f.left) <= _PREC_IMP)} -> {print_formula(f.right)}"


# --- Structural queries ---


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over ``f`` and all its subformulas."""
    yield f
    if isinstance(f, (And, Or, Imp)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def atoms_of(f: Formula) -> FrozenSet[Atom]:
    return frozenset(g.atom for g in subformulas(f) if isinstance(g, AtomF))


def is_disjunction_free(f: Formula) -> bool:
    """True iff ``f`` contains neither a disjunction nor bot."""
    return not any(isinstance(g, (Or, Bot)) for g in subformulas(f))


def depth(f: Formula) -> int:
    """Height of the syntax tree; atoms and bot have depth 0."""
    if isinstance(f, (And, Or, Imp)):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def rename_atoms(f: Formula, mapping: Mapping[Atom, Atom]) -> Formula:
    if isinstance(f, AtomF):
        return AtomF(mapping.get(f.atom, f.atom))
    if isinstance(f, Bot):
        return f
    cls: Callable[[Formula, Formula], Formula] = type(f)  # type: ignore[assignment]
    return cls(rename_atoms(f.left, mapping), rename_atoms(f.right, mapping))
