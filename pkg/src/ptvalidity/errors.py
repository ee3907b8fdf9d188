"""
Exception hierarchy for ptvalidity.

Library code raises these; only the command line front end turns them into
exit codes and diagnostics.
"""
from __future__ import annotations

from typing import Any, Optional, Sequence


class PTVError(Exception):
    """Root of every error raised by the package."""


# --- Input errors ---


class ParseError(PTVError):
    """Raised when text does not conform to one of the published grammars."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.message = message
        self.text = text
        self.position = position
        prefix = text[:position]
        self.line = prefix.count("\n") + 1
        self.column = position - (prefix.rfind("\n") + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.column})")


class FormulaSyntaxError(ParseError):
    """Malformed formula text."""


class RuleSyntaxError(ParseError):
    """Malformed rule text."""


class BotConclusionError(RuleSyntaxError):
    """A rule mentions bot although the base did not opt in."""


class ArgumentSyntaxError(ParseError):
    """Malformed argument S-expression."""


class SystemFileError(ParseError):
    """Malformed base or system file."""


# --- Translation errors ---


class TranslationError(PTVError):
    """A formula lies outside the rule translation domain."""

    def __init__(self, formula: Any):
        self.formula = formula
        super().__init__(f"cannot translate {formula} into rules")


class DisjunctionPresent(TranslationError):
    """The formula contains a disjunction."""


class BotPresent(TranslationError):
    """The formula contains bot."""


# --- System and evaluation errors ---


class UniverseTooLarge(PTVError):
    """A generated universe exceeds the configured cap."""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"universe has {size} rules, cap is {cap}")


class BaseNotInSystem(PTVError):
    """A base was queried that is not a member of the system."""

    def __init__(self, base: Any):
        self.base = base
        super().__init__(f"base {base} is not a member of the system")


class EmptySystemList(PTVError):
    """Generalised validity was asked over no systems at all."""

    def __init__(self) -> None:
        super().__init__("at least one system is required")


class SystemKindError(PTVError):
    """An operation was requested on a kind of system it does not support."""


class AtomOutsideSystem(PTVError):
    """A query mentions atoms the system does not govern."""

    def __init__(self, atoms: Sequence[Any], system: Any):
        self.atoms = tuple(atoms)
        self.system = system
        names = " ".join(str(a) for a in self.atoms)
        super().__init__(f"atoms {names} are not governed by system {system}")


# --- Argument errors ---


class NotADetour(PTVError):
    """A reduction step does not address a detour."""

    def __init__(self, path: Sequence[int], reason: str = ""):
        self.path = tuple(path)
        detail = f": {reason}" if reason else ""
        super().__init__(f"no detour at {list(self.path)}{detail}")


class IllFormed(PTVError):
    """An argument violates the well-formedness invariants."""

    def __init__(self, violations: Sequence[Any], message: Optional[str] = None):
        self.violations = list(violations)
        if message is None:
            first = self.violations[0] if self.violations else "unknown violation"
            message = f"{len(self.violations)} violation(s), first: {first}"
        super().__init__(message)
