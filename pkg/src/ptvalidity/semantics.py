"""
Formula validity relative to a base within a system.

Clauses: an atom is valid at S when S derives it; a conjunction when both
conjuncts are; a disjunction when one disjunct is; an implication when every
extension of S in the system that validates the antecedent also validates the
consequent. Bot follows the configured BotPolicy.

Every public check returns a Verdict whose Certificate records the clauses
evaluated and can be replayed independently.
"""
from __future__ import annotations

import logging
import weakref
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import AtomOutsideSystem, BaseNotInSystem, EmptySystemList, SystemKindError
from .middleware.verdict_logger import verdict_logger
from .rules import Base, BotPolicy, Derivation, check_derivation, deriver_for
from .syntax import FALSUM, And, Atom, AtomF, Bot, Formula, Imp, Or, atoms_of, print_formula
from .systems import GeneratedSystem, System

logger = logging.getLogger(__name__)

PolicyLike = Union[BotPolicy, str]


@dataclass(frozen=True)
class Certificate:
    """
    One evaluated clause.

    ``clause`` is one of atom, bot, and, or, imp, consequence, ptv, gptv, argument.
    For imp and consequence, ``extensions`` lists the extensions checked when
    valid, or the single counterexample extension when invalid.
    """

    clause: str
    base: Base
    valid: bool
    formula: Optional[Formula] = None
    assumptions: Tuple[Formula, ...] = ()
    children: Tuple["Certificate", ...] = ()
    extensions: Tuple[Base, ...] = ()
    witness: Optional[Derivation] = None
    note: str = ""
    system: str = ""

    def walk(self) -> Iterable["Certificate"]:
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass(frozen=True)
class Verdict:
    valid: bool
    certificate: Certificate
    policy: BotPolicy = BotPolicy.EXPLOSION

    def __bool__(self) -> bool:
        return self.valid

    @property
    def counterexample(self) -> Optional[Base]:
        """The first counterexample extension cited, if the verdict is negative."""
        if self.valid:
            return None
        for c in self.certificate.walk():
            if c.clause in ("imp", "consequence") and not c.valid and c.extensions:
                return c.extensions[0]
        return None

    @property
    def failing_system(self) -> Optional[str]:
        if self.valid:
            return None
        for c in self.certificate.walk():
            if c.clause == "ptv" and not c.valid:
                return c.system
        return None


def _policy(policy: PolicyLike) -> BotPolicy:
    return policy if isinstance(policy, BotPolicy) else BotPolicy(policy)


class Evaluator:
    """
    Memoized evaluation of formulas over one system.

    Args:
        system: The system quantified over by implications
        policy: Treatment of bot
        optimized: Check implications only at minimal antecedent-validating
            extensions; requires a generated (powerset) system
    """

    def __init__(
        self,
        system: System,
        policy: PolicyLike = BotPolicy.EXPLOSION,
        optimized: bool = False,
    ):
        if optimized and not isinstance(system, GeneratedSystem):
            raise SystemKindError(f"optimized evaluation needs a generated system, got {system}")
        self.system = system
        self.policy = _policy(policy)
        # bot under explosion ranges over the system atoms, whatever the query
        self.universe: Tuple[Atom, ...] = tuple(sorted(system.atoms()))
        self.optimized = optimized
        self.deriver = deriver_for(self.policy)
        self._memo: Dict[Tuple[FrozenSet, Formula], bool] = {}

    def __len__(self) -> int:
        return len(self._memo)

    # --- Verdicts only ---

    def holds(self, base: Base, f: Formula) -> bool:
        key = (base.rules, f)
        cached = self._memo.get(key)
        if cached is None:
            cached = self._memo[key] = self._compute(base, f)
        return cached

    def _compute(self, base: Base, f: Formula) -> bool:
        if isinstance(f, AtomF):
            return self.deriver.derives(base, f.atom)
        if isinstance(f, Bot):
            return self._bot_holds(base)
        if isinstance(f, And):
            return self.holds(base, f.left) and self.holds(base, f.right)
        if isinstance(f, Or):
            return self.holds(base, f.left) or self.holds(base, f.right)
        assert isinstance(f, Imp)
        return self.first_failure(base, (f.left,), f.right) is None

    def _bot_holds(self, base: Base) -> bool:
        if self.policy is BotPolicy.ATOM:
            return self.deriver.derives(base, FALSUM)
        # an empty universe must not make bot trivially valid
        return bool(self.universe) and all(self.deriver.derives(base, a) for a in self.universe)

    def first_failure(
        self,
        base: Base,
        antecedents: Sequence[Formula],
        conclusion: Formula,
        checked: Optional[List[Base]] = None,
    ) -> Optional[Base]:
        """
        The first extension of ``base`` validating every antecedent but not
        the conclusion, in enumeration order; None if there is none.
        """
        if self.optimized:
            return self._first_failure_minimal(base, antecedents, conclusion, checked)
        for ext in self.system.extensions_of(base):
            if checked is not None:
                checked.append(ext)
            if all(self.holds(ext, a) for a in antecedents) and not self.holds(ext, conclusion):
                return ext
        return None

    def _first_failure_minimal(
        self,
        base: Base,
        antecedents: Sequence[Formula],
        conclusion: Formula,
        checked: Optional[List[Base]],
    ) -> Optional[Base]:
        # validity is monotone in a powerset system
        if self.holds(base, conclusion):
            return None
        minimal: List[Base] = []
        for ext in self.system.extensions_of(base):
            if any(m.rules <= ext.rules for m in minimal):
                continue
            if all(self.holds(ext, a) for a in antecedents):
                minimal.append(ext)
                if checked is not None:
                    checked.append(ext)
                if not self.holds(ext, conclusion):
                    return ext
        logger.debug(f"{len(minimal)} minimal extension(s) of {base} checked")
        return None

    # --- Certificates ---

    def certify(self, base: Base, f: Formula) -> Certificate:
        valid = self.holds(base, f)
        if isinstance(f, AtomF):
            witness = self.deriver.derivation(base, f.atom) if valid else None
            return Certificate("atom", base, valid, f, witness=witness)
        if isinstance(f, Bot):
            return self._certify_bot(base, valid)
        if isinstance(f, And):
            parts = [self.certify(base, f.left), self.certify(base, f.right)]
            if not valid:
                parts = [next(c for c in parts if not c.valid)]
            return Certificate("and", base, valid, f, children=tuple(parts))
        if isinstance(f, Or):
            parts = [self.certify(base, f.left), self.certify(base, f.right)]
            if valid:
                parts = [next(c for c in parts if c.valid)]
            return Certificate("or", base, valid, f, children=tuple(parts))
        assert isinstance(f, Imp)
        return self._certify_scan("imp", base, (f.left,), f.right, f)

    def certify_consequence(
        self, base: Base, assumptions: Sequence[Formula], conclusion: Formula
    ) -> Certificate:
        return self._certify_scan(
            "consequence", base, tuple(assumptions), conclusion, conclusion
        )

    def _certify_scan(
        self,
        clause: str,
        base: Base,
        antecedents: Tuple[Formula, ...],
        conclusion: Formula,
        formula: Formula,
    ) -> Certificate:
        checked: List[Base] = []
        failure = self.first_failure(base, antecedents, conclusion, checked)
        assumptions = antecedents if clause == "consequence" else ()
        if failure is None:
            note = ""
            if self.optimized:
                note = "minimal extensions" if checked else "consequent valid at base"
            return Certificate(
                clause, base, True, formula, assumptions, extensions=tuple(checked), note=note
            )
        children = tuple(self.certify(failure, a) for a in antecedents) + (
            self.certify(failure, conclusion),
        )
        return Certificate(
            clause, base, False, formula, assumptions, children=children, extensions=(failure,)
        )

    def _certify_bot(self, base: Base, valid: bool) -> Certificate:
        if self.policy is BotPolicy.ATOM:
            witness = self.deriver.derivation(base, FALSUM) if valid else None
            return Certificate("bot", base, valid, Bot(), witness=witness, note="atom policy")
        if not self.universe:
            return Certificate("bot", base, False, Bot(), note="empty atom universe")
        parts = [self.certify(base, AtomF(a)) for a in self.universe]
        if not valid:
            parts = [next(c for c in parts if not c.valid)]
        return Certificate("bot", base, valid, Bot(), children=tuple(parts))


# --- Evaluator sharing ---

_EVALUATORS: "weakref.WeakKeyDictionary[System, Dict[tuple, Evaluator]]" = (
    weakref.WeakKeyDictionary()
)


def evaluator_for(
    system: System,
    policy: PolicyLike = BotPolicy.EXPLOSION,
    optimized: bool = False,
) -> Evaluator:
    """Shared evaluator for ``system`` whose memo persists across calls."""
    pol = _policy(policy)
    per_system = _EVALUATORS.setdefault(system, {})
    key = (pol, optimized)
    ev = per_system.get(key)
    if ev is None:
        ev = per_system[key] = Evaluator(system, pol, optimized)
    return ev


def require_atoms(system: System, formulas: Iterable[Formula]) -> None:
    """
    Check that every atom of ``formulas`` is governed by ``system``.

    Raises:
        AtomOutsideSystem: If some formula mentions an atom the system does not govern
    """
    used: FrozenSet[Atom] = frozenset()
    for f in formulas:
        used |= atoms_of(f)
    stray = used - system.atoms()
    if stray:
        raise AtomOutsideSystem(sorted(stray), system)


def _require(system: System, base: Base) -> None:
    if not system.member(base):
        raise BaseNotInSystem(base)


# --- Public checks ---


@verdict_logger("valid")
def valid(
    system: System, base: Base, f: Formula, policy: PolicyLike = BotPolicy.EXPLOSION
) -> Verdict:
    """
    Decide whether ``f`` is valid at ``base`` in ``system``.

    Args:
        system: The system
        base: A member of the system
        f: The formula
        policy: Treatment of bot

    Returns:
        Verdict with certificate

    Raises:
        BaseNotInSystem: If ``base`` is not a member
        AtomOutsideSystem: If ``f`` mentions an atom outside the system
    """
    _require(system, base)
    require_atoms(system, [f])
    ev = evaluator_for(system, policy)
    return Verdict(ev.holds(base, f), ev.certify(base, f), ev.policy)


@verdict_logger("valid_optimized")
def valid_optimized(
    system: System, base: Base, f: Formula, policy: PolicyLike = BotPolicy.EXPLOSION
) -> Verdict:
    """
    Same verdict as ``valid`` for generated systems, checking implications
    only at minimal extensions that validate the antecedent.

    Raises:
        SystemKindError: If ``system`` is not generated
        BaseNotInSystem: If ``base`` is not a member
    """
    if not isinstance(system, GeneratedSystem):
        raise SystemKindError(f"optimized evaluation needs a generated system, got {system}")
    _require(system, base)
    require_atoms(system, [f])
    ev = evaluator_for(system, policy, optimized=True)
    return Verdict(ev.holds(base, f), ev.certify(base, f), ev.policy)


@verdict_logger("consequence")
def consequence(
    system: System,
    base: Base,
    assumptions: Sequence[Formula],
    conclusion: Formula,
    policy: PolicyLike = BotPolicy.EXPLOSION,
) -> Verdict:
    """True iff every extension of ``base`` validating all assumptions validates the conclusion."""
    _require(system, base)
    require_atoms(system, [*assumptions, conclusion])
    ev = evaluator_for(system, policy)
    cert = ev.certify_consequence(base, assumptions, conclusion)
    return Verdict(cert.valid, cert, ev.policy)


@verdict_logger("ptv_valid")
def ptv_valid(
    system: System,
    f: Formula,
    policy: PolicyLike = BotPolicy.EXPLOSION,
    optimized: bool = False,
) -> Verdict:
    """
    Validity at every base of the system.

    Args:
        system: The system
        f: The formula
        policy: Treatment of bot
        optimized: Use minimal-extension evaluation (generated systems only)

    Returns:
        Verdict; when invalid the certificate contains the first failing base
    """
    require_atoms(system, [f])
    ev = evaluator_for(system, policy, optimized)
    bases: List[Base] = []
    for b in system.enumerate_bases():
        if not ev.holds(b, f):
            child = ev.certify(b, f)
            cert = Certificate(
                "ptv", b, False, f, children=(child,), extensions=(b,), system=system.name
            )
            return Verdict(False, cert, ev.policy)
        bases.append(b)
    cert = Certificate("ptv", Base(), True, f, extensions=tuple(bases), system=system.name)
    return Verdict(True, cert, ev.policy)


@verdict_logger("gptv_valid")
def gptv_valid(
    systems: Sequence[System], f: Formula, policy: PolicyLike = BotPolicy.EXPLOSION
) -> Verdict:
    """
    Validity in every supplied system; the first failing system is cited.

    Raises:
        EmptySystemList: If ``systems`` is empty
    """
    if not systems:
        raise EmptySystemList()
    results = [ptv_valid(s, f, policy) for s in systems]
    ok = all(r.valid for r in results)
    failing = next((s.name for s, r in zip(systems, results) if not r.valid), "")
    cert = Certificate(
        "gptv",
        Base(),
        ok,
        f,
        children=tuple(r.certificate for r in results),
        system=failing,
    )
    return Verdict(ok, cert, _policy(policy))


# --- Replay and rendering ---


def replay(
    certificate: Certificate,
    systems: Union[System, Sequence[System]],
    policy: PolicyLike = BotPolicy.EXPLOSION,
) -> bool:
    """
    Re-evaluate every clause cited by ``certificate`` with a fresh evaluator.

    Returns:
        True iff every cited base is a member, every cited extension
        contains its parent base, every witness checks and every clause
        reproduces its recorded verdict
    """
    pol = _policy(policy)
    if isinstance(systems, System):
        systems = [systems]
    by_name = {s.name: s for s in systems}

    def check(cert: Certificate, system: System, ev: Evaluator) -> bool:
        if cert.clause == "gptv":
            return False
        if cert.clause == "ptv":
            return _replay_ptv(cert, system, ev, check)
        if not system.member(cert.base):
            logger.debug(f"Replay: {cert.base} is not in {system}")
            return False
        if any(not system.member(e) or not cert.base.issubset(e) for e in cert.extensions):
            logger.debug(f"Replay: bad extension cited under {cert.base}")
            return False
        if cert.witness is not None and not check_derivation(cert.witness, cert.base, pol):
            logger.debug(f"Replay: witness for {cert.formula} does not check")
            return False
        assert cert.formula is not None
        if cert.clause == "consequence" or (cert.clause == "argument" and cert.assumptions):
            recomputed = ev.first_failure(cert.base, cert.assumptions, cert.formula) is None
        elif cert.clause == "argument" and cert.note != "closed; formula-level":
            # a closed introduction stands or falls with its premises
            recomputed = bool(cert.children) and all(c.valid for c in cert.children)
        else:
            recomputed = ev.holds(cert.base, cert.formula)
        if recomputed != cert.valid:
            return False
        return all(check(c, system, ev) for c in cert.children)

    def fresh(system: System) -> Evaluator:
        return Evaluator(system, pol)

    if certificate.clause == "gptv":
        for child in certificate.children:
            system = by_name.get(child.system)
            if system is None or not check(child, system, fresh(system)):
                return False
        failing = next((c.system for c in certificate.children if not c.valid), "")
        return certificate.valid == all(c.valid for c in certificate.children) and (
            certificate.system == failing
        )

    system = by_name.get(certificate.system) if certificate.system else systems[0]
    if system is None:
        return False
    return check(certificate, system, fresh(system))


def _replay_ptv(cert: Certificate, system: System, ev: Evaluator, check) -> bool:
    assert cert.formula is not None
    if cert.valid:
        bases = list(system.enumerate_bases())
        return list(cert.extensions) == bases and all(ev.holds(b, cert.formula) for b in bases)
    if len(cert.children) != 1 or not system.member(cert.base):
        return False
    return not ev.holds(cert.base, cert.formula) and check(cert.children[0], system, ev)


def _subject(cert: Certificate) -> str:
    text = print_formula(cert.formula) if cert.formula is not None else ""
    if cert.clause == "consequence":
        return ", ".join(print_formula(a) for a in cert.assumptions) + " |- " + text
    return text


def render_certificate(certificate: Certificate, indent: str = "  ") -> str:
    """Indented text trace, one clause per line followed by its evidence."""
    lines: List[str] = []

    def emit(cert: Certificate, level: int) -> None:
        pad = indent * level
        verdict = "valid" if cert.valid else "invalid"
        where = f"[{cert.system}]" if cert.clause in ("ptv", "gptv") else str(cert.base)
        head = f"{pad}{cert.clause} {where} {_subject(cert)} : {verdict}"
        if cert.note:
            head += f" ({cert.note})"
        lines.append(head)
        inner = pad + indent
        if cert.witness is not None:
            lines.append(f"{inner}witness: " + "; ".join(cert.witness.steps()))
        elif cert.clause == "atom" and not cert.valid:
            lines.append(f"{inner}underivable: {_subject(cert)}")
        if cert.clause in ("imp", "consequence"):
            if cert.valid:
                shown = ", ".join(str(e) for e in cert.extensions) or "none"
                lines.append(f"{inner}checked: {shown}")
            else:
                lines.append(f"{inner}counterexample: {cert.extensions[0]}")
        elif cert.clause == "ptv":
            if cert.valid:
                lines.append(f"{inner}bases: {len(cert.extensions)}")
            else:
                lines.append(f"{inner}failing base: {cert.base}")
        for c in cert.children:
            emit(c, level + 1)

    emit(certificate, 0)
    return "\n".join(lines)

