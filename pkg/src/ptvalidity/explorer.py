"""
Search a system for superintuitionistic validities and run the named checks
(generalised Harrop family, anticorrelation, revised conjecture).
"""
from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from .bridge import formula_to_rules
from .config import DEFAULT_SETTINGS
from .errors import TranslationError
from .ipc import ipc_provable
from .rules import BotPolicy
from .semantics import Certificate, PolicyLike, gptv_valid, ptv_valid
from .syntax import BOT, And, Atom, AtomF, Formula, Imp, Or, depth, neg, print_formula
from .systems import GeneratedSystem, System

logger = logging.getLogger(__name__)

ReportFormat = Literal["text", "csv"]
CSV_COLUMNS = ("formula", "system", "ptv", "ipc", "policy", "universe-size")


class SearchCaps(BaseModel):
    """Bounds on the formula enumeration."""

    model_config = ConfigDict(frozen=True)

    max_atoms: int = Field(default=3, ge=1)
    max_depth: int = Field(default=3, ge=1)
    max_formulas: int = Field(default=100_000, ge=1)
    findings_cap: int = Field(default=DEFAULT_SETTINGS.findings_cap, ge=1)


@dataclass(frozen=True)
class Finding:
    formula: Formula
    system_name: str
    ptv: bool
    ipc: bool
    certificate: Certificate
    policy: BotPolicy = BotPolicy.EXPLOSION
    universe_size: int = 0

    def to_record(self) -> "FindingRecord":
        return FindingRecord(
            formula=print_formula(self.formula),
            system=self.system_name,
            ptv=self.ptv,
            ipc=self.ipc,
            policy=self.policy.value,
            universe_size=self.universe_size,
        )


class FindingRecord(BaseModel):
    """A finding as stored in findings files (no certificate)."""

    model_config = ConfigDict(frozen=True)

    formula: str
    system: str
    ptv: bool
    ipc: bool
    policy: Literal["explosion", "atom"] = "explosion"
    universe_size: int = Field(default=0, ge=0)


class Findings(List[Finding]):
    """Findings in search order; ``truncated`` is set when the cap was hit."""

    def __init__(self, items: Iterable[Finding] = (), truncated: bool = False, examined: int = 0):
        super().__init__(items)
        self.truncated = truncated
        self.examined = examined


# --- Formula sources ---


def enumerate_formulas(
    atoms: Sequence[Atom], max_depth: int, include_bot: bool = True
) -> Iterator[Formula]:
    """
    Every formula over ``atoms`` (and bot) up to ``max_depth``, shallowest
    first, in a fixed construction order. Conjunctions and disjunctions
    appear once per unordered pair.
    """
    leaves: List[Formula] = [AtomF(a) for a in sorted(atoms)]
    if include_bot:
        leaves.append(BOT)
    lower: List[Formula] = []
    layer = leaves
    for d in range(max_depth + 1):
        if d:
            # formulas of depth exactly d, streamed
            start_top = len(lower) - len(layer)
            layer = []
            for i, left in enumerate(lower):
                for j, right in enumerate(lower):
                    if i < start_top and j < start_top:
                        continue
                    for f in _combine(left, right, i <= j):
                        layer.append(f)
                        yield f
            logger.debug(f"Depth {d}: {len(layer)} formulas")
        else:
            yield from layer
        lower.extend(layer)


def _combine(left: Formula, right: Formula, ordered: bool) -> Iterator[Formula]:
    yield Imp(left, right)
    if ordered:
        yield And(left, right)
        yield Or(left, right)


def harrop_instance(antecedent: Formula, left: Formula, right: Formula) -> Formula:
    """``(A -> (B | C)) -> ((A -> B) | (A -> C))``."""
    return Imp(Imp(antecedent, Or(left, right)), Or(Imp(antecedent, left), Imp(antecedent, right)))


def harrop_antecedents(atoms: Sequence[Atom], include_negations: bool = True) -> List[Formula]:
    """Atoms, implications and conjunctions between distinct atoms, then negated atoms."""
    names = [AtomF(a) for a in sorted(atoms)]
    out: List[Formula] = list(names)
    out += [Imp(a, b) for a in names for b in names if a != b]
    out += [And(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    if include_negations:
        out += [neg(a) for a in names]
    return out


def known_schemata(atoms: Sequence[Atom]) -> List[Formula]:
    """Well-known superintuitionistic formulas instantiated over ``atoms``."""
    a = [AtomF(x) for x in sorted(atoms)]
    out: List[Formula] = []
    if len(a) >= 3:
        p, q, r = a[0], a[1], a[2]
        out.append(Imp(p, Or(q, r)))
        out.append(harrop_instance(p, q, r))
        out.append(harrop_instance(Imp(p, q), q, r))
        out.append(harrop_instance(neg(p), q, r))
    if a:
        p = a[0]
        out.append(Imp(neg(neg(p)), p))
        out.append(Or(p, neg(p)))
        out.append(Or(neg(p), neg(neg(p))))
    if len(a) >= 2:
        p, q = a[0], a[1]
        out.append(Imp(Imp(Imp(p, q), p), p))
        out.append(Or(Imp(p, q), Imp(q, p)))
    return out


# --- Search ---


def find_superintuitionistic(
    system: System,
    caps: Optional[SearchCaps] = None,
    policy: PolicyLike = BotPolicy.EXPLOSION,
    optimized: bool = False,
) -> Findings:
    """
    Formulas valid in every base of ``system`` but not intuitionistically provable.

    Known schemata are tried first, then every formula up to the caps.
    IPC theorems are skipped before any validity check.

    Args:
        system: The system searched
        caps: Enumeration bounds
        policy: Treatment of bot
        optimized: Use minimal-extension evaluation (generated systems only)

    Returns:
        Findings in deterministic order, truncated at ``caps.findings_cap``
    """
    caps = caps or SearchCaps()
    pol = policy if isinstance(policy, BotPolicy) else BotPolicy(policy)
    atoms = sorted(system.atoms())[: caps.max_atoms]
    optimized = optimized and isinstance(system, GeneratedSystem)

    def candidates() -> Iterator[Formula]:
        for f in known_schemata(atoms):
            if depth(f) <= caps.max_depth:
                yield f
        yield from enumerate_formulas(atoms, caps.max_depth)

    found = Findings()
    seen: Dict[Formula, None] = {}
    for f in candidates():
        if f in seen:
            continue
        seen[f] = None
        if len(seen) > caps.max_formulas:
            logger.info(f"Stopped after {caps.max_formulas} formulas")
            break
        if ipc_provable(f):
            continue
        verdict = ptv_valid(system, f, pol, optimized=optimized)
        if not verdict.valid:
            continue
        if len(found) >= caps.findings_cap:
            found.truncated = True
            break
        found.append(
            Finding(f, system.name, True, False, verdict.certificate, pol, len(system.universe))
        )
    found.examined = min(len(seen), caps.max_formulas)
    logger.info(f"{len(found)} finding(s) in {system.name} after {found.examined} formulas")
    return found


# --- Named checks ---


@dataclass(frozen=True)
class HarropRow:
    antecedent: Formula
    translation: str
    formula: Formula
    valid: bool


def check_harrop_family(
    system: System,
    antecedents: Sequence[Formula],
    policy: PolicyLike = BotPolicy.EXPLOSION,
    disjuncts: Tuple[str, str] = ("q", "r"),
    strict: bool = True,
) -> List[HarropRow]:
    """
    Validity of the generalised Harrop instance for each antecedent.

    Args:
        system: The system
        antecedents: Disjunction-free antecedents (negations allowed when not strict)
        policy: Treatment of bot
        disjuncts: Atom names of the two disjuncts
        strict: Propagate translation errors instead of reporting ``-``

    Raises:
        TranslationError: When strict and an antecedent has no rule translation
    """
    left, right = (AtomF(Atom(d)) for d in disjuncts)
    rows: List[HarropRow] = []
    for ante in antecedents:
        try:
            rules = formula_to_rules(ante)
            translation = "{" + ", ".join(r.key for r in sorted(rules)) + "}"
        except TranslationError:
            if strict:
                raise
            translation = "-"
        f = harrop_instance(ante, left, right)
        rows.append(HarropRow(ante, translation, f, ptv_valid(system, f, policy).valid))
    return rows


@dataclass(frozen=True)
class AnticorrelationRow:
    system: str
    inference_valid: bool
    harrop_valid: bool


def anticorrelation_table(
    systems: Sequence[System],
    antecedent: Formula,
    policy: PolicyLike = BotPolicy.EXPLOSION,
    disjuncts: Tuple[str, str] = ("q", "r"),
) -> List[AnticorrelationRow]:
    """Per system: the one-step inference A / q | r beside the Harrop instance for A."""
    left, right = (AtomF(Atom(d)) for d in disjuncts)
    inference = Imp(antecedent, Or(left, right))
    harrop = harrop_instance(antecedent, left, right)
    return [
        AnticorrelationRow(
            s.name, ptv_valid(s, inference, policy).valid, ptv_valid(s, harrop, policy).valid
        )
        for s in systems
    ]


@dataclass(frozen=True)
class ConjectureRow:
    formula: Formula
    ipc: bool
    gptv: bool

    @property
    def flag(self) -> str:
        if self.ipc and not self.gptv:
            return "unsound"
        if not self.ipc and self.gptv:
            return "unrefuted"
        return ""


def check_revised_conjecture(
    systems: Sequence[System], formulas: Iterable[Formula], policy: PolicyLike = BotPolicy.EXPLOSION
) -> List[ConjectureRow]:
    """
    Intuitionistic provability beside validity in every supplied system.

    A row flagged ``unsound`` is an intuitionistic theorem some system
    rejects; ``unrefuted`` is a non-theorem that every system accepts.
    """
    rows = [ConjectureRow(f, ipc_provable(f), gptv_valid(systems, f, policy).valid) for f in formulas]
    for row in rows:
        if row.flag == "unsound":
            logger.error(f"Intuitionistic theorem rejected: {print_formula(row.formula)}")
    return rows


# --- Reports ---


def _records(findings: Iterable[Union[Finding, FindingRecord]]) -> List[FindingRecord]:
    return [f.to_record() if isinstance(f, Finding) else f for f in findings]


def _cells(r: FindingRecord) -> Tuple[str, ...]:
    return (
        r.formula,
        r.system,
        str(r.ptv).lower(),
        str(r.ipc).lower(),
        r.policy,
        str(r.universe_size),
    )


def report(
    findings: Iterable[Union[Finding, FindingRecord]],
    format: ReportFormat = "text",
    truncated: Optional[bool] = None,
) -> str:
    """
    Tabulate findings.

    Args:
        findings: Findings or stored records
        format: ``text`` (aligned columns) or ``csv``
        truncated: Append a truncation notice; defaults to ``findings.truncated``

    Returns:
        The document, ending with a newline
    """
    if truncated is None:
        truncated = bool(getattr(findings, "truncated", False))
    records = _records(findings)
    rows = [CSV_COLUMNS] + [_cells(r) for r in records]

    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
        return buf.getvalue()
    if format != "text":
        raise ValueError(f"unknown report format: {format}")

    widths = [max(len(row[i]) for row in rows) for i in range(len(CSV_COLUMNS))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    if truncated:
        lines.append(f"# truncated after {len(records)} findings")
    return "\n".join(lines) + "\n"

