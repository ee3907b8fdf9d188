"""
System files.

Explicit families::

    !explicit
    ---
    p
    (p => q)
    ---
    p
    (p => r)

The lines between the header and the first ``---`` form base 0 (here the
empty base). A base may be listed only once. ``!atoms q s`` declares atoms the
system governs although no rule mentions them. Generated families::

    !generate
    atoms: p q r
    max-level: 2
    max-premises: 2
    universe-file: harrop.rules
    exclude: p; (p => q)
    name: trimmed
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from ptvalidity.config import DEFAULT_SETTINGS
from ptvalidity.data.base_repo import ALLOW_BOT, numbered_lines, parse_base, parse_rule_line
from ptvalidity.errors import SystemFileError
from ptvalidity.rules import Base, Rule, rule_atoms
from ptvalidity.syntax import FALSUM, Atom
from ptvalidity.systems import ExplicitSystem, GeneratedSystem, GeneratorSpec, System

logger = logging.getLogger(__name__)

ATOMS_HEADER = "!atoms"

_GENERATE_KEYS = {"atoms", "max-level", "max-premises", "universe-file", "exclude", "name"}


def parse_system(
    text: str,
    cap: int = DEFAULT_SETTINGS.universe_cap,
    name: Optional[str] = None,
    base_dir: Optional[Path] = None,
    default_name: Optional[str] = None,
) -> System:
    """
    Parse system file contents.

    Args:
        text: File contents
        cap: Largest generated universe allowed
        name: Display name, overriding any ``name:`` key in the file
        base_dir: Directory against which ``universe-file`` is resolved
        default_name: Display name when neither ``name`` nor the file gives one

    Raises:
        SystemFileError: On malformed files
        UniverseTooLarge: If a generated universe exceeds ``cap``
    """
    lines = list(numbered_lines(text))
    headers = [(offset, line) for _, offset, line in lines if line.startswith("!")]
    kinds = [line for _, line in headers if line in ("!explicit", "!generate")]
    if len(kinds) != 1:
        raise SystemFileError("expected exactly one of !explicit or !generate", text, 0)
    declared: List[Atom] = []
    for offset, line in headers:
        if line.split()[0] == ATOMS_HEADER:
            if kinds[0] != "!explicit":
                raise SystemFileError("!atoms needs an explicit system; use atoms:", text, offset)
            declared += _declared_atoms(text, offset, line)
        elif line not in ("!explicit", "!generate", ALLOW_BOT):
            raise SystemFileError(f"unknown header {line!r}", text, offset)
    allow_bot = any(line == ALLOW_BOT for _, line in headers)
    body = [(n, offset, line) for n, offset, line in lines if not line.startswith("!")]

    if kinds[0] == "!explicit":
        bases = _explicit_bases(text, body, allow_bot)
        return ExplicitSystem(bases, name=name or default_name or "explicit", atoms=declared)
    return _generated(text, body, cap, name, base_dir or Path.cwd(), default_name)


def _declared_atoms(text: str, offset: int, line: str) -> List[Atom]:
    try:
        return [Atom(name) for name in line.split()[1:]]
    except ValueError as e:
        raise SystemFileError(str(e), text, offset) from e


def _explicit_bases(
    text: str, body: List[Tuple[int, int, str]], allow_bot: bool
) -> List[Base]:
    sections: List[List[Rule]] = [[]]
    starts = [0]
    for _, offset, line in body:
        if line == "---":
            sections.append([])
            starts.append(offset)
        else:
            sections[-1].append(parse_rule_line(text, offset, line, allow_bot))
    bases: List[Base] = []
    for rules, start in zip(sections, starts):
        b = Base(frozenset(rules))
        if b in bases:
            raise SystemFileError(
                f"base {b} repeats base {bases.index(b)}; indexes would shift", text, start
            )
        bases.append(b)
    return bases


def _generated(
    text: str,
    body: List[Tuple[int, int, str]],
    cap: int,
    name: Optional[str],
    base_dir: Path,
    default_name: Optional[str] = None,
) -> GeneratedSystem:
    fields: Dict[str, str] = {}
    for _, offset, line in body:
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in _GENERATE_KEYS:
            raise SystemFileError(f"expected 'key: value', got {line!r}", text, offset)
        if key in fields:
            raise SystemFileError(f"duplicate key {key!r}", text, offset)
        fields[key] = value.strip()

    universe = None
    if "universe-file" in fields:
        path = base_dir / fields["universe-file"]
        if not path.is_file():
            raise SystemFileError(f"universe file not found: {path}")
        universe = tuple(r.key for r in parse_base(path.read_text(encoding="utf-8")).rules)

    try:
        spec = GeneratorSpec(
            atoms=tuple(fields.get("atoms", "").split()),
            max_level=fields.get("max-level", 1),
            max_premises=fields.get("max-premises", 1),
            explicit_universe=universe,
            exclude=tuple(t.strip() for t in fields.get("exclude", "").split(";") if t.strip()),
        )
    except (ValidationError, ValueError) as e:
        raise SystemFileError(f"invalid generator settings: {e}", text, 0) from e

    if universe is not None and not spec.atoms:
        rules = spec.universe_rules(cap)
        atoms = sorted({a.name for r in rules for a in rule_atoms(r) if a != FALSUM})
        spec = spec.model_copy(update={"atoms": tuple(atoms)})
    return GeneratedSystem(spec, cap, name=name or fields.get("name") or default_name)


def load_system(
    path: Union[str, Path],
    cap: int = DEFAULT_SETTINGS.universe_cap,
    name: Optional[str] = None,
) -> System:
    """Load a system file; the display name defaults to the file name without suffix."""
    p = Path(path)
    system = parse_system(
        p.read_text(encoding="utf-8"), cap=cap, name=name, base_dir=p.parent, default_name=p.stem
    )
    logger.info(f"Loaded system {system.name} ({system.size()} bases) from {path}")
    return system


def dump_system(system: System) -> str:
    """Render a system file. Generated systems are written as their generator settings."""
    if isinstance(system, GeneratedSystem):
        spec = system.spec
        lines = ["!generate", f"atoms: {' '.join(spec.atoms)}"]
        lines += [f"max-level: {spec.max_level}", f"max-premises: {spec.max_premises}"]
        if spec.exclude:
            lines.append("exclude: " + "; ".join(spec.exclude))
        if spec.explicit_universe is not None:
            raise SystemFileError("a curated universe needs its own universe file")
        return "\n".join(lines) + "\n"
    assert isinstance(system, ExplicitSystem)
    lines = ["!explicit"]
    if system.declared_atoms:
        lines.append(ATOMS_HEADER + " " + " ".join(sorted(a.name for a in system.declared_atoms)))
    for i, b in enumerate(system.bases):
        if i:
            lines.append("---")
        lines += [r.key for r in b.sorted_rules()]
    return "\n".join(lines) + "\n"
