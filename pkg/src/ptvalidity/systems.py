"""
Proof-theoretic systems: families of bases ordered by inclusion.

An explicit system lists its bases verbatim. A generated system is the full
powerset of a finite rule universe, produced from a GeneratorSpec.
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from itertools import combinations
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .config import DEFAULT_SETTINGS
from .errors import BaseNotInSystem, UniverseTooLarge
from .rules import AxiomR, Base, CompoundR, Rule, is_self_concluding, parse_rule, rule_atoms
from .syntax import FALSUM, Atom

logger = logging.getLogger(__name__)


class GeneratorSpec(BaseModel):
    """
    Recipe for a generated universe.

    Atoms are stored by name and rules by canonical text so the model stays
    plain data; ``atom_set()`` and ``universe_rules()`` rebuild the objects.
    """

    model_config = ConfigDict(frozen=True)

    atoms: Tuple[str, ...] = ()
    max_level: int = Field(default=1, ge=0)
    max_premises: int = Field(default=1, ge=0)
    explicit_universe: Optional[Tuple[str, ...]] = None
    exclude: Tuple[str, ...] = ()

    @field_validator("atoms", mode="before")
    @classmethod
    def _normalize_atoms(cls, v: Iterable[Union[str, Atom]]) -> Tuple[str, ...]:
        names = {a.name if isinstance(a, Atom) else str(a) for a in v}
        for name in names:
            Atom(name)
        return tuple(sorted(names))

    @field_validator("explicit_universe", "exclude", mode="before")
    @classmethod
    def _normalize_rules(
        cls, v: Optional[Iterable[Union[str, Rule]]]
    ) -> Optional[Tuple[str, ...]]:
        if v is None:
            return None
        keys = {r.key if isinstance(r, Rule) else parse_rule(str(r)).key for r in v}
        return tuple(sorted(keys))

    def atom_set(self) -> FrozenSet[Atom]:
        return frozenset(Atom(a) for a in self.atoms)

    def excluded_rules(self) -> FrozenSet[Rule]:
        return frozenset(parse_rule(t) for t in self.exclude)

    def universe_rules(self, cap: int = DEFAULT_SETTINGS.universe_cap) -> Tuple[Rule, ...]:
        """
        The canonical, sorted universe these settings describe.

        Raises:
            UniverseTooLarge: As soon as the universe exceeds ``cap`` rules
        """
        excluded = self.excluded_rules()
        if self.explicit_universe is not None:
            rules = {parse_rule(t) for t in self.explicit_universe} - excluded
            if len(rules) > cap:
                raise UniverseTooLarge(len(rules), cap)
            return tuple(sorted(rules))
        return generate_universe(self.atom_set(), self.max_level, self.max_premises, cap, excluded)


def generate_universe(
    atoms: Iterable[Atom],
    max_level: int,
    max_premises: int,
    cap: int = DEFAULT_SETTINGS.universe_cap,
    exclude: FrozenSet[Rule] = frozenset(),
) -> Tuple[Rule, ...]:
    """
    All canonical rules over ``atoms`` up to ``max_level`` with at most
    ``max_premises`` premises at every nesting depth.

    Self-concluding rules such as ``(p => p)`` are omitted; they never add a
    derivation.

    Raises:
        UniverseTooLarge: As soon as more than ``cap`` rules are produced
    """
    ordered_atoms = sorted(set(atoms))
    layer: List[Rule] = [AxiomR(a) for a in ordered_atoms]
    seen = set(layer)

    def kept() -> int:
        return len(seen - exclude)

    if kept() > cap:
        raise UniverseTooLarge(kept(), cap)

    for lvl in range(1, max_level + 1):
        previous = sorted(seen)
        for k in range(1, max_premises + 1):
            for premises in combinations(previous, k):
                for a in ordered_atoms:
                    r = CompoundR(premises, a)
                    if r in seen or is_self_concluding(r):
                        continue
                    seen.add(r)
                    if kept() > cap:
                        raise UniverseTooLarge(kept(), cap)
        logger.debug(f"Universe after level {lvl}: {len(seen)} rules")

    return tuple(sorted(seen - exclude))


class System(ABC):
    """A family of bases; extension means superset within the family."""

    name: str

    @abstractmethod
    def member(self, base: Base) -> bool:
        ...

    @abstractmethod
    def enumerate_bases(self) -> Iterator[Base]:
        ...

    @abstractmethod
    def extensions_of(self, base: Base) -> Iterator[Base]:
        """Members containing ``base`` (itself first), by size then canonical text."""

    @abstractmethod
    def size(self) -> int:
        ...

    @property
    @abstractmethod
    def universe(self) -> Tuple[Rule, ...]:
        """Every rule occurring in some base, sorted."""

    def atoms(self) -> FrozenSet[Atom]:
        """Atoms governed by the system; bot is never among them."""
        out: set = set()
        for r in self.universe:
            out |= rule_atoms(r)
        out.discard(FALSUM)
        return frozenset(out)

    def base_at(self, index: int) -> Base:
        """The ``index``-th base in enumeration order."""
        if index < 0:
            raise BaseNotInSystem(f"#{index}")
        for i, b in enumerate(self.enumerate_bases()):
            if i == index:
                return b
        raise BaseNotInSystem(f"#{index}")

    def _require(self, base: Base) -> None:
        if not self.member(base):
            raise BaseNotInSystem(base)

    def __str__(self) -> str:
        return self.name


class ExplicitSystem(System):
    """
    A finite family listed base by base; no closure properties assumed.

    Args:
        bases: The members, in the order ``base_at`` indexes them
        name: Display name
        atoms: Atoms governed in addition to those of the rules

    Raises:
        ValueError: If a base is listed twice
    """

    def __init__(
        self,
        bases: Sequence[Base],
        name: str = "explicit",
        atoms: Iterable[Union[str, Atom]] = (),
    ):
        self._bases: Tuple[Base, ...] = tuple(bases)
        seen: Dict[Base, int] = {}
        for i, b in enumerate(self._bases):
            if b in seen:
                raise ValueError(f"base {b} listed twice (positions {seen[b]} and {i})")
            seen[b] = i
        self._declared = frozenset(a if isinstance(a, Atom) else Atom(a) for a in atoms)
        self._members = frozenset(self._bases)
        self._sorted = tuple(sorted(self._bases, key=Base.sort_key))
        self._universe = tuple(sorted({r for b in self._bases for r in b.rules}))
        self.name = name

    @property
    def bases(self) -> Tuple[Base, ...]:
        return self._bases

    @property
    def universe(self) -> Tuple[Rule, ...]:
        return self._universe

    def atoms(self) -> FrozenSet[Atom]:
        return super().atoms() | self._declared

    @property
    def declared_atoms(self) -> FrozenSet[Atom]:
        return self._declared

    def member(self, base: Base) -> bool:
        return base in self._members

    def enumerate_bases(self) -> Iterator[Base]:
        # file order, so indexes match the source file
        return iter(self._bases)

    def extensions_of(self, base: Base) -> Iterator[Base]:
        self._require(base)
        return (b for b in self._sorted if base.rules <= b.rules)

    def size(self) -> int:
        return len(self._bases)


class GeneratedSystem(System):
    """All subsets of a finite universe of rules."""

    def __init__(
        self,
        spec: GeneratorSpec,
        cap: int = DEFAULT_SETTINGS.universe_cap,
        name: Optional[str] = None,
    ):
        self.spec = spec
        self._universe = spec.universe_rules(cap)
        self._universe_set = frozenset(self._universe)
        self.name = name or (
            f"generated(atoms={' '.join(spec.atoms)}, level={spec.max_level}, "
            f"premises={spec.max_premises}, rules={len(self._universe)})"
        )
        logger.debug(f"Built {self.name}")

    @property
    def universe(self) -> Tuple[Rule, ...]:
        return self._universe

    def atoms(self) -> FrozenSet[Atom]:
        return super().atoms() | self.spec.atom_set()

    def member(self, base: Base) -> bool:
        return base.rules <= self._universe_set

    def enumerate_bases(self) -> Iterator[Base]:
        for k in range(len(self._universe) + 1):
            for combo in combinations(self._universe, k):
                yield Base(frozenset(combo))

    def extensions_of(self, base: Base) -> Iterator[Base]:
        self._require(base)
        return self._extensions(base)

    def _extensions(self, base: Base) -> Iterator[Base]:
        # sorted order of the added rules equals sorted order of the unions
        rest = [r for r in self._universe if r not in base.rules]
        for k in range(len(rest) + 1):
            for combo in combinations(rest, k):
                yield Base(base.rules | frozenset(combo))

    def size(self) -> int:
        return 2 ** len(self._universe)


def build_system(
    source: Union[GeneratorSpec, str, Path],
    cap: int = DEFAULT_SETTINGS.universe_cap,
    name: Optional[str] = None,
) -> System:
    """
    Build a system from a GeneratorSpec or a system file.

    Args:
        source: A GeneratorSpec, or the path of a system file
        cap: Largest generated universe allowed
        name: Display name (defaults to the file name or a generated summary)

    Returns:
        The system

    Raises:
        UniverseTooLarge: If a generated universe exceeds ``cap``
        SystemFileError: On malformed files
    """
    if isinstance(source, GeneratorSpec):
        return GeneratedSystem(source, cap, name)
    from .data.system_repo import load_system

    return load_system(source, cap=cap, name=name)


def minimal_system(
    atoms: Iterable[Union[str, Atom]],
    max_premises: int = 2,
    cap: int = DEFAULT_SETTINGS.universe_cap,
) -> GeneratedSystem:
    """Bounded stand-in for the system of all level-1 bases."""
    spec = GeneratorSpec(atoms=tuple(atoms), max_level=1, max_premises=max_premises)
    return GeneratedSystem(spec, cap, name=f"minimal({' '.join(spec.atoms)})")


def complete_system(
    atoms: Iterable[Union[str, Atom]],
    max_level: int = 2,
    max_premises: int = 1,
    cap: int = DEFAULT_SETTINGS.universe_cap,
    exclude: Iterable[Union[str, Rule]] = (),
) -> GeneratedSystem:
    """Bounded stand-in for the system of bases of any level."""
    spec = GeneratorSpec(
        atoms=tuple(atoms), max_level=max_level, max_premises=max_premises, exclude=tuple(exclude)
    )
    label = f"complete({' '.join(spec.atoms)}, level={max_level})"
    if spec.exclude:
        label += " without " + ", ".join(spec.exclude)
    return GeneratedSystem(spec, cap, name=label)


def curated_system(
    rules: Iterable[Union[str, Rule]],
    cap: int = DEFAULT_SETTINGS.universe_cap,
    name: Optional[str] = None,
    atoms: Iterable[Union[str, Atom]] = (),
) -> GeneratedSystem:
    """Powerset system over a hand-picked universe, governing ``atoms`` besides the rule atoms."""
    spec = GeneratorSpec(explicit_universe=tuple(rules))
    universe = spec.universe_rules(cap)
    names = {a.name for r in universe for a in rule_atoms(r) if a != FALSUM}
    names |= {a.name if isinstance(a, Atom) else a for a in atoms}
    spec = GeneratorSpec(atoms=tuple(names), explicit_universe=spec.explicit_universe)
    return GeneratedSystem(spec, cap, name=name or f"curated({len(universe)} rules)")


def extensions_of(sys: System, base: Base) -> Iterator[Base]:
    return sys.extensions_of(base)


def member(sys: System, base: Base) -> bool:
    return sys.member(base)


def enumerate_bases(sys: System) -> Iterator[Base]:
    return sys.enumerate_bases()
