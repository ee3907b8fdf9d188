"""
Intuitionistic propositional logic: a terminating decision procedure and a
bounded Kripke countermodel search used to cross-check it.

The prover is the contraction-free sequent calculus: invertible rules are
applied eagerly, then disjunction on the right and implications whose
antecedent is itself an implication are tried in turn.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .syntax import And, Atom, AtomF, Bot, Formula, Imp, Or, atoms_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Sequent:
    context: Tuple[Formula, ...]
    goal: Formula

    def provable(self) -> bool:
        return _prove(frozenset(self.context), self.goal)


def ipc_provable(f: Formula) -> bool:
    """True iff ``f`` is a theorem of intuitionistic propositional logic."""
    return _prove(frozenset(), f)


def ipc_entails(context: Sequence[Formula], goal: Formula) -> bool:
    return _prove(frozenset(context), goal)


def clear_cache() -> None:
    _prove.cache_clear()


@lru_cache(maxsize=200_000)
def _prove(ctx: FrozenSet[Formula], goal: Formula) -> bool:
    # invertible left rules
    for f in sorted(ctx, key=str):
        rest = ctx - {f}
        if isinstance(f, Bot):
            return True
        if isinstance(f, And):
            return _prove(rest | {f.left, f.right}, goal)
        if isinstance(f, Or):
            return _prove(rest | {f.left}, goal) and _prove(rest | {f.right}, goal)
        if isinstance(f, Imp):
            a, b = f.left, f.right
            if isinstance(a, AtomF) and a in ctx:
                return _prove(rest | {b}, goal)
            if isinstance(a, Bot):
                return _prove(rest, goal)
            if isinstance(a, And):
                return _prove(rest | {Imp(a.left, Imp(a.right, b))}, goal)
            if isinstance(a, Or):
                return _prove(rest | {Imp(a.left, b), Imp(a.right, b)}, goal)

    # invertible right rules
    if goal in ctx:
        return True
    if isinstance(goal, And):
        return _prove(ctx, goal.left) and _prove(ctx, goal.right)
    if isinstance(goal, Imp):
        return _prove(ctx | {goal.left}, goal.right)

    # choices
    if isinstance(goal, Or) and (_prove(ctx, goal.left) or _prove(ctx, goal.right)):
        return True
    for f in sorted(ctx, key=str):
        if isinstance(f, Imp) and isinstance(f.left, Imp):
            c, d, b = f.left.left, f.left.right, f.right
            rest = ctx - {f}
            if _prove(rest | {Imp(d, b)}, Imp(c, d)) and _prove(rest | {b}, goal):
                return True
    return False


# --- Kripke models ---


@dataclass(frozen=True)
class KripkeModel:
    """
    A finite rooted tree model. World 0 is the root and ``parents[w] < w``
    for every other world, so the order is the tree's reflexive-transitive
    closure.
    """

    parents: Tuple[int, ...]
    valuation: Tuple[FrozenSet[Atom], ...]
    _forced: Dict[Tuple[int, Formula], bool] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    @property
    def worlds(self) -> range:
        return range(len(self.parents))

    def above(self, w: int) -> List[int]:
        """Worlds v with w <= v."""
        out = [w]
        for v in range(w + 1, len(self.parents)):
            if self.parents[v] in out:
                out.append(v)
        return out

    @property
    def order(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((w, v) for w in self.worlds for v in self.above(w))

    def is_persistent(self) -> bool:
        return all(self.valuation[self.parents[v]] <= self.valuation[v] for v in self.worlds if v)

    def forces(self, w: int, f: Formula) -> bool:
        key = (w, f)
        cached = self._forced.get(key)
        if cached is not None:
            return cached
        if isinstance(f, AtomF):
            out = f.atom in self.valuation[w]
        elif isinstance(f, Bot):
            out = False
        elif isinstance(f, And):
            out = self.forces(w, f.left) and self.forces(w, f.right)
        elif isinstance(f, Or):
            out = self.forces(w, f.left) or self.forces(w, f.right)
        else:
            assert isinstance(f, Imp)
            out = all(not self.forces(v, f.left) or self.forces(v, f.right) for v in self.above(w))
        self._forced[key] = out
        return out

    def render(self) -> str:
        strict = sorted((w, v) for w, v in self.order if w != v)
        lines = [
            "worlds: " + " ".join(f"w{w}" for w in self.worlds),
            "order: " + (", ".join(f"w{w} < w{v}" for w, v in strict) or "-"),
        ]
        for w in self.worlds:
            atoms = " ".join(sorted(a.name for a in self.valuation[w])) or "-"
            lines.append(f"w{w}: {atoms}")
        return "\n".join(lines)


def _trees(n: int) -> Iterator[Tuple[int, ...]]:
    """Parent arrays of rooted trees on n worlds (root 0, parents[w] < w)."""
    if n == 1:
        yield (-1,)
        return
    for smaller in _trees(n - 1):
        for p in range(n - 1):
            yield smaller + (p,)


def _canonical(parents: Tuple[int, ...], valuation: Sequence[FrozenSet[Atom]]) -> str:
    children: Dict[int, List[int]] = {w: [] for w in range(len(parents))}
    for w in range(1, len(parents)):
        children[parents[w]].append(w)

    def enc(w: int) -> str:
        inner = "".join(sorted(enc(c) for c in children[w]))
        return "(" + ",".join(sorted(a.name for a in valuation[w])) + ";" + inner + ")"

    return enc(0)


def _subsets(atoms: Sequence[Atom]) -> List[FrozenSet[Atom]]:
    return [frozenset(c) for k in range(len(atoms) + 1) for c in combinations(atoms, k)]


def kripke_counterexample(f: Formula, max_worlds: int = 4) -> Optional[KripkeModel]:
    """
    Search rooted tree models of up to ``max_worlds`` worlds for one whose
    root does not force ``f``.

    Args:
        f: The formula
        max_worlds: Largest model size tried (at least 1)

    Returns:
        The first countermodel found, smallest first, or None
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    atoms = sorted(atoms_of(f))
    subsets = _subsets(atoms)
    for n in range(1, max_worlds + 1):
        seen: Set[str] = set()
        for parents in _trees(n):
            valuation: List[FrozenSet[Atom]] = []
            found = _assign(f, parents, valuation, subsets, seen)
            if found is not None:
                logger.debug(f"Countermodel with {n} world(s) for {f}")
                return found
    return None


def _assign(
    f: Formula,
    parents: Tuple[int, ...],
    valuation: List[FrozenSet[Atom]],
    subsets: List[FrozenSet[Atom]],
    seen: Set[str],
) -> Optional[KripkeModel]:
    w = len(valuation)
    if w == len(parents):
        key = _canonical(parents, valuation)
        if key in seen:
            return None
        seen.add(key)
        model = KripkeModel(parents, tuple(valuation))
        return model if not model.forces(0, f) else None
    floor = valuation[parents[w]] if w else frozenset()
    for s in subsets:
        if floor <= s:
            valuation.append(s)
            found = _assign(f, parents, valuation, subsets, seen)
            valuation.pop()
            if found is not None:
                return found
    return None
