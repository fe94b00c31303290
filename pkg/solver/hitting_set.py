"""
3-Hitting-Set instances and an exact branch-and-reduce solver.

The solver normalizes, forces the elements of unit sets, and otherwise
branches on the elements of a smallest remaining set. Every branching
node spends at least one unit of budget on each child, so a run has at
most 3^k leaves.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from solver.common import InternalInvariantViolation, InvalidInstance, print_progress

Element = int
HitSet = Tuple[Element, ...]


@dataclass(frozen=True)
class HittingSetInstance:
    """A family of 1-3 element sets over a universe, plus a budget k."""

    family: Tuple[HitSet, ...]
    budget: int
    universe: FrozenSet[Element] = field(default=frozenset())

    def __post_init__(self) -> None:
        if self.budget < 0:
            raise InvalidInstance(f"Budget must be non-negative, got {self.budget}")
        for members in self.family:
            if not 1 <= len(set(members)) <= 3:
                raise InvalidInstance(f"Set {members} must have 1 to 3 distinct elements")
        covered = frozenset(e for members in self.family for e in members)
        if not self.universe:
            object.__setattr__(self, "universe", covered)
        elif not covered <= self.universe:
            raise InvalidInstance("Family uses elements outside the universe")

    @classmethod
    def build(
        cls,
        family: Iterable[Iterable[Element]],
        budget: int,
        universe: Optional[Iterable[Element]] = None,
    ) -> "HittingSetInstance":
        sets = tuple(tuple(sorted(set(members))) for members in family)
        return cls(sets, budget, frozenset(universe) if universe is not None else frozenset())

    def is_hit_by(self, chosen: Iterable[Element]) -> bool:
        picked = set(chosen)
        return all(picked.intersection(members) for members in self.family)


def normalize(inst: HittingSetInstance) -> HittingSetInstance:
    """
    Drop duplicates and supersets of other sets.

    Hitting a subset hits every superset, so the minimal hitting sets are
    unchanged. The result is sorted by (size, elements).
    """
    unique = sorted({tuple(sorted(set(members))) for members in inst.family}, key=lambda s: (len(s), s))
    kept: List[HitSet] = []
    for candidate in unique:
        as_set = set(candidate)
        if not any(as_set.issuperset(smaller) for smaller in kept):
            kept.append(candidate)
    return HittingSetInstance(tuple(kept), inst.budget, inst.universe)


def compose_families(
    first: Sequence[Iterable[Element]],
    second: Sequence[Iterable[Element]],
) -> List[FrozenSet[Element]]:
    """
    Family product {A ∪ B : A in first, B in second}.

    ``first`` is the outer loop; repeated unions keep their first position.
    """
    result: List[FrozenSet[Element]] = []
    for left in first:
        for right in second:
            union = frozenset(left) | frozenset(right)
            if union not in result:
                result.append(union)
    return result


class HittingSetSolver:
    """Exact parameterized 3-Hitting-Set solver."""

    def __init__(self, verbose: bool = False):
        """
        Initialize solver.

        Args:
            verbose: Print progress messages
        """
        self.verbose = verbose
        self.leaves = 0
        self.nodes = 0

    def solve(self, inst: HittingSetInstance) -> Optional[FrozenSet[Element]]:
        """
        Find a hitting set of size at most the budget.

        Args:
            inst: Instance to solve

        Returns:
            The hitting set, or None if none exists within the budget

        Raises:
            InternalInvariantViolation: If the search returns an invalid set
        """
        self.leaves = 0
        self.nodes = 0
        reduced = normalize(inst)
        print_progress(
            f"3-HS: {len(reduced.family)} sets over {len(reduced.universe)} elements, k={inst.budget}",
            self.verbose,
        )
        found = self._search(list(reduced.family), inst.budget, frozenset())
        print_progress(f"3-HS: {self.nodes} nodes, {self.leaves} leaves", self.verbose)

        if found is not None and (len(found) > inst.budget or not inst.is_hit_by(found)):
            raise InternalInvariantViolation(f"Hitting set {sorted(found)} fails self-check")
        return found

    def _search(
        self,
        family: List[HitSet],
        k: int,
        chosen: FrozenSet[Element],
    ) -> Optional[FrozenSet[Element]]:
        self.nodes += 1
        while True:
            remaining = [members for members in family if not chosen.intersection(members)]
            if not remaining:
                self.leaves += 1
                return chosen
            forced = {members[0] for members in remaining if len(members) == 1}
            if not forced:
                break
            if len(forced) > k:
                self.leaves += 1
                return None
            chosen = chosen | forced
            k -= len(forced)
            family = remaining

        if k <= 0:
            self.leaves += 1
            return None

        pivot = min(remaining, key=lambda members: (len(members), members))
        for element in pivot:
            found = self._search(remaining, k - 1, chosen | {element})
            if found is not None:
                return found
        return None


def solve_3hs(inst: HittingSetInstance) -> Optional[FrozenSet[Element]]:
    """Return a hitting set of size <= budget, or None."""
    return HittingSetSolver().solve(inst)
