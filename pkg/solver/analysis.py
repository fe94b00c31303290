"""
Branching vectors, branching numbers and recursion-trace statistics.

A branching rule that decreases the budget by c_1..c_t in its t branches
yields the recurrence T(k) <= sum T(k - c_i); its branching number is the
largest real root of P(x) = 1 - sum x^(-c_i), and the recursion tree has
O(γ^k) leaves.
"""

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple, Union

from scipy.optimize import bisect

from solver.common import InternalInvariantViolation, MalformedTrace

BISECTION_XTOL = 1e-13
LEAF_BOUND_SLACK = 5
LEAF_BOUND_BASE = 2.7321

# Minimum branch-set sizes per branching rule; realized sizes are compared
# as sorted multisets.
MINIMUM_BRANCH_VECTORS: Dict[str, Tuple[int, ...]] = {
    "B1": (1, 1),
    "B2": (1, 1, 2),
    "B3": (1, 1, 2, 2),
    "B4": (1, 2, 2),
    "B5": (1, 2, 2, 4, 3, 2, 4, 3),
    "B6": (1, 1),
    "B7": (1, 2, 2, 2, 3, 3, 3, 3),
}

TRACE_LINE = re.compile(r"^node (\d+) (R1|R2|R3|B[1-7]) k=(-?\d+) sizes=((?:\d+(?:,\d+)*)?)$")


@dataclass(frozen=True)
class BranchingVector:
    """Per-branch budget decreases (c_1, ..., c_t), t >= 2, every c_i >= 1."""

    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) < 2:
            raise ValueError(f"Branching vector needs at least 2 entries, got {self.entries}")
        if any(c < 1 for c in self.entries):
            raise ValueError(f"Branching vector entries must be >= 1, got {self.entries}")

    @classmethod
    def parse(cls, text: str) -> "BranchingVector":
        """Parse a comma-separated vector such as "1,1,2,2"."""
        try:
            entries = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"Invalid branching vector: {text!r}")
        return cls(entries)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.entries) + ")"


class VectorTableEntry(NamedTuple):
    rule: str
    vector: BranchingVector
    number: float


@dataclass
class RecursionStats:
    """Aggregate shape of one recursion tree."""

    leaves: int = 0
    nodes: int = 0
    max_depth: int = 0
    rule_counts: Counter = field(default_factory=Counter)
    branch_vectors: List[Tuple[str, Tuple[int, ...]]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "leaves": self.leaves,
            "nodes": self.nodes,
            "max_depth": self.max_depth,
            "rule_counts": dict(sorted(self.rule_counts.items())),
        }


def dominates(realized: Sequence[int], minimum: Sequence[int]) -> bool:
    """True if both have the same length and sorted(realized) >= sorted(minimum) entrywise."""
    if len(realized) != len(minimum):
        return False
    return all(r >= m for r, m in zip(sorted(realized), sorted(minimum)))


def branching_number(vector: Union[BranchingVector, Sequence[int]]) -> float:
    """
    Largest real root of 1 - sum x^(-c_i).

    P is strictly increasing on (1, inf), negative just above 1 and
    positive at t + 1, so bisection on that bracket finds the unique root.

    Args:
        vector: Branching vector or a plain sequence of entries

    Returns:
        The branching number γ
    """
    if not isinstance(vector, BranchingVector):
        vector = BranchingVector(tuple(vector))
    entries = vector.entries

    def characteristic(x: float) -> float:
        return 1.0 - sum(x ** -c for c in entries)

    return bisect(characteristic, 1.0 + 1e-12, len(entries) + 1.0, xtol=BISECTION_XTOL)


def rule_vector_table() -> List[VectorTableEntry]:
    """
    Branching numbers of the minimum vectors of B1..B7.

    Raises:
        InternalInvariantViolation: If the largest number is not B3's 1 + sqrt(3)
    """
    entries = [
        VectorTableEntry(rule, BranchingVector(vector), branching_number(vector))
        for rule, vector in MINIMUM_BRANCH_VECTORS.items()
    ]
    worst = max(entries, key=lambda entry: entry.number)
    if worst.rule != "B3" or abs(worst.number - (1 + math.sqrt(3))) > 1e-6:
        raise InternalInvariantViolation(
            f"Largest branching number {worst.number:.6f} attained by {worst.rule}, expected B3 = 1+sqrt(3)"
        )
    return entries


def format_vector_table(entries: Iterable[VectorTableEntry]) -> str:
    lines = [f"{'rule':<6}{'vector':<22}branching number"]
    for entry in entries:
        lines.append(f"{entry.rule:<6}{str(entry.vector):<22}{entry.number:.6f}")
    return "\n".join(lines) + "\n"


def stats_from_trace(lines: Iterable[str]) -> RecursionStats:
    """
    Aggregate a preorder trace of "node <depth> <rule> k=<k> sizes=<...>" lines.

    A node is a leaf when the next line is not one level deeper.

    Raises:
        MalformedTrace: On an unparsable line or an impossible tree shape
    """
    parsed: List[Tuple[int, str]] = []
    stats = RecursionStats()

    for number, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        match = TRACE_LINE.match(line)
        if not match:
            raise MalformedTrace(f"Trace line {number} is malformed: {line!r}")
        depth, rule, sizes = int(match.group(1)), match.group(2), match.group(4)

        if not parsed and depth != 0:
            raise MalformedTrace(f"Trace must start at depth 0, got {depth}")
        if parsed and depth > parsed[-1][0] + 1:
            raise MalformedTrace(f"Trace line {number} jumps from depth {parsed[-1][0]} to {depth}")

        parsed.append((depth, rule))
        stats.rule_counts[rule] += 1
        stats.max_depth = max(stats.max_depth, depth)
        if rule.startswith("B"):
            stats.branch_vectors.append((rule, tuple(int(s) for s in sizes.split(",")) if sizes else ()))

    for index, (depth, rule) in enumerate(parsed):
        has_child = index + 1 < len(parsed) and parsed[index + 1][0] == depth + 1
        if rule in ("R1", "R2") and has_child:
            raise MalformedTrace(f"Terminal rule {rule} at trace line {index + 1} has a child")
        if rule == "R3" and not has_child:
            raise MalformedTrace(f"Reduction R3 at trace line {index + 1} has no child")
        if not has_child:
            stats.leaves += 1

    stats.nodes = len(parsed)
    return stats


def recurrence_leaf_bound(k: int, vectors: Iterable[Sequence[int]]) -> int:
    """
    Worst-case leaf count T(k) = max(1, max_v sum_{c_i <= k} T(k - c_i)).

    Branches with c_i > k are pruned rather than recursed into, matching
    the solver's budget guard.
    """
    vectors = [tuple(v) for v in vectors]
    table = [1] * (max(k, 0) + 1)
    for budget in range(1, k + 1):
        best = 1
        for vector in vectors:
            best = max(best, sum(table[budget - c] for c in vector if c <= budget))
        table[budget] = best
    return table[k] if k >= 0 else 1


def leaf_bound(k0: int) -> float:
    """Empirical leaf ceiling LEAF_BOUND_SLACK * LEAF_BOUND_BASE^k0."""
    return LEAF_BOUND_SLACK * LEAF_BOUND_BASE ** k0
