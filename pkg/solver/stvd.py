"""
Split to Threshold Vertex Deletion by branching.

A split graph is a threshold graph iff it has no induced P4, and every
induced P4 has the shape u-a-b-v with u, v in I and a, b in C. At each
node the solver applies the first applicable rule of

    R1  k <= 0 and a P4 remains (or k < 0)      -> no
    R2  the graph is empty                      -> yes
    R3  delete vertices on no P4 (free of charge)
    B1..B3                                      degree-1 and 2-2 branchings
    B4/B5  (all of I₀ are twins)                Case 1
    B6/B7  (I₀ has non-twins)                   Case 2

Every choice the rules leave open is resolved by the lowest vertex
index or the lexicographically first pair, so runs are reproducible.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from solver.analysis import MINIMUM_BRANCH_VECTORS, RecursionStats, dominates, stats_from_trace
from solver.common import InternalInvariantViolation, print_progress
from solver.graph import (
    Graph,
    SplitPartition,
    find_induced_p4,
    iter_bits,
    lowest_bit,
    min_degree_set,
    p4_free_vertices,
    set_of,
    twin_class,
)
from solver.hitting_set import compose_families


class RuleId(str, Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    B5 = "B5"
    B6 = "B6"
    B7 = "B7"


@dataclass(frozen=True)
class SearchState:
    """One recursion node: the live graph, its partition, budget and deletions so far."""

    graph: Graph
    partition: SplitPartition
    budget: int
    deletions: FrozenSet[int] = frozenset()

    def branch(self, removed: FrozenSet[int]) -> "SearchState":
        return SearchState(
            self.graph.without(removed),
            self.partition,
            self.budget - len(removed),
            self.deletions | removed,
        )

    def reduce(self, removed: FrozenSet[int]) -> "SearchState":
        return SearchState(self.graph.without(removed), self.partition, self.budget, self.deletions)


@dataclass(frozen=True)
class RuleDecision:
    rule: RuleId
    answer: Optional[bool] = None
    reduction: FrozenSet[int] = frozenset()
    branches: Tuple[FrozenSet[int], ...] = ()

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(branch) for branch in self.branches)


@dataclass(frozen=True)
class Case2Context:
    """Non-twin pair u1, u2 of I₀ with private neighbors a1, a2."""

    u1: int
    u2: int
    a1: int
    a2: int
    rest: FrozenSet[int] = field(default=frozenset())  # I₁ = I₀ minus both twin classes
    sunflower: bool = True

    def swapped(self) -> "Case2Context":
        return Case2Context(self.u2, self.u1, self.a2, self.a1, self.rest, self.sunflower)


class _IndependentView:
    """Neighborhood masks of the live I vertices at one node."""

    def __init__(self, g: Graph, p: SplitPartition):
        self.graph = g
        self.partition = p
        self.vertices: List[int] = list(iter_bits(p.live_independent(g)))
        self.nbr: Dict[int, int] = {v: g.neighbor_mask(v) for v in self.vertices}

    def degree(self, v: int) -> int:
        return self.nbr[v].bit_count()

    def pairs(self):
        return combinations(self.vertices, 2)


def _private_neighbor(nbr: Dict[int, int], u: int, v: int) -> int:
    only = nbr[u] & ~nbr[v]
    if only.bit_count() != 1:
        raise InternalInvariantViolation(
            f"|N({u}) \\ N({v})| = {only.bit_count()}, expected exactly 1 for equal-degree non-twins"
        )
    return lowest_bit(only)


def classify_sunflower(g: Graph, p: SplitPartition, u1: int, u2: int) -> Case2Context:
    """
    Classify how the rest of I₀ relates to the non-twin pair u1, u2.

    Every u in I₁ either has N(u) = (N(u1) ∩ N(u2)) + one vertex outside
    {a1, a2} (sunflower), or N(u) = {a1, a2} + all but one vertex of
    N(u1) ∩ N(u2). I₁ = ∅ counts as a sunflower.

    Raises:
        InternalInvariantViolation: If neither description covers all of I₁
    """
    nbr = {v: g.neighbor_mask(v) for v in iter_bits(p.live_independent(g))}
    a1 = _private_neighbor(nbr, u1, u2)
    a2 = _private_neighbor(nbr, u2, u1)
    core = nbr[u1] & nbr[u2]
    pair = (1 << a1) | (1 << a2)

    rest = min_degree_set(g, p) - twin_class(g, p, u1) - twin_class(g, p, u2)
    petals = all(
        core & ~nbr[u] == 0 and (nbr[u] & ~core).bit_count() == 1 and nbr[u] & pair == 0
        for u in rest
    )
    dropped = all(
        nbr[u] & pair == pair and nbr[u] & ~(core | pair) == 0 and (core & ~nbr[u]).bit_count() == 1
        for u in rest
    )
    if not rest or petals:
        return Case2Context(u1, u2, a1, a2, frozenset(rest), True)
    if dropped:
        return Case2Context(u1, u2, a1, a2, frozenset(rest), False)
    raise InternalInvariantViolation(f"I₀ neighborhoods around ({u1}, {u2}) match neither sunflower case")


def select_rule(state: SearchState) -> RuleDecision:
    """
    Return the first applicable rule for this node.

    Raises:
        InternalInvariantViolation: If a guarantee the rules rely on fails
    """
    g, p, k = state.graph, state.partition, state.budget

    if k < 0 or (k <= 0 and find_induced_p4(g, p) is not None):
        return RuleDecision(RuleId.R1, answer=False)
    if g.is_empty():
        return RuleDecision(RuleId.R2, answer=True)
    free = p4_free_vertices(g, p)
    if free:
        return RuleDecision(RuleId.R3, reduction=free)

    # Every live vertex lies on an induced P4 from here on.
    view = _IndependentView(g, p)

    decision = _degree_one_rules(view) or _two_two_rule(view)
    if decision is not None:
        return decision

    _check_small_differences(view)

    i0 = sorted(min_degree_set(g, p))
    classes = _twin_classes(view, i0)
    if len(classes) == 1:
        return _case_one(view, i0)
    return _case_two(view, i0, classes)


def _degree_one_rules(view: _IndependentView) -> Optional[RuleDecision]:
    nbr = view.nbr
    degree_one = [v for v in view.vertices if view.degree(v) == 1]

    for u, v in combinations(degree_one, 2):
        if nbr[u] != nbr[v]:
            return RuleDecision(RuleId.B1, branches=(set_of(nbr[u]), set_of(nbr[v])))

    if degree_one:
        u = degree_one[0]
        v = next((w for w in view.vertices if nbr[u] & ~nbr[w]), None)
        if v is None:
            raise InternalInvariantViolation(f"No I vertex misses the neighbor of degree-1 vertex {u}")
        if view.degree(v) < 2:
            raise InternalInvariantViolation(f"B2 partner {v} of {u} has degree {view.degree(v)}")
        return RuleDecision(RuleId.B2, branches=(frozenset({v}), set_of(nbr[u]), set_of(nbr[v])))
    return None


def _two_two_rule(view: _IndependentView) -> Optional[RuleDecision]:
    nbr = view.nbr
    for u, v in view.pairs():
        only_u = nbr[u] & ~nbr[v]
        only_v = nbr[v] & ~nbr[u]
        if only_u.bit_count() >= 2 and only_v.bit_count() >= 2:
            return RuleDecision(
                RuleId.B3,
                branches=(frozenset({u}), frozenset({v}), set_of(only_u), set_of(only_v)),
            )
    return None


def _check_small_differences(view: _IndependentView) -> None:
    """With B3 inapplicable, |N(u)| <= |N(v)| implies |N(u) \\ N(v)| <= 1."""
    nbr = view.nbr
    for u, v in view.pairs():
        if view.degree(u) > view.degree(v):
            u, v = v, u
        if (nbr[u] & ~nbr[v]).bit_count() > 1:
            raise InternalInvariantViolation(f"|N({u}) \\ N({v})| > 1 although B3 does not apply")


def _twin_classes(view: _IndependentView, i0: List[int]) -> List[List[int]]:
    """Twin classes inside I₀, ordered by their lowest vertex."""
    by_mask: Dict[int, List[int]] = {}
    for v in i0:
        by_mask.setdefault(view.nbr[v], []).append(v)
    return sorted(by_mask.values(), key=lambda members: members[0])


def _first_missing(view: _IndependentView, candidates: Sequence[int], vertex: int) -> Optional[int]:
    return next((w for w in candidates if not view.nbr[w] >> vertex & 1), None)


def _case_one(view: _IndependentView, i0: List[int]) -> RuleDecision:
    nbr = view.nbr
    u = i0[0]
    if view.degree(u) < 2:
        raise InternalInvariantViolation(f"I₀ vertex {u} has degree {view.degree(u)} after B2")
    a1, a2 = list(iter_bits(nbr[u]))[:2]
    v1 = _first_missing(view, view.vertices, a1)
    v2 = _first_missing(view, view.vertices, a2)
    if v1 is None or v2 is None:
        raise InternalInvariantViolation(f"Neighbor of {u} is adjacent to every I vertex after R3")
    if v1 == v2 or not nbr[v1] >> a2 & 1 or not nbr[v2] >> a1 & 1:
        raise InternalInvariantViolation(f"Case 1 partners v1={v1}, v2={v2} for a1={a1}, a2={a2} are inconsistent")

    common = set_of(nbr[v1] & nbr[v2] & ~nbr[u])
    if len(common) < 2:
        raise InternalInvariantViolation(f"|(N({v1}) ∩ N({v2})) \\ N({u})| = {len(common)} < 2")

    others = [w for w in view.vertices if w not in (v1, v2)]
    w = next((x for x in others if not (nbr[x] >> a1 & 1 and nbr[x] >> a2 & 1)), None)
    if w is None:
        return RuleDecision(RuleId.B4, branches=(frozenset({u}), common, frozenset({v1, v2})))

    if nbr[w] >> a1 & 1:
        a1, a2, v1, v2 = a2, a1, v2, v1
    extra = set_of(nbr[w] & ~nbr[u])
    if len(extra) < 2:
        raise InternalInvariantViolation(f"|N({w}) \\ N({u})| = {len(extra)} < 2")
    combined = compose_families(
        [{a1}, {v1} | extra, {v1, w}],
        [{a2}, {v2}],
    )
    return RuleDecision(RuleId.B5, branches=(frozenset({u}), common, *combined))


def _case_two(view: _IndependentView, i0: List[int], classes: List[List[int]]) -> RuleDecision:
    g, p, nbr = view.graph, view.partition, view.nbr
    in_i0 = set(i0)
    outside = [w for w in view.vertices if w not in in_i0]
    representatives = [members[0] for members in classes]
    size_of = {members[0]: len(members) for members in classes}

    for r1, r2 in combinations(representatives, 2):
        ctx = classify_sunflower(g, p, r1, r2)
        if all(nbr[w] >> ctx.a1 & 1 and nbr[w] >> ctx.a2 & 1 for w in outside):
            if size_of[r1] > size_of[r2]:
                ctx = ctx.swapped()
            return RuleDecision(
                RuleId.B6,
                branches=(twin_class(g, p, ctx.u1), frozenset({ctx.a1})),
            )

    first = classify_sunflower(g, p, representatives[0], representatives[1])
    if first.sunflower:
        ctx = first
        a = lowest_bit(nbr[ctx.u1] & nbr[ctx.u2])
        v = _first_missing(view, view.vertices, a)
        if v is None or v in in_i0:
            raise InternalInvariantViolation(f"Sunflower core vertex {a} has no non-neighbor outside I₀")
    else:
        union = 0
        for u in i0:
            union |= nbr[u]
        v = next((x for x in outside if union & ~nbr[x]), None)
        if v is None:
            raise InternalInvariantViolation("Every vertex outside I₀ sees all I₀ neighborhoods although B6 does not apply")
        a = lowest_bit(union & ~nbr[v])
        pair = next(
            ((r1, r2) for r1, r2 in combinations(representatives, 2) if nbr[r1] >> a & 1 and nbr[r2] >> a & 1),
            None,
        )
        if pair is None:
            raise InternalInvariantViolation(f"No non-twin pair of I₀ shares the vertex {a}")
        ctx = classify_sunflower(g, p, *pair)

    w = next((x for x in outside if not (nbr[x] >> ctx.a1 & 1 and nbr[x] >> ctx.a2 & 1)), None)
    if w is None:
        raise InternalInvariantViolation(f"B6 does not apply to ({ctx.u1}, {ctx.u2}) yet no vertex misses a1 or a2")
    if nbr[w] >> ctx.a1 & 1:
        ctx = ctx.swapped()
    if v == w or a in (ctx.a1, ctx.a2):
        raise InternalInvariantViolation(f"B7 choice is degenerate: v={v}, w={w}, a={a}, a1={ctx.a1}, a2={ctx.a2}")

    common = set_of(nbr[v] & nbr[w] & ~nbr[ctx.u1])
    if len(common) < 2:
        raise InternalInvariantViolation(f"|(N({v}) ∩ N({w})) \\ N({ctx.u1})| = {len(common)} < 2")
    combined = compose_families(
        [{a}, {v}],
        [{ctx.a1}, {w, ctx.a2}, {w, ctx.u2}],
    )
    return RuleDecision(RuleId.B7, branches=(frozenset({ctx.u1}), common, *combined))


def format_trace_line(depth: int, decision: RuleDecision, budget: int) -> str:
    sizes = ",".join(str(size) for size in decision.sizes)
    return f"node {depth} {decision.rule.value} k={budget} sizes={sizes}"


class StvdSolver:
    """Branching solver for Split to Threshold Vertex Deletion."""

    def __init__(
        self,
        verbose: bool = False,
        on_node: Optional[Callable[[str], None]] = None,
        check_vectors: bool = True,
    ):
        """
        Initialize solver.

        Args:
            verbose: Print progress messages
            on_node: Optional callback invoked with one trace line per node
            check_vectors: Check every branching decision against its
                rule's minimum vector
        """
        self.verbose = verbose
        self.on_node = on_node
        self.check_vectors = check_vectors
        self.trace: List[str] = []

    def solve(self, g: Graph, p: SplitPartition, k: int) -> Optional[FrozenSet[int]]:
        """
        Decide whether at most k deletions turn g into a threshold graph.

        Args:
            g: Split graph
            p: Valid split partition of g
            k: Deletion budget

        Returns:
            Deletion set S with |S| <= k, or None

        Raises:
            InternalInvariantViolation: If a rule guarantee fails
        """
        self.trace = []
        print_progress(f"STVD: {g.vertex_count()} vertices, k={k}", self.verbose)
        found = self._search(SearchState(g, p, k), 0)

        leaves = self.stats().leaves
        if found is None:
            print_progress(f"STVD: no solution ({len(self.trace)} nodes, {leaves} leaves)", self.verbose)
        else:
            print_progress(
                f"STVD: {len(found)} deletions ({len(self.trace)} nodes, {leaves} leaves)",
                self.verbose,
            )
        return found

    def stats(self) -> RecursionStats:
        return stats_from_trace(self.trace)

    def _emit(self, depth: int, decision: RuleDecision, budget: int) -> None:
        line = format_trace_line(depth, decision, budget)
        self.trace.append(line)
        if self.on_node is not None:
            self.on_node(line)

    def _check_decision(self, state: SearchState, decision: RuleDecision) -> None:
        live = state.graph.live_mask
        for branch in decision.branches:
            if not branch or any(not live >> v & 1 for v in branch):
                raise InternalInvariantViolation(f"{decision.rule.value} produced branch {sorted(branch)} outside the live graph")
        minimum = MINIMUM_BRANCH_VECTORS[decision.rule.value]
        if not dominates(decision.sizes, minimum):
            raise InternalInvariantViolation(
                f"{decision.rule.value} sizes {decision.sizes} do not dominate {minimum}"
            )

    def _search(self, state: SearchState, depth: int) -> Optional[FrozenSet[int]]:
        decision = select_rule(state)
        self._emit(depth, decision, state.budget)

        if decision.rule is RuleId.R1:
            return None
        if decision.rule is RuleId.R2:
            return state.deletions
        if decision.rule is RuleId.R3:
            return self._search(state.reduce(decision.reduction), depth + 1)

        if self.check_vectors:
            self._check_decision(state, decision)
        for branch in dict.fromkeys(decision.branches):
            if len(branch) > state.budget:
                continue
            found = self._search(state.branch(branch), depth + 1)
            if found is not None:
                return found
        return None


def solve_stvd(g: Graph, p: SplitPartition, k: int) -> Optional[FrozenSet[int]]:
    """Return S with |S| <= k and G - S P4-free, or None."""
    return StvdSolver().solve(g, p, k)
