"""
Graph representation and split-graph machinery.

Vertices are the integers 0..n-1. Adjacency rows are Python ints used as
bitsets; deletion is logical (a live mask), so vertex labels never change
and witnesses always refer to the input labels.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from solver.common import EmptyIndependentSide, NotSplit


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    """Index of the lowest set bit (mask must be nonzero)."""
    return (mask & -mask).bit_length() - 1


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def set_of(mask: int) -> FrozenSet[int]:
    return frozenset(iter_bits(mask))


class Graph:
    """
    Undirected simple graph with bitset adjacency rows.

    Instances are value-like: the adjacency rows are fixed at construction
    and ``without()`` returns a new view with more vertices deleted.
    """

    __slots__ = ("n", "_adj", "_live")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        """
        Build a graph on vertices 0..n-1.

        Args:
            n: Vertex count
            edges: Pairs (u, v); repeated pairs collapse into one edge

        Raises:
            ValueError: On negative n, self-loops, or out-of-range endpoints
        """
        if n < 0:
            raise ValueError(f"Vertex count must be non-negative, got {n}")
        self.n = n
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"Edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"Self-loop on vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self._adj: Tuple[int, ...] = tuple(rows)
        self._live: int = (1 << n) - 1

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

    # ── Views ─────────────────────────────────────────────────────────────

    @property
    def live_mask(self) -> int:
        return self._live

    def vertices(self) -> List[int]:
        """Live vertices, ascending."""
        return list(iter_bits(self._live))

    def vertex_count(self) -> int:
        return self._live.bit_count()

    def is_empty(self) -> bool:
        return self._live == 0

    def is_live(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self._live >> v & 1)

    def neighbor_mask(self, v: int) -> int:
        return self._adj[v] & self._live

    def neighbors(self, v: int) -> FrozenSet[int]:
        return set_of(self.neighbor_mask(v))

    def degree(self, v: int) -> int:
        return self.neighbor_mask(v).bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return self.is_live(u) and self.is_live(v) and bool(self._adj[u] >> v & 1)

    def edges(self) -> List[Tuple[int, int]]:
        """Live edges (u, v) with u < v, sorted."""
        result = []
        for u in iter_bits(self._live):
            for v in iter_bits(self._adj[u] & self._live & ~((2 << u) - 1)):
                result.append((u, v))
        return result

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in iter_bits(self._live)) // 2

    def induced_edge_count(self, vertices: Iterable[int]) -> int:
        mask = mask_of(vertices) & self._live
        return sum((self._adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    def without(self, vertices: Iterable[int]) -> "Graph":
        """Return G - S as a new graph view; labels are preserved."""
        view = Graph.__new__(Graph)
        view.n = self.n
        view._adj = self._adj
        view._live = self._live & ~mask_of(vertices)
        return view

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._live == other._live and self.edges() == other.edges()

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, live={self.vertex_count()}, edges={self.edges()})"


@dataclass(frozen=True)
class SplitPartition:
    """Clique side C and independent side I, stored as vertex bitsets."""

    clique_mask: int
    independent_mask: int

    @classmethod
    def of(cls, clique: Iterable[int], independent: Iterable[int]) -> "SplitPartition":
        return cls(mask_of(clique), mask_of(independent))

    @property
    def clique(self) -> FrozenSet[int]:
        return set_of(self.clique_mask)

    @property
    def independent(self) -> FrozenSet[int]:
        return set_of(self.independent_mask)

    def live_clique(self, g: Graph) -> int:
        return self.clique_mask & g.live_mask

    def live_independent(self, g: Graph) -> int:
        return self.independent_mask & g.live_mask


class P4Witness(NamedTuple):
    """Induced path u-a-b-v with u, v in I and a, b in C."""
    u: int
    a: int
    b: int
    v: int


class DiamondWitness(NamedTuple):
    """Spine x-y adjacent to everything; p and q are the non-adjacent pair."""
    x: int
    y: int
    p: int
    q: int


# ── Partition ─────────────────────────────────────────────────────────────

def is_valid_partition(g: Graph, p: SplitPartition) -> bool:
    """Check C ∪ I = live vertices, C ∩ I = ∅, C a clique, I independent."""
    clique = p.live_clique(g)
    independent = p.live_independent(g)
    if clique & independent or (clique | independent) != g.live_mask:
        return False
    if (p.clique_mask | p.independent_mask) & ~((1 << g.n) - 1):
        return False
    for v in iter_bits(clique):
        if clique & ~g.neighbor_mask(v) != 1 << v:
            return False
    return all(g.neighbor_mask(v) & independent == 0 for v in iter_bits(independent))


def split_partition(g: Graph) -> SplitPartition:
    """
    Compute the canonical split partition from the degree sequence.

    Vertices are sorted by (degree desc, index asc); the first m of them
    form C where m = max{i : d_i >= i - 1}, and the graph is split iff
    sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i.

    Raises:
        NotSplit: If no partition exists
    """
    order = sorted(g.vertices(), key=lambda v: (-g.degree(v), v))
    degrees = [g.degree(v) for v in order]

    m = 0
    for i, d in enumerate(degrees, start=1):
        if d >= i - 1:
            m = i

    if sum(degrees[:m]) != m * (m - 1) + sum(degrees[m:]):
        raise NotSplit(f"Graph with {len(order)} vertices is not a split graph")

    partition = SplitPartition.of(order[:m], order[m:])
    if not is_valid_partition(g, partition):
        raise NotSplit("Degree-sequence partition failed validation")
    return partition


# ── Forbidden subgraphs ───────────────────────────────────────────────────

def find_induced_p4(g: Graph, p: SplitPartition) -> Optional[P4Witness]:
    """Return the first induced P4 u-a-b-v in (u, v, a, b) scan order."""
    independent = list(iter_bits(p.live_independent(g)))
    for u in independent:
        nu = g.neighbor_mask(u)
        for v in independent:
            if v == u:
                continue
            nv = g.neighbor_mask(v)
            only_u = nu & ~nv
            only_v = nv & ~nu
            if only_u and only_v:
                return P4Witness(u, lowest_bit(only_u), lowest_bit(only_v), v)
    return None


def p4_free_vertices(g: Graph, p: SplitPartition) -> FrozenSet[int]:
    """Live vertices lying on no induced P4."""
    covered = 0
    independent = list(iter_bits(p.live_independent(g)))
    for i, u in enumerate(independent):
        nu = g.neighbor_mask(u)
        for v in independent[i + 1:]:
            nv = g.neighbor_mask(v)
            only_u = nu & ~nv
            only_v = nv & ~nu
            # every a in only_u and b in only_v gives the path u-a-b-v
            if only_u and only_v:
                covered |= only_u | only_v | (1 << u) | (1 << v)
    return set_of(g.live_mask & ~covered)


def find_induced_diamond(g: Graph) -> Optional[DiamondWitness]:
    """Return the first diamond found by scanning spines (x, y) ascending."""
    for x, y in g.edges():
        common = g.neighbor_mask(x) & g.neighbor_mask(y)
        for p_vertex in iter_bits(common):
            apart = common & ~g.neighbor_mask(p_vertex) & ~((2 << p_vertex) - 1)
            if apart:
                return DiamondWitness(x, y, p_vertex, lowest_bit(apart))
    return None


# ── Recognition ───────────────────────────────────────────────────────────

def is_block_split(g: Graph, p: SplitPartition) -> bool:
    """At most one I vertex of degree >= 2, and it sees all of C."""
    clique = p.live_clique(g)
    high = [v for v in iter_bits(p.live_independent(g)) if g.degree(v) >= 2]
    if len(high) > 1:
        return False
    return all(g.neighbor_mask(v) & clique == clique for v in high)


def is_threshold_split(g: Graph, p: SplitPartition) -> bool:
    return find_induced_p4(g, p) is None


# ── Degree and twin machinery ─────────────────────────────────────────────

def min_degree_set(g: Graph, p: SplitPartition) -> FrozenSet[int]:
    """
    I₀: the independent-side vertices of minimum degree.

    Raises:
        EmptyIndependentSide: If I has no live vertex
    """
    independent = list(iter_bits(p.live_independent(g)))
    if not independent:
        raise EmptyIndependentSide("Minimum-degree set of an empty independent side")
    lowest = min(g.degree(v) for v in independent)
    return frozenset(v for v in independent if g.degree(v) == lowest)


def twin_class(g: Graph, p: SplitPartition, v: int) -> FrozenSet[int]:
    """All I vertices whose neighborhood equals N(v), v included."""
    target = g.neighbor_mask(v)
    return frozenset(u for u in iter_bits(p.live_independent(g)) if g.neighbor_mask(u) == target)
