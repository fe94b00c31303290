"""Shared graphs and seeded corpora for the test suites."""

from itertools import combinations_with_replacement, product
from typing import Iterator, List, Tuple

from cli.edge_list import GeneratorConfig, SplitMix64, gen_split
from solver.graph import Graph
from solver.hitting_set import HittingSetInstance

SEEDED_CORPUS_SIZE = 500
EDGE_PROBABILITIES = (0.3, 0.5, 0.7)


def path_p4() -> Graph:
    return Graph(4, [(0, 1), (1, 2), (2, 3)])


def diamond() -> Graph:
    """Vertices 0..3, every edge except 2-3."""
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def split_graph(nc: int, neighborhoods: List[List[int]]) -> Graph:
    """Clique 0..nc-1 plus one independent vertex per neighborhood, numbered from nc."""
    edges = [(u, v) for u in range(nc) for v in range(u + 1, nc)]
    for offset, neighbors in enumerate(neighborhoods):
        edges.extend((c, nc + offset) for c in neighbors)
    return Graph(nc + len(neighborhoods), edges)


def two_two_example() -> Graph:
    """C = {0,1,2,3}, I = {4,5}, N(4) = {0,1}, N(5) = {2,3}."""
    return split_graph(4, [[0, 1], [2, 3]])


def case_one_plain() -> Graph:
    """All of I₀ twins and every other vertex sees a1, a2: B4 at the root."""
    return split_graph(4, [[0, 1], [1, 2, 3], [0, 2, 3]])


def case_one_with_w() -> Graph:
    """I₀ = {6} and vertex 7 misses a neighbor of 6: B5 at the root."""
    return split_graph(5, [[0, 1, 3], [3, 4], [0, 1, 2, 3], [0, 1, 4]])


def case_two_covered() -> Graph:
    """Non-twin I₀ = {4, 5}; the only other I vertex sees both a1, a2: B6."""
    return split_graph(4, [[0, 1], [0, 2], [1, 2, 3]])


def case_two_sunflower() -> Graph:
    """Non-twin I₀ = {5, 8} forming a sunflower, B6 blocked by vertex 6: B7."""
    return split_graph(5, [[1, 2], [0, 1, 3, 4], [0, 2, 3], [1, 3], [1, 2, 3]])


def case_two_sunflower_swapped() -> Graph:
    """As above, but the first vertex missing a1 or a2 sees a1, so u1 and u2 trade places."""
    return split_graph(5, [[1, 2], [0, 1, 2, 4], [0, 2, 3], [1, 3], [1, 2, 3]])


def case_two_dropped_core() -> Graph:
    """I₀ = {4, 5, 6} pairwise non-twins, not a sunflower, B6 blocked for every pair: B7."""
    return split_graph(4, [[0, 1], [0, 2], [1, 2], [0, 1, 3], [1, 2, 3]])


def branching_examples() -> Iterator[Tuple[str, Graph]]:
    yield "case_one_plain", case_one_plain()
    yield "case_one_with_w", case_one_with_w()
    yield "case_two_covered", case_two_covered()
    yield "case_two_sunflower", case_two_sunflower()
    yield "case_two_sunflower_swapped", case_two_sunflower_swapped()
    yield "case_two_dropped_core", case_two_dropped_core()


def split_graphs_by_neighborhoods(nc: int, ni: int) -> Iterator[Tuple[str, Graph]]:
    """Every multiset of ni neighborhoods over C = 0..nc-1 (I order ignored)."""
    masks = range(1 << nc)
    for chosen in combinations_with_replacement(masks, ni):
        neighborhoods = [[c for c in range(nc) if mask >> c & 1] for mask in chosen]
        yield f"nc={nc} I={neighborhoods}", split_graph(nc, neighborhoods)


def exhaustive_split_graphs(max_c: int = 3, max_i: int = 3) -> Iterator[Tuple[str, Graph]]:
    """Every I-C adjacency pattern with |C| <= max_c and |I| <= max_i."""
    for nc in range(max_c + 1):
        for ni in range(max_i + 1):
            pairs = [(c, i) for i in range(ni) for c in range(nc)]
            for bits in product((False, True), repeat=len(pairs)):
                neighborhoods: List[List[int]] = [[] for _ in range(ni)]
                for (c, i), present in zip(pairs, bits):
                    if present:
                        neighborhoods[i].append(c)
                label = f"nc={nc} I={neighborhoods}"
                yield label, split_graph(nc, neighborhoods)


def seeded_config(seed: int) -> GeneratorConfig:
    """nc and ni each range over 0..5, so n reaches 10 (first at seed 35)."""
    return GeneratorConfig(
        nc=seed % 6,
        ni=(seed // 6) % 6,
        p=EDGE_PROBABILITIES[(seed // 36) % len(EDGE_PROBABILITIES)],
        seed=seed,
    )


def seeded_split_graphs(count: int = SEEDED_CORPUS_SIZE) -> Iterator[Tuple[int, Graph]]:
    """Generated split graphs with at most 10 vertices."""
    for seed in range(count):
        yield seed, gen_split(seeded_config(seed))


def seeded_hitting_set_instances(count: int = SEEDED_CORPUS_SIZE) -> Iterator[Tuple[int, HittingSetInstance]]:
    """Universe <= 12 elements, <= 25 sets, budget <= 5."""
    for seed in range(count):
        rng = SplitMix64(seed)
        universe = 1 + rng.next() % 12
        set_count = rng.next() % 26
        family = []
        for _ in range(set_count):
            size = 1 + rng.next() % 3
            family.append({rng.next() % universe for _ in range(size)})
        budget = rng.next() % 6
        yield seed, HittingSetInstance.build(family, budget, universe=range(universe))
