"""
Edge-list file codec and the seeded split-graph generator.

File format: a header line "n m", then m lines "u v" with 0 <= u < v < n.
Lines whose first non-blank character is '#' are comments; blank lines
are ignored.
"""

from typing import Iterator, List, Set, Tuple

from pydantic import BaseModel, Field

from solver.common import DuplicateEdge, IndexOutOfRange, ParseError
from solver.graph import Graph

MASK64 = (1 << 64) - 1


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _parse_pair(number: int, line: str) -> Tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise ParseError(number, f"expected two integers, got {line!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(number, f"expected two integers, got {line!r}")


def parse_edge_list(text: str) -> Graph:
    """
    Parse an edge-list file into a Graph.

    Args:
        text: File contents

    Returns:
        The graph on vertices 0..n-1

    Raises:
        ParseError: On a malformed header or edge line, u >= v, or an edge count mismatch
        IndexOutOfRange: If an endpoint is outside 0..n-1
        DuplicateEdge: If an edge is listed twice
    """
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise ParseError(len(text.splitlines()) + 1, "missing header 'n m'")
    header_line, header_text = header
    n, m = _parse_pair(header_line, header_text)
    if n < 0 or m < 0:
        raise ParseError(header_line, f"header values must be non-negative, got {header_text!r}")

    edges: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()
    last_line = header_line
    for number, line in lines:
        last_line = number
        u, v = _parse_pair(number, line)
        for endpoint in (u, v):
            if not 0 <= endpoint < n:
                raise IndexOutOfRange(number, f"vertex {endpoint} outside 0..{n - 1}")
        if u >= v:
            raise ParseError(number, f"expected u < v, got {u} {v}")
        if (u, v) in seen:
            raise DuplicateEdge(number, f"edge {u} {v} listed twice")
        seen.add((u, v))
        edges.append((u, v))

    if len(edges) != m:
        raise ParseError(last_line, f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def render_edge_list(g: Graph) -> str:
    """Serialize g: header, then its edges sorted ascending."""
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


class SplitMix64:
    """splitmix64 PRNG: 64-bit state, one 64-bit output per call."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


class GeneratorConfig(BaseModel):
    nc: int = Field(ge=0, description="Clique side size |C|")
    ni: int = Field(ge=0, description="Independent side size |I|")
    p: float = Field(ge=0.0, le=1.0, description="Probability of each I-C edge")
    seed: int = Field(ge=-(1 << 63), le=MASK64, description="Signed or unsigned 64-bit seed, taken mod 2^64")


def gen_split(cfg: GeneratorConfig) -> Graph:
    """
    Draw a random split graph with C = 0..nc-1 and I = nc..nc+ni-1.

    C is complete, I is independent, and each I-C pair is drawn in
    (i ascending, c ascending) order; the edge is present iff the draw
    is below p * 2^64.
    """
    rng = SplitMix64(cfg.seed)
    threshold = cfg.p * 2.0 ** 64
    edges = [(u, v) for u in range(cfg.nc) for v in range(u + 1, cfg.nc)]
    for i in range(cfg.nc, cfg.nc + cfg.ni):
        for c in range(cfg.nc):
            if rng.next() < threshold:
                edges.append((c, i))
    return Graph(cfg.nc + cfg.ni, edges)
