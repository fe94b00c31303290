"""
Split to Block Vertex Deletion by guessing the surviving high-degree
independent vertex and reducing to 3-Hitting-Set.

A split graph is a block graph iff at most one vertex of I has degree
>= 2 and that vertex sees all of C. For each guess v* the solver deletes
C \\ N(v*), then hits every triple {v, a, b} with v in I \\ {v*} and a, b
two neighbors of v.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterator, List, Optional

from solver.common import InternalInvariantViolation, print_progress
from solver.graph import Graph, SplitPartition, is_block_split, iter_bits, set_of
from solver.hitting_set import HittingSetInstance, HittingSetSolver, normalize


@dataclass(frozen=True)
class SbvdGuess:
    """The guessed vertex v* (None for "no such vertex") and its pruning."""

    v_star: Optional[int]
    pruned_clique: FrozenSet[int]
    residual_budget: int


@dataclass(frozen=True)
class SbvdResult:
    witness: FrozenSet[int]
    guess: SbvdGuess


def enumerate_guesses(g: Graph, p: SplitPartition, k: int) -> Iterator[SbvdGuess]:
    """Yield the "no v*" guess, then one guess per I vertex ascending."""
    yield SbvdGuess(None, frozenset(), k)
    clique = p.live_clique(g)
    for v in iter_bits(p.live_independent(g)):
        pruned = set_of(clique & ~g.neighbor_mask(v))
        yield SbvdGuess(v, pruned, k - len(pruned))


def build_hs_instance(g: Graph, p: SplitPartition, guess: SbvdGuess) -> HittingSetInstance:
    """
    Build the 3-Hitting-Set instance for one guess.

    Args:
        g: Graph with guess.pruned_clique already removed
        p: Split partition of the input graph
        guess: Guess with non-negative residual budget

    Returns:
        Normalized instance with budget guess.residual_budget
    """
    triples: List[tuple] = []
    for v in iter_bits(p.live_independent(g)):
        if v == guess.v_star:
            continue
        neighbors = list(iter_bits(g.neighbor_mask(v) & p.live_clique(g)))
        for a, b in combinations(neighbors, 2):
            triples.append((v, a, b))
    return normalize(HittingSetInstance.build(triples, guess.residual_budget))


class SbvdSolver:
    """Guess-and-reduce solver for Split to Block Vertex Deletion."""

    def __init__(self, verbose: bool = False, max_workers: Optional[int] = None):
        """
        Initialize solver.

        Args:
            verbose: Print progress messages
            max_workers: Evaluate guesses on a thread pool of this size;
                None runs them sequentially. The returned witness is the
                same either way.
        """
        self.verbose = verbose
        self.max_workers = max_workers

    def _try_guess(self, g: Graph, p: SplitPartition, guess: SbvdGuess) -> Optional[SbvdResult]:
        if guess.residual_budget < 0:
            return None
        reduced = g.without(guess.pruned_clique)
        inst = build_hs_instance(reduced, p, guess)
        hitting = HittingSetSolver().solve(inst)
        if hitting is None:
            return None
        return SbvdResult(guess.pruned_clique | hitting, guess)

    def solve(self, g: Graph, p: SplitPartition, k: int) -> Optional[SbvdResult]:
        """
        Decide whether at most k deletions turn g into a block graph.

        Args:
            g: Split graph
            p: Valid split partition of g
            k: Deletion budget (>= 0)

        Returns:
            Result with witness and the guess that produced it, or None

        Raises:
            InternalInvariantViolation: If a witness fails verification
        """
        guesses = list(enumerate_guesses(g, p, k))
        print_progress(f"SBVD: {len(guesses)} guesses, k={k}", self.verbose)

        result: Optional[SbvdResult] = None
        if self.max_workers:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                outcomes = list(pool.map(lambda guess: self._try_guess(g, p, guess), guesses))
            result = next((outcome for outcome in outcomes if outcome is not None), None)
        else:
            for guess in guesses:
                result = self._try_guess(g, p, guess)
                if result is not None:
                    break

        if result is None:
            print_progress("SBVD: every guess failed", self.verbose)
            return None

        print_progress(
            f"SBVD: guess v*={result.guess.v_star} succeeded with {len(result.witness)} deletions",
            self.verbose,
        )
        if len(result.witness) > k or not is_block_split(g.without(result.witness), p):
            raise InternalInvariantViolation(f"SBVD witness {sorted(result.witness)} is not valid")
        return result


def solve_sbvd(g: Graph, p: SplitPartition, k: int) -> Optional[FrozenSet[int]]:
    """Return S with |S| <= k and G - S a block graph, or None."""
    result = SbvdSolver().solve(g, p, k)
    return result.witness if result is not None else None
