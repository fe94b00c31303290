#!/usr/bin/env python3
"""
Split-deletion command-line tool.

Solve Split to Block / Split to Threshold Vertex Deletion on edge-list
files, recognize graph classes, cross-check against the brute-force
oracle, generate seeded split graphs, and print branching-number tables.
"""

import argparse
import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, FrozenSet, Iterable, List, Optional

from pydantic import ValidationError

from cli.edge_list import GeneratorConfig, gen_split, parse_edge_list, render_edge_list
from solver.analysis import (
    BranchingVector,
    RecursionStats,
    branching_number,
    format_vector_table,
    rule_vector_table,
)
from solver.common import (
    InternalInvariantViolation,
    NotSplit,
    ParseError,
    SplitDeletionError,
    TooLarge,
    print_progress,
)
from solver.graph import (
    Graph,
    SplitPartition,
    find_induced_diamond,
    find_induced_p4,
    is_block_split,
    is_threshold_split,
    split_partition,
)
from solver.oracle import TargetProperty, min_deletion
from solver.sbvd import SbvdSolver
from solver.stvd import StvdSolver

# Exit codes
EXIT_SUCCESS = 0
EXIT_USAGE = 2
EXIT_NOT_SPLIT = 3
EXIT_INTERNAL = 4

VERIFY_ORACLE_MAX_VERTICES = 12


class Problem(str, Enum):
    SBVD = "sbvd"
    STVD = "stvd"


TARGETS = {
    Problem.SBVD: TargetProperty.BLOCK_SPLIT,
    Problem.STVD: TargetProperty.THRESHOLD_SPLIT,
}


@dataclass
class SolveOutcome:
    problem: Problem
    k: int
    partition: SplitPartition
    witness: Optional[FrozenSet[int]]
    stats: Optional[RecursionStats] = None

    @property
    def decision(self) -> bool:
        return self.witness is not None


def read_graph(path: str) -> Graph:
    """Read an edge-list file; "-" reads stdin."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_edge_list(text)


def run_solver(
    g: Graph,
    problem: Problem,
    k: int,
    verbose: bool = False,
    on_node: Optional[Callable[[str], None]] = None,
) -> SolveOutcome:
    """
    Compute the split partition and run the solver for ``problem``.

    Args:
        g: Input graph
        problem: sbvd or stvd
        k: Deletion budget
        verbose: Print progress messages
        on_node: STVD trace callback, one line per recursion node

    Returns:
        The outcome, with recursion statistics for stvd

    Raises:
        NotSplit: If g is not a split graph
        InternalInvariantViolation: If a solver guarantee fails
    """
    partition = split_partition(g)
    print_progress(
        f"Split partition: |C|={len(partition.clique)}, |I|={len(partition.independent)}",
        verbose,
    )

    if Problem(problem) is Problem.SBVD:
        result = SbvdSolver(verbose=verbose).solve(g, partition, k)
        return SolveOutcome(Problem.SBVD, k, partition, result.witness if result else None)

    solver = StvdSolver(verbose=verbose, on_node=on_node)
    witness = solver.solve(g, partition, k)
    return SolveOutcome(Problem.STVD, k, partition, witness, solver.stats())


def verify_solution(g: Graph, outcome: SolveOutcome, verbose: bool = False) -> bool:
    """
    Re-check a solver outcome.

    The witness is checked directly; on graphs with at most
    VERIFY_ORACLE_MAX_VERTICES vertices the decision is also compared
    with the brute-force oracle.

    Returns:
        True if the oracle cross-check ran, False if only the witness was checked

    Raises:
        InternalInvariantViolation: On any discrepancy
    """
    if outcome.witness is not None:
        rest = g.without(outcome.witness)
        holds = (
            is_block_split(rest, outcome.partition)
            if outcome.problem is Problem.SBVD
            else is_threshold_split(rest, outcome.partition)
        )
        if len(outcome.witness) > outcome.k or not holds:
            raise InternalInvariantViolation(f"verification failed: witness {sorted(outcome.witness)} is invalid")

    if g.vertex_count() > VERIFY_ORACLE_MAX_VERTICES:
        print_progress("Verify: witness checked, graph too large for oracle", verbose)
        return False

    expected = min_deletion(g, TARGETS[outcome.problem], outcome.k)
    if (expected is not None) != outcome.decision:
        raise InternalInvariantViolation(
            f"verification failed: solver answered {'YES' if outcome.decision else 'NO'}, "
            f"oracle minimum is {expected.size if expected else f'> {outcome.k}'}"
        )
    print_progress("Verify: oracle agrees", verbose)
    return True


def format_solution(witness: Optional[Iterable[int]]) -> str:
    if witness is None:
        return "NO\n"
    ordered = sorted(witness)
    return f"YES\n{len(ordered)}\n{' '.join(str(v) for v in ordered)}\n"


def _vertex_list(vertices: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"


def format_recognition(g: Graph) -> List[str]:
    """
    One status line each for split, threshold and block.

    Raises:
        NotSplit: After the caller has seen the "split: no" line
    """
    partition = split_partition(g)
    lines = [f"split: yes C={_vertex_list(partition.clique)} I={_vertex_list(partition.independent)}"]

    p4 = find_induced_p4(g, partition)
    lines.append("threshold: yes" if p4 is None else f"threshold: no P4={p4.u}-{p4.a}-{p4.b}-{p4.v}")

    diamond = find_induced_diamond(g)
    if diamond is None:
        lines.append("block: yes")
    else:
        lines.append(f"block: no diamond={diamond.x},{diamond.y},{diamond.p},{diamond.q}")
    return lines


# ── Subcommands ───────────────────────────────────────────────────────────

def cmd_solve(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    if args.trace:
        with open(args.trace, "w") as trace_file:
            outcome = run_solver(
                g, args.problem, args.k, args.verbose,
                on_node=lambda line: trace_file.write(line + "\n"),
            )
    else:
        outcome = run_solver(g, args.problem, args.k, args.verbose)

    if args.verify:
        verify_solution(g, outcome, args.verbose)

    sys.stdout.write(format_solution(outcome.witness))
    return EXIT_SUCCESS


def cmd_recognize(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    try:
        lines = format_recognition(g)
    except NotSplit:
        print("split: no")
        raise
    for line in lines:
        print(line)
    return EXIT_SUCCESS


def cmd_oracle(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    split_partition(g)
    result = min_deletion(g, TARGETS[args.problem], args.kmax)
    sys.stdout.write(format_solution(result.witness if result else None))
    return EXIT_SUCCESS


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = GeneratorConfig(nc=args.nc, ni=args.ni, p=args.p, seed=args.seed)
    text = render_edge_list(gen_split(cfg))
    if args.out:
        Path(args.out).write_text(text)
        print_progress(f"Wrote {cfg.nc + cfg.ni} vertices to {args.out}", args.verbose)
    else:
        sys.stdout.write(text)
    return EXIT_SUCCESS


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.vector:
        vector = BranchingVector.parse(args.vector)
        sys.stdout.write(f"{branching_number(vector):.6f}\n")
    else:
        sys.stdout.write(format_vector_table(rule_vector_table()))
    return EXIT_SUCCESS


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--verbose",
        action="store_true",
        help="Print progress messages to stderr"
    )

    parser = argparse.ArgumentParser(
        description="Exact solvers for split-to-block and split-to-threshold vertex deletion",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python -m cli.split_deletion solve --problem stvd --k 1 path.txt
  python -m cli.split_deletion solve --problem sbvd --k 2 --verify graph.txt
  python -m cli.split_deletion gen --nc 4 --ni 5 --p 0.5 --seed 7 --out g.txt
  python -m cli.split_deletion analyze --vector 1,1,2,2
        """
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve = subparsers.add_parser("solve", parents=[common], help="Decide a deletion instance")
    solve.add_argument("--problem", required=True, choices=[p.value for p in Problem])
    solve.add_argument("--k", required=True, type=_non_negative_int, help="Deletion budget")
    solve.add_argument("--trace", help="Write the stvd recursion trace to this file")
    solve.add_argument(
        "--verify",
        action="store_true",
        help=f"Re-check the witness; cross-check with the oracle when n <= {VERIFY_ORACLE_MAX_VERTICES}"
    )
    solve.add_argument("file", help="Edge-list file, or - for stdin")
    solve.set_defaults(handler=cmd_solve)

    recognize = subparsers.add_parser("recognize", parents=[common], help="Report split/threshold/block status")
    recognize.add_argument("file", help="Edge-list file, or - for stdin")
    recognize.set_defaults(handler=cmd_recognize)

    oracle = subparsers.add_parser("oracle", parents=[common], help="Brute-force minimum deletion")
    oracle.add_argument("--problem", required=True, choices=[p.value for p in Problem])
    oracle.add_argument("--kmax", required=True, type=_non_negative_int)
    oracle.add_argument("file", help="Edge-list file, or - for stdin")
    oracle.set_defaults(handler=cmd_oracle)

    gen = subparsers.add_parser("gen", parents=[common], help="Generate a seeded random split graph")
    gen.add_argument("--nc", required=True, type=int, help="Clique side size")
    gen.add_argument("--ni", required=True, type=int, help="Independent side size")
    gen.add_argument("--p", required=True, type=float, help="I-C edge probability")
    gen.add_argument("--seed", required=True, type=int, help="64-bit seed; negative values wrap mod 2^64")
    gen.add_argument("--out", help="Output file (default: stdout)")
    gen.set_defaults(handler=cmd_gen)

    analyze = subparsers.add_parser("analyze", parents=[common], help="Branching-number table")
    analyze.add_argument("--vector", help="Comma-separated branching vector, e.g. 1,1,2,2")
    analyze.set_defaults(handler=cmd_analyze)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point.

    Returns:
        Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if getattr(args, "problem", None):
        args.problem = Problem(args.problem)

    try:
        return args.handler(args)

    except NotSplit as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_NOT_SPLIT

    except (ParseError, TooLarge, ValidationError, ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    except SplitDeletionError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INTERNAL

    except KeyboardInterrupt:
        print("\nOperation cancelled by user", file=sys.stderr)
        return EXIT_INTERNAL

    except Exception as e:
        print(f"Unexpected error: {e}", file=sys.stderr)
        if args.verbose:
            import traceback
            traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
