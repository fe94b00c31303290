"""Tests for branching numbers and recursion-trace statistics."""

import math

import pytest

from solver.analysis import (
    MINIMUM_BRANCH_VECTORS,
    BranchingVector,
    branching_number,
    dominates,
    format_vector_table,
    leaf_bound,
    rule_vector_table,
    recurrence_leaf_bound,
    stats_from_trace,
)
from solver.common import MalformedTrace
from solver.graph import split_partition
from solver.stvd import StvdSolver
from tests.graph_corpus import two_two_example

ONE_PLUS_ROOT_THREE = 1 + math.sqrt(3)


class TestBranchingNumber:
    """Test the bisection root finder."""

    def test_binary_split(self):
        """Test (1,1) gives 2."""
        assert branching_number((1, 1)) == pytest.approx(2.0, abs=1e-9)

    def test_two_two_vector(self):
        """Test (1,1,2,2) gives 1 + sqrt(3)."""
        assert branching_number((1, 1, 2, 2)) == pytest.approx(ONE_PLUS_ROOT_THREE, abs=1e-6)

    def test_one_two_two(self):
        """Test (1,2,2) gives 2."""
        assert branching_number((1, 2, 2)) == pytest.approx(2.0, abs=1e-9)

    def test_one_one_two(self):
        """Test (1,1,2) gives 1 + sqrt(2)."""
        assert branching_number((1, 1, 2)) == pytest.approx(1 + math.sqrt(2), abs=1e-6)

    def test_combined_vectors_below_two_two(self):
        """Test the eight-branch vectors stay below (1,1,2,2)."""
        assert branching_number(MINIMUM_BRANCH_VECTORS["B5"]) < 2.732052
        assert branching_number(MINIMUM_BRANCH_VECTORS["B7"]) < 2.732052

    @pytest.mark.parametrize(
        "rule, expected",
        [
            # x^4 = x^3 + 3x^2 + 2x + 2
            ("B5", 2.5798415837),
            # x^3 = x^2 + 3x + 4
            ("B7", 2.6779934834),
        ],
    )
    def test_combined_vector_goldens(self, rule, expected):
        """Test the eight-branch vectors against frozen values."""
        assert branching_number(MINIMUM_BRANCH_VECTORS[rule]) == pytest.approx(expected, abs=1e-9)

    @pytest.mark.parametrize("t", [2, 3, 4])
    @pytest.mark.parametrize("c", [1, 2, 3, 4])
    def test_uniform_vector_closed_form(self, t, c):
        """Test (c,...,c) with t entries gives t^(1/c)."""
        assert branching_number((c,) * t) == pytest.approx(t ** (1 / c), abs=1e-9)

    def test_root_of_characteristic_polynomial(self):
        """Test |P(γ)| is tiny."""
        vector = (1, 2, 2, 2, 3, 3, 3, 3)
        gamma = branching_number(vector)
        assert abs(1 - sum(gamma ** -c for c in vector)) <= 1e-9

    def test_accepts_vector_object(self):
        """Test BranchingVector input."""
        assert branching_number(BranchingVector((1, 1))) == pytest.approx(2.0)


class TestBranchingVector:
    """Test vector validation and parsing."""

    @pytest.mark.parametrize("entries", [(1,), (), (0, 1), (1, -2)])
    def test_invalid(self, entries):
        """Test t >= 2 and positive entries."""
        with pytest.raises(ValueError):
            BranchingVector(entries)

    def test_parse(self):
        """Test comma-separated parsing."""
        assert BranchingVector.parse("1,1,2,2").entries == (1, 1, 2, 2)
        assert str(BranchingVector.parse("1, 2,2")) == "(1,2,2)"

    def test_parse_garbage(self):
        """Test non-integers are rejected."""
        with pytest.raises(ValueError):
            BranchingVector.parse("1,x")


class TestVectorTable:
    """Test the rule table."""

    def test_all_rules_present(self):
        """Test seven entries in rule order."""
        entries = rule_vector_table()
        assert [entry.rule for entry in entries] == ["B1", "B2", "B3", "B4", "B5", "B6", "B7"]

    def test_b1_entry(self):
        """Test the B1 row."""
        entry = rule_vector_table()[0]
        assert entry.vector.entries == (1, 1)
        assert entry.number == pytest.approx(2.0)

    def test_maximum_is_b3(self):
        """Test every rule is at most 1 + sqrt(3)."""
        entries = rule_vector_table()
        worst = max(entries, key=lambda entry: entry.number)
        assert worst.rule == "B3"
        assert all(entry.number <= ONE_PLUS_ROOT_THREE + 1e-6 for entry in entries)

    def test_format(self):
        """Test the printed table."""
        text = format_vector_table(rule_vector_table())
        lines = text.splitlines()
        assert len(lines) == 8
        assert lines[3].startswith("B3")
        assert "(1,1,2,2)" in lines[3]
        assert lines[3].endswith("2.732051")


class TestDominates:
    """Test branch-vector domination."""

    def test_reordered_vector(self):
        """Test comparison as sorted multisets."""
        assert dominates((1, 2, 2, 2, 4, 4, 3, 3), MINIMUM_BRANCH_VECTORS["B5"])

    def test_smaller_entry(self):
        """Test a too-small entry fails."""
        assert not dominates((1, 1, 1), (1, 1, 2))

    def test_length_mismatch(self):
        """Test branch counts must match."""
        assert not dominates((1, 1, 2), (1, 1))


class TestStatsFromTrace:
    """Test trace aggregation."""

    def test_single_node(self):
        """Test a lone R2 node."""
        stats = stats_from_trace(["node 0 R2 k=3 sizes="])
        assert (stats.leaves, stats.nodes, stats.max_depth) == (1, 1, 0)

    def test_binary_root(self):
        """Test B1 with two leaf children."""
        stats = stats_from_trace([
            "node 0 B1 k=1 sizes=1,1",
            "node 1 R1 k=0 sizes=",
            "node 1 R2 k=0 sizes=",
        ])
        assert stats.leaves == 2
        assert stats.nodes == 3
        assert stats.max_depth == 1
        assert stats.rule_counts == {"B1": 1, "R1": 1, "R2": 1}
        assert stats.branch_vectors == [("B1", (1, 1))]

    def test_branching_node_without_children_is_leaf(self):
        """Test a B node whose branches were all pruned."""
        stats = stats_from_trace(["node 0 B3 k=1 sizes=1,1,2,2", "node 1 R1 k=0 sizes=", "node 1 B2 k=0 sizes=1,1,2"])
        assert stats.leaves == 2

    def test_to_dict(self):
        """Test the serializable summary."""
        summary = stats_from_trace(["node 0 R2 k=0 sizes="]).to_dict()
        assert summary == {"leaves": 1, "nodes": 1, "max_depth": 0, "rule_counts": {"R2": 1}}

    @pytest.mark.parametrize(
        "lines",
        [
            ["node 0 B9 k=1 sizes=1,1"],
            ["node x R2 k=0 sizes="],
            ["node 0 R2 k=0"],
            ["node 1 R2 k=0 sizes="],
            ["node 0 B1 k=1 sizes=1,1", "node 2 R2 k=0 sizes="],
            ["node 0 R1 k=0 sizes=", "node 1 R2 k=0 sizes="],
            ["node 0 R3 k=0 sizes="],
        ],
    )
    def test_malformed(self, lines):
        """Test bad lines and impossible tree shapes."""
        with pytest.raises(MalformedTrace):
            stats_from_trace(lines)

    def test_solver_trace_within_leaf_bound(self):
        """Test a real STVD run on the 2-2 example."""
        g = two_two_example()
        solver = StvdSolver()
        for k in range(4):
            solver.solve(g, split_partition(g), k)
            assert solver.stats().leaves <= leaf_bound(k)


class TestLeafBounds:
    """Test the recurrence and empirical bounds."""

    def test_binary_recurrence(self):
        """Test (1,1) gives 2^k."""
        assert [recurrence_leaf_bound(k, [(1, 1)]) for k in range(5)] == [1, 2, 4, 8, 16]

    def test_two_two_recurrence(self):
        """Test (1,1,2,2) by hand."""
        assert [recurrence_leaf_bound(k, [(1, 1, 2, 2)]) for k in range(4)] == [1, 2, 6, 16]

    def test_overshooting_branches_pruned(self):
        """Test entries larger than k contribute nothing."""
        assert recurrence_leaf_bound(1, [(2, 2)]) == 1

    def test_rule_table_below_gamma_power(self):
        """Test T(k) <= γ^k for the full rule table."""
        gamma = max(entry.number for entry in rule_vector_table())
        vectors = list(MINIMUM_BRANCH_VECTORS.values())
        for k in range(13):
            assert recurrence_leaf_bound(k, vectors) <= gamma ** k * (1 + 1e-9)

    def test_leaf_bound(self):
        """Test 5 * 2.7321^k."""
        assert leaf_bound(0) == 5
        assert leaf_bound(2) == pytest.approx(5 * 2.7321 ** 2)
