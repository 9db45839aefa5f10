"""Tests for turanlab constructions."""
from fractions import Fraction

import pytest

from turanlab.config import load_settings
from turanlab.constructions import (
    IteratedBlowupSpec,
    complete_3graph,
    complete_tripartite,
    e_n_edge_count,
    e_n_lower_bound,
    iterated_blowup,
    max_xy_sum_bound,
    max_xy_sum_exact,
    part_sizes,
    tight_cycle,
    tight_cycle_minus_one,
)
from turanlab.errors import InvalidArgumentError, ResourceLimitError, UnsupportedSizeError
from turanlab.orientation import orient


class TestStandardGraphs:
    def test_tight_cycle(self):
        assert tight_cycle(5).edges == ((0, 1, 2), (0, 1, 4), (0, 3, 4), (1, 2, 3), (2, 3, 4))

    def test_tight_cycle_minus_one_drops_the_wrap_edge(self):
        H = tight_cycle_minus_one(5)
        assert len(H) == 4
        assert not H.has_edge(4, 0, 1)

    def test_short_cycles_are_rejected(self):
        with pytest.raises(InvalidArgumentError):
            tight_cycle(3)

    def test_complete_graphs(self):
        assert len(complete_3graph(6)) == 20
        assert len(complete_tripartite(1, 2, 3)) == 6
        assert len(complete_tripartite(0, 2, 3)) == 0


class TestIteratedBlowup:
    @pytest.mark.parametrize("n,expected", [(1, 0), (2, 0), (3, 1), (4, 2), (9, 30), (27, 819)])
    def test_edge_counts(self, n, expected, settings):
        assert e_n_edge_count(n) == expected
        assert len(iterated_blowup(n, settings)) == expected

    def test_part_sizes(self):
        assert part_sizes(9) == (3, 3, 3)
        assert part_sizes(10) == (3, 3, 4)
        assert part_sizes(11) == (3, 4, 4)

    def test_spec_tree(self):
        spec = IteratedBlowupSpec.build(9)
        assert spec.part_sizes == (3, 3, 3)
        assert spec.part_offsets == (0, 3, 6)
        assert spec.depth == 2
        assert all(sum(child.part_sizes) == child.n for child in spec.children)

    def test_parts_are_contiguous(self, settings):
        H = iterated_blowup(9, settings)
        assert H.has_edge(0, 3, 6)
        assert H.has_edge(0, 1, 2)
        assert not H.has_edge(0, 1, 3)

    def test_materialization_matches_count(self, settings):
        for n in range(1, 40):
            assert len(iterated_blowup(n, settings)) == e_n_edge_count(n)

    def test_lower_bound(self):
        for n in range(2, 10_001):
            assert e_n_edge_count(n) >= e_n_lower_bound(n)

    @pytest.mark.parametrize("n", [1, 0, -3])
    def test_lower_bound_needs_two_vertices(self, n):
        with pytest.raises(InvalidArgumentError):
            e_n_lower_bound(n)

    def test_resource_guard(self):
        with pytest.raises(ResourceLimitError):
            iterated_blowup(30, load_settings({"max_edges": 50}, environ={}))

    def test_invalid_n(self):
        with pytest.raises(InvalidArgumentError):
            e_n_edge_count(0)

    @pytest.mark.parametrize("n", [9, 17, 30])
    def test_orientable(self, n, settings):
        H = iterated_blowup(n, settings)
        assert orient(H).orientable


class TestXYSums:
    @pytest.mark.parametrize(
        "a,b,expected", [(4, 2, Fraction(2)), (5, 5, Fraction(25, 4)), (7, 7, Fraction(49, 4)), (7, 3, Fraction(19, 4))]
    )
    def test_bound(self, a, b, expected):
        assert max_xy_sum_bound(a, b) == expected

    @pytest.mark.parametrize("a,b,expected", [(4, 2, 2), (5, 5, 6), (1, 1, 0), (6, 3, 4)])
    def test_exact(self, a, b, expected, settings):
        assert max_xy_sum_exact(a, b, settings) == expected

    def test_exact_never_exceeds_bound(self, settings):
        for a in range(1, 15):
            for b in range(1, a + 1):
                assert max_xy_sum_exact(a, b, settings) <= max_xy_sum_bound(a, b)

    @pytest.mark.slow
    def test_exact_never_exceeds_bound_full_range(self, settings):
        for a in range(15, 25):
            for b in range(1, a + 1):
                assert max_xy_sum_exact(a, b, settings) <= max_xy_sum_bound(a, b)

    @pytest.mark.parametrize("a,b", [(2, 3), (3, 0), (2.5, 1)])
    def test_preconditions(self, a, b):
        with pytest.raises(InvalidArgumentError):
            max_xy_sum_bound(a, b)

    def test_size_limit(self, settings):
        with pytest.raises(UnsupportedSizeError):
            max_xy_sum_exact(25, 5, settings)
