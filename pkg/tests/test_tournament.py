"""Tests for turanlab tournaments."""
from itertools import combinations

import pytest

from turanlab.constructions import tight_cycle_minus_one
from turanlab.errors import InvalidArgumentError
from turanlab.tournament import (
    Tournament,
    count_induced,
    cyclic_hypergraph,
    cyclic_triangle_count,
    d5,
    iter_cyclic_triangles,
    kendall_smith_bound,
    low_coverage_pairs,
    near_regular_set,
    pair_coverage,
    t5_family,
)
from turanlab.walks import naive_contains


def _cyclic_by_definition(T):
    return [
        (a, b, c)
        for a, b, c in combinations(range(T.vertex_count), 3)
        if (T.has_arc(a, b) and T.has_arc(b, c) and T.has_arc(c, a))
        or (T.has_arc(b, a) and T.has_arc(c, b) and T.has_arc(a, c))
    ]


class TestTournament:
    def test_code_round_trip(self):
        T = Tournament.from_code(4, 0b101101)
        assert Tournament.from_code(4, T.encode()) == T

    def test_missing_pair_is_rejected(self):
        with pytest.raises(InvalidArgumentError):
            Tournament(3, [0b010, 0b000, 0b000])

    def test_double_arc_is_rejected(self):
        with pytest.raises(InvalidArgumentError):
            Tournament(2, [0b10, 0b01])

    def test_from_arcs_rejects_self_loops(self):
        with pytest.raises(InvalidArgumentError):
            Tournament.from_arcs(2, [(1, 1)])

    def test_degrees(self):
        T = Tournament.transitive(5)
        assert [T.out_degree(v) for v in range(5)] == [4, 3, 2, 1, 0]
        assert T.in_mask(2) == 0b11
        assert T.score_sequence() == (0, 1, 2, 3, 4)

    def test_rotational_needs_odd_order(self):
        with pytest.raises(InvalidArgumentError):
            Tournament.rotational(4)

    @pytest.mark.parametrize("prime", [5, 9, 2])
    def test_quadratic_residue_needs_prime_three_mod_four(self, prime):
        with pytest.raises(InvalidArgumentError):
            Tournament.quadratic_residue(prime)

    def test_subtournament_of_transitive_is_transitive(self):
        assert Tournament.transitive(6).subtournament([1, 3, 5]) == Tournament.transitive(3)


class TestCyclicTriangles:
    def test_single_cyclic_triangle(self):
        T = Tournament.cyclic_triangle()
        assert list(iter_cyclic_triangles(T)) == [(0, 1, 2)]
        assert cyclic_triangle_count(T) == 1

    def test_transitive_has_none(self):
        assert cyclic_triangle_count(Tournament.transitive(8)) == 0

    @pytest.mark.parametrize("n", range(0, 6))
    def test_exhaustive_small_orders(self, n):
        bound = kendall_smith_bound(n)
        pair_count = n * (n - 1) // 2
        for code in range(1 << pair_count):
            T = Tournament.from_code(n, code)
            count = cyclic_triangle_count(T)
            assert count <= bound
            assert list(iter_cyclic_triangles(T)) == _cyclic_by_definition(T)

    def test_random_tournaments(self, rng):
        for _ in range(200):
            n = rng.randint(1, 32)
            T = Tournament.random(n, rng)
            assert cyclic_triangle_count(T) <= kendall_smith_bound(n)

    @pytest.mark.slow
    def test_many_random_tournaments(self, rng):
        for _ in range(10_000):
            n = rng.randint(1, 32)
            T = Tournament.random(n, rng)
            count = cyclic_triangle_count(T)
            assert count == len(list(iter_cyclic_triangles(T)))
            assert count <= kendall_smith_bound(n)

    @pytest.mark.parametrize("T,expected", [(Tournament.rotational(5), 5), (Tournament.quadratic_residue(7), 14)])
    def test_bound_is_attained(self, T, expected):
        assert kendall_smith_bound(T.vertex_count) == expected
        assert cyclic_triangle_count(T) == expected

    @pytest.mark.parametrize("n,expected", [(0, 0), (3, 1), (4, 2), (6, 8), (9, 30)])
    def test_kendall_smith_values(self, n, expected):
        assert kendall_smith_bound(n) == expected

    def test_cyclic_hypergraph_edges(self):
        H = cyclic_hypergraph(d5())
        assert H.edges == ((0, 1, 3), (0, 1, 4), (0, 2, 3))


class TestDiagnostics:
    def test_pair_coverage(self):
        T = Tournament.rotational(5)
        assert all(pair_coverage(T, u, v) in (1, 2) for u, v in combinations(range(5), 2))
        assert sum(pair_coverage(T, u, v) for u, v in combinations(range(5), 2)) == 3 * 5

    def test_pair_coverage_needs_distinct_vertices(self):
        with pytest.raises(InvalidArgumentError):
            pair_coverage(Tournament.rotational(3), 1, 1)

    def test_near_regular_set(self):
        assert near_regular_set(Tournament.rotational(5), "0.1") == frozenset(range(5))
        assert near_regular_set(Tournament.transitive(5), "0.1") == frozenset({2})

    def test_low_coverage_pairs_of_transitive(self):
        assert len(low_coverage_pairs(Tournament.transitive(4), 0)) == 6

    def test_monotone_in_eps(self, rng):
        T = Tournament.random(12, rng)
        steps = ["0.01", "0.05", "0.1", "0.2", "0.4"]
        for small, large in zip(steps, steps[1:]):
            assert near_regular_set(T, small) <= near_regular_set(T, large)
            assert low_coverage_pairs(T, small) <= low_coverage_pairs(T, large)


class TestD5AndT5:
    def test_d5_has_a_cyclic_triangle(self):
        T = d5()
        assert cyclic_triangle_count(T) == 3
        assert (0, 1, 3) in set(iter_cyclic_triangles(T))

    def test_d5_pair_outside_every_cyclic_triangle(self):
        assert pair_coverage(d5(), 3, 4) == 0

    def test_d5_cyclic_hypergraph_has_no_c5_minus(self):
        assert not naive_contains(cyclic_hypergraph(d5()), tight_cycle_minus_one(5), injective=True)

    @pytest.mark.slow
    def test_t5_members_contain_c5_minus(self):
        family = t5_family()
        assert 0 < len(family) <= 1024
        pattern = tight_cycle_minus_one(5)
        for T in family:
            assert naive_contains(cyclic_hypergraph(T), pattern, injective=True)
        assert d5() not in family

    def test_rotational_five_is_in_t5(self):
        assert Tournament.rotational(5) in t5_family()


class TestCountInduced:
    def test_self_copy(self):
        assert count_induced(d5(), d5()) == 1

    def test_transitive_host(self):
        assert count_induced(Tournament.transitive(7), d5()) == 0

    def test_single_vertex(self, rng):
        T = Tournament.random(9, rng)
        assert count_induced(T, Tournament.transitive(1)) == 9

    def test_cyclic_triangles_are_induced_copies(self, rng):
        T = Tournament.random(10, rng)
        assert count_induced(T, Tournament.cyclic_triangle()) == cyclic_triangle_count(T)

    def test_pattern_larger_than_host(self):
        assert count_induced(Tournament.transitive(3), d5()) == 0
