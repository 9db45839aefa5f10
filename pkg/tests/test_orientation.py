"""Tests for turanlab orientability."""
from itertools import combinations

import pytest

from turanlab.constructions import k4_minus, tight_cycle
from turanlab.core import Hypergraph3, all_triples
from turanlab.errors import InvalidArgumentError
from turanlab.orientation import (
    BottleCertificate,
    OrientationOutcome,
    bottle_to_cycles_minus_one,
    find_bottle,
    orient,
    tightly_connected_classes,
    verify_bottle,
    verify_orientation,
)
from turanlab.tournament import Tournament, cyclic_hypergraph
from turanlab.walks import pair_digraph

from .conftest import random_hypergraph


def _all_hypergraphs(n):
    triples = all_triples(n)
    for mask in range(1 << len(triples)):
        yield Hypergraph3(n, (triple for index, triple in enumerate(triples) if (mask >> index) & 1))


def _bounded_bottles(H, max_size):
    """Every bottle sequence of at most max_size vertices, by direct enumeration."""
    found = []

    def grow(sequence):
        if len(sequence) >= 6 and verify_bottle(H, sequence):
            found.append(tuple(sequence))
        if len(sequence) == max_size:
            return
        for v in range(H.vertex_count):
            if len(sequence) < 2 or H.has_edge(sequence[-2], sequence[-1], v):
                grow(sequence + [v])

    grow([])
    return found


class TestTightlyConnectedClasses:
    def test_single_edge(self, single_edge):
        assert tightly_connected_classes(single_edge) == [frozenset({(0, 1), (0, 2), (1, 2)})]

    def test_two_disjoint_edges(self):
        classes = tightly_connected_classes(Hypergraph3(6, [(0, 1, 2), (3, 4, 5)]))
        assert [len(members) for members in classes] == [3, 3]
        assert min(classes[0]) == (0, 1)

    def test_k4_minus(self, k4m):
        classes = tightly_connected_classes(k4m)
        assert len(classes) == 1
        assert len(classes[0]) == 6

    def test_edges_meeting_in_a_vertex_stay_apart(self):
        classes = tightly_connected_classes(Hypergraph3(5, [(0, 1, 2), (0, 3, 4)]))
        assert len(classes) == 2


class TestOrient:
    def test_empty_hypergraph_is_transitive(self):
        outcome = orient(Hypergraph3(5))
        assert outcome.orientable
        assert outcome.witness == Tournament.transitive(5)

    def test_single_edge(self, single_edge):
        assert orient(single_edge).witness == Tournament.cyclic_triangle()

    def test_tight_five_cycle_is_orientable(self):
        H = tight_cycle(5)
        outcome = orient(H)
        assert outcome.orientable
        assert verify_orientation(H, outcome.witness)

    def test_k4_minus_certificate(self, k4m):
        outcome = orient(k4m)
        assert not outcome.orientable
        assert outcome.certificate.sequence == (0, 1, 2, 3, 1, 0)
        assert outcome.certificate.k == 4

    def test_bottle_graph_is_not_orientable(self, bottle_graph):
        outcome = orient(bottle_graph)
        assert not outcome.orientable
        assert verify_bottle(bottle_graph, outcome.certificate.sequence)

    def test_cyclic_hypergraphs_are_orientable(self, rng):
        for _ in range(20):
            H = cyclic_hypergraph(Tournament.random(8, rng))
            outcome = orient(H)
            assert outcome.orientable
            assert verify_orientation(H, outcome.witness)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_dichotomy_exhaustive(self, n):
        for H in _all_hypergraphs(n):
            outcome = orient(H)
            bottle = find_bottle(H)
            if outcome.orientable:
                assert bottle is None
                assert verify_orientation(H, outcome.witness)
                assert H.edge_set <= cyclic_hypergraph(outcome.witness).edge_set
            else:
                assert bottle is not None
                assert verify_bottle(H, outcome.certificate.sequence)
                assert verify_bottle(H, bottle.sequence)

    def test_dichotomy_random(self, rng):
        for _ in range(40):
            H = random_hypergraph(rng.randint(6, 8), rng.choice([0.05, 0.1, 0.2]), rng)
            outcome = orient(H)
            assert outcome.orientable == (find_bottle(H) is None)

    @pytest.mark.slow
    def test_dichotomy_on_many_random_eight_vertex_graphs(self, rng):
        for _ in range(100_000):
            H = random_hypergraph(8, rng.choice([0.02, 0.05, 0.08, 0.12, 0.2]), rng)
            outcome = orient(H)
            bottle = find_bottle(H)
            if outcome.orientable:
                assert bottle is None
                assert verify_orientation(H, outcome.witness)
            else:
                assert bottle is not None
                assert verify_bottle(H, outcome.certificate.sequence)
                assert verify_bottle(H, bottle.sequence)

    def test_orientable_matches_brute_force(self, rng):
        tournaments = [Tournament.from_code(5, code) for code in range(1 << 10)]
        for _ in range(30):
            H = random_hypergraph(5, 0.3, rng)
            brute = any(verify_orientation(H, T) for T in tournaments)
            assert orient(H).orientable == brute


class TestFindBottle:
    def test_bottle_graph(self, bottle_graph):
        assert find_bottle(bottle_graph).sequence == (1, 2, 3, 4, 5, 6, 2, 1)

    def test_bounded_search_misses_long_bottles(self, bottle_graph):
        assert find_bottle(bottle_graph, max_size=7) is None
        assert find_bottle(bottle_graph, max_size=8) is not None

    def test_k4_minus(self, k4m):
        assert find_bottle(k4m).size == 6

    def test_tight_cycle(self):
        assert find_bottle(tight_cycle(5)) is None

    def test_no_short_reversals(self):
        # walks (a, b) ~> (b, a) of one, two or three arcs would need a repeated vertex
        for H in _all_hypergraphs(5):
            digraph = pair_digraph(H)
            for a, b in digraph.nodes():
                parents = digraph.bfs_parents((a, b), max_arcs=3)
                assert (b, a) not in parents

    @pytest.mark.slow
    def test_minimal_against_enumeration(self, rng):
        for _ in range(25):
            H = random_hypergraph(5, 0.4, rng)
            bottles = _bounded_bottles(H, 8)
            found = find_bottle(H)
            if bottles:
                assert found is not None
                assert found.size <= min(len(bottle) for bottle in bottles)


class TestVerifiers:
    def test_verify_bottle(self, k4m):
        assert verify_bottle(k4m, [0, 1, 2, 3, 1, 0])
        assert not verify_bottle(k4m, [0, 1, 2, 1, 0])
        assert not verify_bottle(k4m, [0, 1, 1, 3, 1, 0])
        assert not verify_bottle(k4m, [0, 1, 2, 3, 0, 1])

    def test_verify_orientation_on_empty(self, rng):
        assert verify_orientation(Hypergraph3(6), Tournament.random(6, rng))

    @pytest.mark.parametrize(
        "arcs,expected",
        [
            ([(0, 1), (1, 2), (2, 0)], True),
            ([(1, 0), (2, 1), (0, 2)], True),
            ([(2, 1), (1, 0), (2, 0)], False),
            ([(0, 1), (1, 2), (0, 2)], False),
            ([(1, 0), (1, 2), (2, 0)], False),
            ([(0, 1), (2, 1), (2, 0)], False),
        ],
    )
    def test_single_edge_against_every_triangle(self, single_edge, arcs, expected):
        T = Tournament.from_arcs(3, arcs)
        assert verify_orientation(single_edge, T) == expected
        assert verify_orientation(single_edge, T) == (len(cyclic_hypergraph(T)) == 1)

    def test_every_tournament_on_three_vertices(self, k4m):
        for code in range(1 << 3):
            T = Tournament.from_code(3, code)
            assert verify_orientation(Hypergraph3(3, [(0, 1, 2)]), T) == (len(cyclic_hypergraph(T)) == 1)
        assert not verify_orientation(k4m, Tournament.transitive(4))

    def test_k4_minus_never_orientable(self):
        H = k4_minus()
        assert not any(verify_orientation(H, Tournament.from_code(4, code)) for code in range(64))

    def test_size_mismatch(self, single_edge):
        with pytest.raises(InvalidArgumentError):
            verify_orientation(single_edge, Tournament.transitive(4))

    def test_outcome_holds_exactly_one(self):
        with pytest.raises(InvalidArgumentError):
            OrientationOutcome()

    @pytest.mark.parametrize("sequence", [(0, 1, 2, 1, 0), (0, 1, 2, 3, 0, 1)])
    def test_malformed_certificates(self, sequence):
        with pytest.raises(InvalidArgumentError):
            BottleCertificate(sequence)


def test_pair_digraph_reversal_symmetry(rng):
    for _ in range(10):
        digraph = pair_digraph(random_hypergraph(7, 0.3, rng))
        for (x, y), (_, z) in digraph.arcs():
            assert digraph.has_arc((z, y), (y, x))


def test_bottle_splits_into_two_cycles_minus_one(bottle_graph):
    longer, shorter = bottle_to_cycles_minus_one(find_bottle(bottle_graph))
    assert longer.vertices == (6, 1, 2, 3, 4, 5)
    assert shorter.vertices == (2, 3, 4, 5, 6)
    assert longer.is_valid_in(bottle_graph)
    assert shorter.is_valid_in(bottle_graph)


def test_uncovered_pairs_point_upward(single_edge):
    H = Hypergraph3(5, single_edge.edges)
    witness = orient(H).witness
    for u, v in combinations(range(5), 2):
        if v > 2:
            assert witness.has_arc(u, v)
