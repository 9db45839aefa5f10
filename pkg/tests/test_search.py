"""Tests for turanlab search, cleaning and stability extraction."""
from math import comb

import pytest

from turanlab.config import load_settings
from turanlab.constructions import (
    complete_3graph,
    complete_tripartite,
    e_n_edge_count,
    iterated_blowup,
    k4_minus,
)
from turanlab.core import Hypergraph3, codegree, from_canonical_form
from turanlab.errors import InvalidArgumentError, NotOrientableError, UnsupportedSizeError
from turanlab.search import (
    CleaningStep,
    ForbiddenFamily,
    check_link_components_bipartite_complete,
    cleaning_delta,
    cleaning_threshold,
    codegree_clean,
    codegree_cleaning_steps,
    exact_turan,
    exhaustive_turan,
    local_search,
    merge_outcomes,
    min_degree_condition,
    plan_turan_search,
    run_branch,
    stability_partition,
)

from .conftest import random_hypergraph

FAMILIES = [
    ForbiddenFamily.empty(),
    ForbiddenFamily.k4_minus(),
    ForbiddenFamily.c5_minus(),
    ForbiddenFamily.fcm(11),
]


class TestExactTuran:
    @pytest.mark.parametrize("n", [0, 3, 4, 5, 6])
    def test_empty_family(self, n, settings):
        result = exact_turan(n, ForbiddenFamily.empty(), settings=settings)
        assert result.max_edges == comb(n, 3)

    def test_k4_minus_on_four_vertices(self, settings):
        result = exact_turan(4, ForbiddenFamily.k4_minus(), settings=settings)
        assert result.max_edges == 2
        assert len(result.extremal_examples) == 1
        example = from_canonical_form(result.extremal_examples[0])
        assert len(example) == 2

    @pytest.mark.parametrize("family", FAMILIES, ids=lambda family: family.label)
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_matches_exhaustive_oracle(self, n, family, settings):
        exact = exact_turan(n, family, settings=settings)
        oracle = exhaustive_turan(n, family, settings)
        assert exact.max_edges == oracle.max_edges
        assert exact.extremal_examples == oracle.extremal_examples
        assert oracle.nodes_explored == 2 ** comb(n, 3)

    def test_examples_are_free_and_extremal(self, settings):
        family = ForbiddenFamily.k4_minus()
        result = exact_turan(5, family, settings=settings)
        for form in result.extremal_examples:
            example = from_canonical_form(form)
            assert len(example) == result.max_edges
            assert family.is_free(example, settings)

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_iterated_blowup_is_a_lower_bound(self, n, settings):
        result = exact_turan(n, ForbiddenFamily.fcm(11), collect_examples=False, settings=settings)
        assert result.max_edges >= e_n_edge_count(n)
        assert result.extremal_examples == []

    @pytest.mark.slow
    def test_iterated_blowup_is_a_lower_bound_on_seven(self, settings):
        result = exact_turan(7, ForbiddenFamily.fcm(11), collect_examples=False, settings=settings)
        assert result.max_edges >= e_n_edge_count(7)

    def test_size_cap(self, settings):
        with pytest.raises(UnsupportedSizeError):
            exact_turan(9, ForbiddenFamily.k4_minus(), settings=settings)

    def test_configured_cap(self):
        with pytest.raises(UnsupportedSizeError):
            exact_turan(5, ForbiddenFamily.k4_minus(), settings=load_settings({"turan_max_n": 4}, environ={}))

    def test_plan_and_branches_compose(self, settings):
        family = ForbiddenFamily.c5_minus()
        plan = plan_turan_search(6, family, settings=settings)
        assert plan.tasks
        assert all(len(task.edges) == 3 for task in plan.tasks)
        merged = merge_outcomes(plan, [run_branch(task) for task in plan.tasks])
        direct = exact_turan(6, family, settings=settings)
        assert merged.max_edges == direct.max_edges
        assert merged.nodes_explored == direct.nodes_explored

    @pytest.mark.slow
    def test_parallel_search_is_deterministic(self, settings):
        family = ForbiddenFamily.k4_minus()
        serial = exact_turan(6, family, jobs=1, settings=settings)
        parallel = exact_turan(6, family, jobs=2, settings=settings)
        assert parallel.max_edges == serial.max_edges
        assert parallel.extremal_examples == serial.extremal_examples
        assert parallel.nodes_explored == serial.nodes_explored

    def test_exhaustive_oracle_cap(self, settings):
        with pytest.raises(UnsupportedSizeError):
            exhaustive_turan(6, ForbiddenFamily.empty(), settings)


class TestLocalSearch:
    def test_reaches_the_optimum_on_four_vertices(self, settings):
        result = local_search(Hypergraph3(4), ForbiddenFamily.k4_minus(), 60, rng_seed=1, settings=settings)
        assert len(result) == 2

    def test_is_deterministic(self, settings):
        family = ForbiddenFamily.c5_minus()
        first = local_search(Hypergraph3(6), family, 80, rng_seed=7, settings=settings)
        second = local_search(Hypergraph3(6), family, 80, rng_seed=7, settings=settings)
        assert first == second

    @pytest.mark.parametrize("rng_seed", [0, 1, 2, 3])
    def test_output_is_free_and_not_smaller(self, rng_seed, settings):
        family = ForbiddenFamily.fcm(8)
        seed = iterated_blowup(7, settings)
        result = local_search(seed, family, 40, rng_seed=rng_seed, settings=settings)
        assert len(result) >= len(seed)
        assert family.is_free(result, settings)

    def test_seed_must_be_free(self, k4m, settings):
        with pytest.raises(InvalidArgumentError):
            local_search(k4m, ForbiddenFamily.k4_minus(), 10, rng_seed=0, settings=settings)

    def test_negative_steps(self, settings):
        with pytest.raises(InvalidArgumentError):
            local_search(Hypergraph3(4), ForbiddenFamily.k4_minus(), -1, rng_seed=0, settings=settings)


class TestMinDegree:
    def test_empty_graph_fails(self):
        assert not min_degree_condition(Hypergraph3(20))

    @pytest.mark.parametrize("n", [4, 10, 20])
    def test_complete_graph_passes(self, n):
        assert min_degree_condition(complete_3graph(n))


class TestCodegreeCleaning:
    def test_small_thresholds_change_nothing(self, rng):
        H = random_hypergraph(8, 0.3, rng)
        assert codegree_clean(H, 0) == H
        assert codegree_clean(H, 1) == H

    def test_k4_minus_cascades_to_empty(self, k4m):
        assert len(codegree_clean(k4m, 2)) == 0
        assert list(codegree_cleaning_steps(k4m, 2)) == [
            CleaningStep((0, 2), ((0, 1, 2),)),
            CleaningStep((0, 1), ((0, 1, 3),)),
            CleaningStep((1, 2), ((1, 2, 3),)),
        ]

    @pytest.mark.parametrize("threshold", [2, 3, 4])
    def test_fixed_point(self, rng, threshold):
        for _ in range(10):
            H = random_hypergraph(9, 0.35, rng)
            cleaned = codegree_clean(H, threshold)
            assert codegree_clean(cleaned, threshold) == cleaned
            assert cleaned.edge_set <= H.edge_set
            for u in range(9):
                for v in range(u + 1, 9):
                    count = codegree(cleaned, u, v)[0]
                    assert count == 0 or count >= threshold
            steps = list(codegree_cleaning_steps(H, threshold))
            assert all(len(step.removed) <= threshold - 1 for step in steps)
            assert len({step.pair for step in steps}) == len(steps)
            assert sum(len(step.removed) for step in steps) == len(H) - len(cleaned)

    @pytest.mark.slow
    def test_fixed_point_on_many_small_graphs(self, rng):
        for _ in range(1000):
            n = rng.randint(4, 12)
            threshold = rng.randint(0, 4)
            H = random_hypergraph(n, rng.choice([0.1, 0.3, 0.5]), rng)
            cleaned = codegree_clean(H, threshold)
            assert codegree_clean(cleaned, threshold) == cleaned
            assert cleaned.edge_set <= H.edge_set
            for u in range(n):
                for v in range(u + 1, n):
                    count = codegree(cleaned, u, v)[0]
                    assert count == 0 or count >= threshold

    def test_tripartite_survives(self):
        H = complete_tripartite(3, 3, 3)
        assert codegree_clean(H, 3) == H

    def test_negative_threshold(self, k4m):
        with pytest.raises(InvalidArgumentError):
            codegree_clean(k4m, -1)

    def test_delta(self):
        assert cleaning_delta(47) == pytest.approx(1.0)
        assert cleaning_delta(110) == pytest.approx(0.5)
        with pytest.raises(InvalidArgumentError):
            cleaning_delta(26)

    def test_threshold(self):
        assert cleaning_threshold("0.5", 9) == 5
        assert cleaning_threshold("1/3", 9) == 3
        assert cleaning_threshold(0, 100) == 0


class TestStability:
    @pytest.mark.parametrize("k", range(1, 7))
    def test_planted_tripartition(self, k):
        H = complete_tripartite(k, k, k)
        outcome = stability_partition(H)
        assert outcome.partition.parts == (
            frozenset(range(k)),
            frozenset(range(k, 2 * k)),
            frozenset(range(2 * k, 3 * k)),
        )
        assert outcome.report.bad == frozenset()
        assert outcome.diagnostics["link_crosses_neighborhoods"]

    def test_single_edge(self, single_edge):
        outcome = stability_partition(single_edge)
        assert outcome.partition.parts == (frozenset({0}), frozenset({1}), frozenset({2}))
        assert outcome.diagnostics["bad"] == 0

    def test_iterated_blowup(self, settings):
        H = iterated_blowup(9, settings)
        outcome = stability_partition(H)
        assert outcome.partition.sizes == (3, 3, 3)
        assert outcome.partition.parts[0] == frozenset({0, 1, 2})
        assert set(outcome.partition.parts[1:]) == {frozenset({3, 4, 5}), frozenset({6, 7, 8})}
        assert outcome.report.bad == frozenset()
        assert outcome.diagnostics["v0"] == 0
        assert len(outcome.report.inside) == 3

    def test_parts_always_partition(self, rng):
        for _ in range(10):
            H = random_hypergraph(7, 0.1, rng)
            try:
                outcome = stability_partition(H)
            except NotOrientableError:
                continue
            assert set().union(*outcome.partition.parts) == set(range(7))
            assert sum(outcome.partition.sizes) == 7

    def test_not_orientable(self, k4m):
        with pytest.raises(NotOrientableError) as err:
            stability_partition(k4m)
        assert err.value.certificate.sequence == (0, 1, 2, 3, 1, 0)

    def test_link_components(self, single_edge, settings):
        assert check_link_components_bipartite_complete(single_edge, 0)
        assert check_link_components_bipartite_complete(complete_tripartite(2, 2, 2), 3)
        assert check_link_components_bipartite_complete(iterated_blowup(9, settings), 0)

    def test_link_components_needs_orientable(self):
        with pytest.raises(NotOrientableError):
            check_link_components_bipartite_complete(k4_minus(), 0)
