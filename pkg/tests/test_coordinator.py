"""Tests for the turanlab search coordinator."""
import pytest

from turanlab.coordinator import SearchProgress, TuranSearchCoordinator
from turanlab.errors import InvalidArgumentError
from turanlab.search import BranchOutcome, ForbiddenFamily, exact_turan


def test_progress_only_grows():
    progress = SearchProgress(tasks_total=2, best_so_far=3)
    progress.record(BranchOutcome(best=5, nodes=10))
    progress.record(BranchOutcome(best=4, nodes=7))
    assert progress.as_dict() == {
        "tasks_total": 2,
        "tasks_done": 2,
        "nodes_explored": 17,
        "best_so_far": 5,
    }
    assert progress.last_update is not None


def test_jobs_must_be_positive(settings):
    with pytest.raises(InvalidArgumentError):
        TuranSearchCoordinator(0, settings)


@pytest.mark.asyncio
async def test_async_search_matches_serial(settings):
    family = ForbiddenFamily.c5_minus()
    coordinator = TuranSearchCoordinator(2, settings)
    result = await coordinator.async_search(5, family)
    serial = exact_turan(5, family, jobs=1, settings=settings)

    assert result.max_edges == serial.max_edges
    assert result.extremal_examples == serial.extremal_examples
    assert result.nodes_explored == serial.nodes_explored
    assert coordinator.progress.tasks_done == coordinator.progress.tasks_total
    assert coordinator.progress.nodes_explored == serial.nodes_explored


@pytest.mark.asyncio
async def test_async_search_without_examples(settings):
    coordinator = TuranSearchCoordinator(2, settings)
    result = await coordinator.async_search(4, ForbiddenFamily.k4_minus(), collect_examples=False)
    assert result.max_edges == 2
    assert result.extremal_examples == []
