"""Worker pool coordinator for the exact Turán search in turanlab."""
import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime
from typing import Any, Dict, List, Optional

from .config import Settings, get_settings
from .errors import InvalidArgumentError
from .families import ForbiddenFamily
from .search import BranchOutcome, BranchTask, TuranResult, merge_outcomes, plan_turan_search, run_branch

_LOGGER = logging.getLogger(__name__)


@dataclass
class SearchProgress:
    """Progress of a distributed search."""
    tasks_total: int = 0
    tasks_done: int = 0
    nodes_explored: int = 0
    best_so_far: int = 0
    started: Optional[datetime] = None
    last_update: Optional[datetime] = None

    def record(self, outcome: BranchOutcome) -> None:
        """Fold a finished subtree into the counters; the best size only ever increases."""
        self.tasks_done += 1
        self.nodes_explored += outcome.nodes
        self.best_so_far = max(self.best_so_far, outcome.best)
        self.last_update = datetime.now()

    def as_dict(self) -> Dict[str, Any]:
        return {
            "tasks_total": self.tasks_total,
            "tasks_done": self.tasks_done,
            "nodes_explored": self.nodes_explored,
            "best_so_far": self.best_so_far,
        }


class TuranSearchCoordinator:
    """Runs the subtrees of an exact search on a pool of worker processes."""

    def __init__(self, jobs: int, settings: Optional[Settings] = None):
        """Initialize the coordinator.

        Args:
            jobs: Number of worker processes
            settings: Limits passed to every worker
        """
        if jobs < 1:
            raise InvalidArgumentError(f"jobs must be positive, got {jobs}")
        self.jobs = jobs
        self.settings = settings or get_settings()
        self.progress = SearchProgress()
        self._semaphore = asyncio.Semaphore(jobs)
        self._logger = _LOGGER.getChild(f"jobs_{jobs}")

    async def async_search(
        self, n: int, family: ForbiddenFamily, collect_examples: bool = True
    ) -> TuranResult:
        """Plan the search, run every subtree in the pool and merge in submission order."""
        loop = asyncio.get_running_loop()
        plan = await loop.run_in_executor(
            None, plan_turan_search, n, family, collect_examples, self.settings
        )
        self.progress = SearchProgress(
            tasks_total=len(plan.tasks),
            nodes_explored=plan.prefix.nodes,
            best_so_far=plan.prefix.best,
            started=datetime.now(),
        )
        self._logger.debug("Dispatching %d subtrees for n=%d, %s", len(plan.tasks), n, family.label)

        with ProcessPoolExecutor(max_workers=self.jobs) as executor:
            outcomes: List[BranchOutcome] = await asyncio.gather(
                *(self._run_task(loop, executor, task) for task in plan.tasks)
            )

        result = merge_outcomes(plan, outcomes)
        self._logger.info(
            "ex(%d, %s) = %d after %d nodes on %d workers",
            n,
            family.label,
            result.max_edges,
            result.nodes_explored,
            self.jobs,
        )
        return result

    async def _run_task(
        self, loop: asyncio.AbstractEventLoop, executor: ProcessPoolExecutor, task: BranchTask
    ) -> BranchOutcome:
        async with self._semaphore:
            outcome = await loop.run_in_executor(executor, run_branch, task)
        self.progress.record(outcome)
        self._logger.debug(
            "Subtree %s done: best %d, %d nodes (%d/%d)",
            task.edges,
            outcome.best,
            outcome.nodes,
            self.progress.tasks_done,
            self.progress.tasks_total,
        )
        return outcome
