"""Turán search, local improvement, codegree cleaning and stability extraction for turanlab."""
import asyncio
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Set, Tuple

import networkx as nx

from .config import Settings, get_settings
from .const import (
    BRANCH_SPLIT_DEPTH,
    CLEANING_NUMERATOR,
    CLEANING_OFFSET,
    EXHAUSTIVE_ORACLE_MAX_N,
    ISOMORPH_REJECTION_DEPTH,
)
from .core import (
    CanonicalCache,
    Hypergraph3,
    Pair,
    Partition3,
    PartitionReport,
    Triple,
    all_triples,
    as_fraction,
    canonical_form,
    canonical_labeling,
    classify_partition,
    iter_bits,
    link_graph,
    symmetrize,
)
from .errors import InvalidArgumentError, NotOrientableError, UnsupportedSizeError
from .families import FamilyMatcher, ForbiddenFamily
from .orientation import orient

_LOGGER = logging.getLogger(__name__)

__all__ = [
    "BranchOutcome",
    "BranchTask",
    "CleaningStep",
    "ForbiddenFamily",
    "StabilityOutcome",
    "TuranPlan",
    "TuranResult",
    "check_link_components_bipartite_complete",
    "cleaning_delta",
    "cleaning_threshold",
    "codegree_clean",
    "codegree_cleaning_steps",
    "exact_turan",
    "exhaustive_turan",
    "local_search",
    "merge_outcomes",
    "min_degree_condition",
    "plan_turan_search",
    "run_branch",
    "stability_partition",
]


@dataclass
class TuranResult:
    """Exact Turán number with canonical forms of the extremal hypergraphs found."""
    n: int
    family: ForbiddenFamily
    max_edges: int
    extremal_examples: List[bytes] = field(default_factory=list)
    nodes_explored: int = 0


@dataclass(frozen=True)
class BranchTask:
    """A subtree of the exact search: the fixed prefix and the triples still allowed after it."""
    n: int
    family: ForbiddenFamily
    edges: Tuple[Triple, ...]
    candidates: Tuple[int, ...]
    floor: int
    collect_examples: bool
    settings: Settings


@dataclass
class BranchOutcome:
    """Best size reached inside one subtree and the canonical forms attaining it."""
    best: int
    examples: Set[bytes] = field(default_factory=set)
    nodes: int = 0


@dataclass
class TuranPlan:
    """Top of the search tree, expanded down to the split depth."""
    n: int
    family: ForbiddenFamily
    floor: int
    prefix: BranchOutcome
    tasks: List[BranchTask] = field(default_factory=list)


class _BranchSearch:
    """Depth-first edge addition over triples in lexicographic order."""

    def __init__(
        self,
        n: int,
        family: ForbiddenFamily,
        floor: int,
        collect_examples: bool,
        settings: Settings,
        split_depth: Optional[int] = None,
    ):
        self.n = n
        self.family = family
        self.triples = all_triples(n)
        self.collect_examples = collect_examples
        self.settings = settings
        self.split_depth = split_depth
        self.matcher: FamilyMatcher = family.matcher(settings)
        self.cache = CanonicalCache(max_size=settings.cache_size)
        self.outcome = BranchOutcome(best=floor)
        self.tasks: List[BranchTask] = []
        self.floor = floor

    def _pruned(self, bound: int) -> bool:
        if self.collect_examples:
            return bound < self.outcome.best
        return bound <= self.outcome.best

    def _is_canonical(self, hypergraph: Hypergraph3) -> bool:
        key = canonical_form(hypergraph, self.settings)
        labeling = self.cache.get(key)
        if labeling is None:
            labeling = canonical_labeling(hypergraph)
            self.cache.set(key, labeling)
        return hypergraph.edges == labeling

    def _record(self, hypergraph: Hypergraph3) -> None:
        size = len(hypergraph)
        if size > self.outcome.best:
            self.outcome.best = size
            self.outcome.examples = set()
        if size == self.outcome.best and self.collect_examples:
            self.outcome.examples.add(canonical_form(hypergraph, self.settings))

    def compatible(self, hypergraph: Hypergraph3, indexes) -> List[int]:
        return [i for i in indexes if not self.matcher.violated_by(hypergraph, self.triples[i])]

    def run(self, edges: Tuple[Triple, ...], candidates: List[int]) -> BranchOutcome:
        self._visit(Hypergraph3(self.n, edges), candidates)
        return self.outcome

    def _visit(self, hypergraph: Hypergraph3, candidates: List[int]) -> None:
        self.outcome.nodes += 1
        self._record(hypergraph)
        size = len(hypergraph)
        if self._pruned(size + len(candidates)):
            return

        for position, index in enumerate(candidates):
            if self._pruned(size + len(candidates) - position):
                break
            child = hypergraph.with_edges([self.triples[index]])
            if size + 1 <= ISOMORPH_REJECTION_DEPTH and not self._is_canonical(child):
                continue
            rest = self.compatible(child, candidates[position + 1:])
            if self.split_depth is not None and size + 1 == self.split_depth:
                self.tasks.append(
                    BranchTask(
                        self.n,
                        self.family,
                        child.edges,
                        tuple(rest),
                        self.floor,
                        self.collect_examples,
                        self.settings,
                    )
                )
                continue
            self._visit(child, rest)


def _greedy_floor(n: int, matcher: FamilyMatcher) -> int:
    """Size of the greedy lexicographic maximal family-free hypergraph."""
    hypergraph = Hypergraph3(n)
    for triple in all_triples(n):
        if not matcher.violated_by(hypergraph, triple):
            hypergraph = hypergraph.with_edges([triple])
    return len(hypergraph)


def _check_turan_size(n: int, settings: Settings) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise InvalidArgumentError(f"n must be a non-negative integer, got {n!r}")
    if n > settings.turan_max_n:
        raise UnsupportedSizeError(f"exact search supports n <= {settings.turan_max_n}, got {n}")


def plan_turan_search(
    n: int, family: ForbiddenFamily, collect_examples: bool = True, settings: Optional[Settings] = None
) -> TuranPlan:
    """Expand the search tree down to the split depth and return the remaining subtrees."""
    settings = settings or get_settings()
    _check_turan_size(n, settings)
    matcher = family.matcher(settings)
    floor = _greedy_floor(n, matcher)

    search = _BranchSearch(n, family, floor, collect_examples, settings, split_depth=BRANCH_SPLIT_DEPTH)
    empty = Hypergraph3(n)
    prefix = search.run((), search.compatible(empty, range(len(search.triples))))
    _LOGGER.debug(
        "Planned search for n=%d, %s: floor %d, %d subtrees", n, family.label, floor, len(search.tasks)
    )
    return TuranPlan(n, family, floor, prefix, search.tasks)


def run_branch(task: BranchTask) -> BranchOutcome:
    """Search one subtree; module level so worker processes can run it."""
    search = _BranchSearch(task.n, task.family, task.floor, task.collect_examples, task.settings)
    return search.run(task.edges, list(task.candidates))


def merge_outcomes(plan: TuranPlan, outcomes: List[BranchOutcome]) -> TuranResult:
    """Combine the prefix and subtree outcomes into the final result."""
    everything = [plan.prefix] + list(outcomes)
    best = max([plan.floor] + [outcome.best for outcome in everything])
    examples: Set[bytes] = set()
    for outcome in everything:
        if outcome.best == best:
            examples |= outcome.examples
    nodes = sum(outcome.nodes for outcome in everything)
    return TuranResult(plan.n, plan.family, best, sorted(examples), nodes)


def exact_turan(
    n: int,
    family: ForbiddenFamily,
    *,
    jobs: Optional[int] = None,
    collect_examples: bool = True,
    settings: Optional[Settings] = None,
) -> TuranResult:
    """ex(n, family) by exhaustive search with isomorph rejection near the root."""
    settings = settings or get_settings()
    jobs = jobs or settings.jobs
    if jobs > 1:
        from .coordinator import TuranSearchCoordinator

        coordinator = TuranSearchCoordinator(jobs, settings)
        return asyncio.run(coordinator.async_search(n, family, collect_examples))

    plan = plan_turan_search(n, family, collect_examples, settings)
    result = merge_outcomes(plan, [run_branch(task) for task in plan.tasks])
    _LOGGER.info(
        "ex(%d, %s) = %d after %d nodes", n, family.label, result.max_edges, result.nodes_explored
    )
    return result


def exhaustive_turan(
    n: int, family: ForbiddenFamily, settings: Optional[Settings] = None
) -> TuranResult:
    """Oracle: test every edge set on n vertices, no pruning."""
    settings = settings or get_settings()
    if n > EXHAUSTIVE_ORACLE_MAX_N:
        raise UnsupportedSizeError(f"the exhaustive oracle supports n <= {EXHAUSTIVE_ORACLE_MAX_N}, got {n}")
    if n < 0:
        raise InvalidArgumentError(f"n must be non-negative, got {n}")
    matcher = family.matcher(settings)
    triples = all_triples(n)

    best = -1
    examples: Set[bytes] = set()
    total = 1 << len(triples)
    for mask in range(total):
        hypergraph = Hypergraph3(n, (triples[i] for i in iter_bits(mask)))
        if len(hypergraph) < best or not matcher.is_free(hypergraph):
            continue
        if len(hypergraph) > best:
            best = len(hypergraph)
            examples = set()
        examples.add(canonical_form(hypergraph, settings))
    return TuranResult(n, family, best, sorted(examples), total)


def min_degree_condition(H: Hypergraph3) -> bool:
    """Every vertex has degree at least n^2/8 - 2n."""
    n = H.vertex_count
    threshold = as_fraction(n * n) / 8 - 2 * n
    return all(d >= threshold for d in H.degrees)


def _symmetrization_move(H: Hypergraph3) -> Optional[Hypergraph3]:
    """Replace a minimum-degree vertex by a clone of a maximum-degree vertex, labels kept."""
    degrees = H.degrees
    if H.vertex_count < 2:
        return None
    low = min(range(H.vertex_count), key=lambda v: (degrees[v], v))
    high = min(range(H.vertex_count), key=lambda v: (-degrees[v], v))
    if degrees[low] == degrees[high]:
        return None

    result = symmetrize(H, {low}, high)
    back = [0] * H.vertex_count
    for old, new in result.relabeling.items():
        back[new] = old
    return result.hypergraph.relabel(back)


def local_search(
    seed: Hypergraph3,
    family: ForbiddenFamily,
    steps: int,
    rng_seed: int,
    settings: Optional[Settings] = None,
) -> Hypergraph3:
    """Grow a family-free hypergraph by symmetrization and random edge additions."""
    matcher = family.matcher(settings)
    if not matcher.is_free(seed):
        raise InvalidArgumentError(f"seed hypergraph is not {family.label}-free")
    if steps < 0:
        raise InvalidArgumentError(f"steps must be non-negative, got {steps}")

    rng = random.Random(rng_seed)
    triples = all_triples(seed.vertex_count)
    current = seed
    logger = _LOGGER.getChild(family.name)

    for step in range(steps):
        if rng.random() < 0.5:
            candidate = _symmetrization_move(current)
            if candidate is None or len(candidate) <= len(current):
                continue
            if not matcher.is_free(candidate):
                logger.debug("Step %d: symmetrized hypergraph is not free, rejected", step)
                continue
            logger.debug("Step %d: symmetrization %d -> %d edges", step, len(current), len(candidate))
            current = candidate
        elif triples:
            triple = triples[rng.randrange(len(triples))]
            if triple in current.edge_set or matcher.violated_by(current, triple):
                continue
            current = current.with_edges([triple])
            logger.debug("Step %d: added %s", step, triple)

    _LOGGER.info(
        "Local search: %d -> %d edges, minimum degree condition %s",
        len(seed),
        len(current),
        min_degree_condition(current),
    )
    return current


class CleaningStep(NamedTuple):
    """One cleaning batch: the pair whose codegree was too small and the edges deleted with it."""
    pair: Pair
    removed: Tuple[Triple, ...]


def _clean(H: Hypergraph3, threshold: int) -> Tuple[Hypergraph3, List[CleaningStep]]:
    if threshold < 0:
        raise InvalidArgumentError(f"threshold must be non-negative, got {threshold}")
    edges = set(H.edges)
    links = dict(H.pair_links)
    steps: List[CleaningStep] = []

    while True:
        target = None
        for pair in sorted(links):
            if bin(links[pair]).count("1") < threshold:
                target = pair
                break
        if target is None:
            break

        u, v = target
        removed = []
        for w in iter_bits(links.pop(target)):
            triple = tuple(sorted((u, v, w)))
            edges.discard(triple)
            removed.append(triple)
            for x in (u, v):
                other = (min(x, w), max(x, w))
                links[other] &= ~(1 << (u + v - x))
                if not links[other]:
                    del links[other]
        steps.append(CleaningStep(target, tuple(sorted(removed))))
        _LOGGER.debug("Cleaned pair %s, removed %d edges", target, len(removed))

    return Hypergraph3(H.vertex_count, edges), steps


def codegree_clean(H: Hypergraph3, threshold: int) -> Hypergraph3:
    """Delete every edge through a pair of codegree in (0, threshold) until none is left."""
    return _clean(H, threshold)[0]


def codegree_cleaning_steps(H: Hypergraph3, threshold: int) -> Iterator[CleaningStep]:
    """The deletion batches codegree_clean performs, in order."""
    yield from _clean(H, threshold)[1]


def cleaning_delta(max_cycle: int) -> float:
    """sqrt(21 / (L - 26)), the relative codegree threshold of the cleaning step."""
    if max_cycle <= CLEANING_OFFSET:
        raise InvalidArgumentError(f"the cleaning threshold needs L > {CLEANING_OFFSET}, got {max_cycle}")
    return math.sqrt(CLEANING_NUMERATOR / (max_cycle - CLEANING_OFFSET))


def cleaning_threshold(delta, n: int) -> int:
    """ceil(delta * n), computed exactly."""
    value = as_fraction(delta)
    if value < 0 or n < 0:
        raise InvalidArgumentError(f"need delta >= 0 and n >= 0, got {delta!r} and {n}")
    return math.ceil(value * n)


class StabilityOutcome(NamedTuple):
    """Partition extracted from the link of a busiest vertex."""
    partition: Partition3
    report: PartitionReport
    diagnostics: Dict[str, Any]


def _witness_or_raise(H: Hypergraph3):
    outcome = orient(H)
    if not outcome.orientable:
        raise NotOrientableError(outcome.certificate)
    return outcome.witness


def stability_partition(H: Hypergraph3) -> StabilityOutcome:
    """(V1, V2, V3) from the largest component of a maximum-degree vertex's link."""
    witness = _witness_or_raise(H)
    n = H.vertex_count
    if n == 0:
        partition = Partition3.from_parts((), (), ())
        return StabilityOutcome(partition, classify_partition(H, partition), {"v0": None})

    v0 = min(range(n), key=lambda v: (-H.degrees[v], v))
    link = link_graph(H, v0)
    components = sorted(nx.connected_components(link), key=lambda comp: (-len(comp), min(comp)))
    largest = components[0] if components else set()

    second = {x for x in largest if witness.has_arc(v0, x)}
    third = set(largest) - second
    first = set(range(n)) - second - third
    partition = Partition3.from_parts(first, second, third)
    report = classify_partition(H, partition)

    crossing_link = all(witness.has_arc(v0, x) != witness.has_arc(v0, y) for x, y in link.edges)
    diagnostics = {
        "v0": v0,
        "degree": H.degrees[v0],
        "link_components": len(components),
        "largest_component": len(largest),
        "link_crosses_neighborhoods": crossing_link,
        "sizes": partition.sizes,
        **report.summary(),
    }
    _LOGGER.debug("Stability partition from v0=%d: %s", v0, diagnostics)
    return StabilityOutcome(partition, report, diagnostics)


def check_link_components_bipartite_complete(H: Hypergraph3, v: int) -> bool:
    """True iff every component of v's link is complete bipartite across out- and in-neighbours."""
    H.check_vertex(v)
    witness = _witness_or_raise(H)
    link = link_graph(H, v)
    for component in nx.connected_components(link):
        outs = [x for x in component if witness.has_arc(v, x)]
        ins = [x for x in component if not witness.has_arc(v, x)]
        subgraph = link.subgraph(component)
        if subgraph.number_of_edges() != len(outs) * len(ins):
            return False
        if any(witness.has_arc(v, x) == witness.has_arc(v, y) for x, y in subgraph.edges):
            return False
    return True
