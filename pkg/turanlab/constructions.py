"""Extremal constructions and standard families for turanlab."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import log2
from typing import Iterator, List, Optional, Tuple

from .config import Settings, get_settings
from .const import LOWER_BOUND_CONSTANT, LOWER_BOUND_MIN_N, MIN_CYCLE_LENGTH, MIN_RECURSIVE_PART
from .core import Hypergraph3, Triple
from .errors import InvalidArgumentError, ResourceLimitError, UnsupportedSizeError

_LOGGER = logging.getLogger(__name__)


def _check_cycle_length(length: int) -> None:
    if length < MIN_CYCLE_LENGTH:
        raise InvalidArgumentError(f"cycle length must be at least {MIN_CYCLE_LENGTH}, got {length}")


def tight_cycle(length: int) -> Hypergraph3:
    """C_l: edges {i, i+1, i+2} mod l."""
    _check_cycle_length(length)
    return Hypergraph3(length, ((i, (i + 1) % length, (i + 2) % length) for i in range(length)))


def tight_cycle_minus_one(length: int) -> Hypergraph3:
    """C_l without the edge {l-1, 0, 1}."""
    _check_cycle_length(length)
    return Hypergraph3(length, ((i, (i + 1) % length, (i + 2) % length) for i in range(length - 1)))


def k4_minus() -> Hypergraph3:
    """Three edges on four vertices."""
    return Hypergraph3(4, [(0, 1, 2), (1, 2, 3), (0, 1, 3)])


def complete_3graph(n: int) -> Hypergraph3:
    """Every triple on n vertices."""
    return Hypergraph3(n, combinations(range(n), 3))


def complete_tripartite(first: int, second: int, third: int) -> Hypergraph3:
    """All crossing triples over three contiguous parts."""
    if min(first, second, third) < 0:
        raise InvalidArgumentError("part sizes must be non-negative")
    parts = (
        range(0, first),
        range(first, first + second),
        range(first + second, first + second + third),
    )
    return Hypergraph3(first + second + third, product(*parts))


def part_sizes(n: int) -> Tuple[int, int, int]:
    """Sizes of V1, V2, V3 for E_n."""
    return (n // 3, (n + 1) // 3, (n + 2) // 3)


@dataclass(frozen=True)
class IteratedBlowupSpec:
    """Recursion tree of E_n: part sizes at this level and the spec of every part."""
    n: int
    part_sizes: Tuple[int, ...] = ()
    children: Tuple["IteratedBlowupSpec", ...] = ()

    @classmethod
    def build(cls, n: int) -> "IteratedBlowupSpec":
        """Spec tree for E_n."""
        if n < 1:
            raise InvalidArgumentError(f"E_n needs n >= 1, got {n}")
        return _build_spec(n)

    @property
    def part_offsets(self) -> Tuple[int, ...]:
        """First vertex of each part, relative to this level."""
        offsets = []
        start = 0
        for size in self.part_sizes:
            offsets.append(start)
            start += size
        return tuple(offsets)

    @property
    def depth(self) -> int:
        """Number of recursion levels below this one."""
        return 1 + max((child.depth for child in self.children), default=-1)


@lru_cache(maxsize=None)
def _build_spec(n: int) -> IteratedBlowupSpec:
    if n < MIN_RECURSIVE_PART:
        return IteratedBlowupSpec(n)
    sizes = part_sizes(n)
    return IteratedBlowupSpec(n, sizes, tuple(_build_spec(size) for size in sizes))


@lru_cache(maxsize=None)
def _edge_count(n: int) -> int:
    if n < MIN_RECURSIVE_PART:
        return 0
    first, second, third = part_sizes(n)
    return first * second * third + _edge_count(first) + _edge_count(second) + _edge_count(third)


def e_n_edge_count(n: int) -> int:
    """|E_n| from the recursion, without materializing."""
    if n < 1:
        raise InvalidArgumentError(f"E_n needs n >= 1, got {n}")
    return _edge_count(n)


def e_n_lower_bound(n: int, constant: float = LOWER_BOUND_CONSTANT) -> float:
    """n^3/24 - C n log2 n, stated for n >= 2 (it exceeds |E_1| = 0)."""
    if n < LOWER_BOUND_MIN_N:
        raise InvalidArgumentError(f"the lower bound needs n >= {LOWER_BOUND_MIN_N}, got {n}")
    return n ** 3 / 24 - constant * n * log2(n)


def _iter_blowup_edges(spec: IteratedBlowupSpec, offset: int) -> Iterator[Triple]:
    stack = [(spec, offset)]
    while stack:
        node, start = stack.pop()
        if not node.children:
            continue
        ranges = [
            range(start + part_offset, start + part_offset + size)
            for part_offset, size in zip(node.part_offsets, node.part_sizes)
        ]
        yield from product(*ranges)
        for child, part_offset in zip(node.children, node.part_offsets):
            stack.append((child, start + part_offset))


def iterated_blowup(n: int, settings: Optional[Settings] = None) -> Hypergraph3:
    """Materialize E_n; parts occupy contiguous ranges with V1 first."""
    settings = settings or get_settings()
    expected = e_n_edge_count(n)
    if expected > settings.max_edges:
        raise ResourceLimitError(f"E_{n} has {expected} edges (limit {settings.max_edges})")

    hypergraph = Hypergraph3(n, _iter_blowup_edges(IteratedBlowupSpec.build(n), 0))
    _LOGGER.debug("Materialized E_%d with %d edges", n, len(hypergraph))
    return hypergraph


def max_xy_sum_bound(a: int, b: int) -> Fraction:
    """floor(a/b) b^2/4 + (a - b floor(a/b))^2/4."""
    if not (isinstance(a, int) and isinstance(b, int)) or b <= 0 or a < b:
        raise InvalidArgumentError(f"need integers a >= b > 0, got a={a!r}, b={b!r}")
    blocks, remainder = divmod(a, b)
    return Fraction(blocks * b * b, 4) + Fraction(remainder * remainder, 4)


def _block_sizes(total: int, largest: int) -> Iterator[List[int]]:
    """Non-increasing integer partitions of total with parts at most largest."""
    if total == 0:
        yield []
        return
    for size in range(min(total, largest), 0, -1):
        for rest in _block_sizes(total - size, size):
            yield [size] + rest


def max_xy_sum_exact(a: int, b: int, settings: Optional[Settings] = None) -> int:
    """max sum x_i y_i over decompositions with sum (x_i + y_i) = a and x_j + y_j <= b."""
    if not (isinstance(a, int) and isinstance(b, int)) or b <= 0 or a < b:
        raise InvalidArgumentError(f"need integers a >= b > 0, got a={a!r}, b={b!r}")
    settings = settings or get_settings()
    if a > settings.xy_exact_limit:
        raise UnsupportedSizeError(f"exhaustive search supports a <= {settings.xy_exact_limit}, got {a}")

    best_split = [max(x * (size - x) for x in range(size + 1)) for size in range(b + 1)]
    return max(sum(best_split[size] for size in blocks) for blocks in _block_sizes(a, b))
