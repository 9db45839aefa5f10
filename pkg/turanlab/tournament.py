"""Tournaments and cyclic triangles for turanlab."""
import logging
import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Set, Tuple

from .constructions import tight_cycle_minus_one
from .core import Hypergraph3, Pair, Triple, as_fraction, iter_bits
from .errors import InternalInconsistencyError, InvalidArgumentError
from .walks import naive_contains

_LOGGER = logging.getLogger(__name__)

# D5 arcs, 0-based
D5_ARCS: Tuple[Pair, ...] = (
    (0, 1), (0, 2), (3, 0), (4, 0), (1, 2),
    (1, 3), (1, 4), (2, 3), (4, 2), (4, 3),
)


class Tournament:
    """Complete oriented graph stored as out-neighbour bitmask rows."""

    def __init__(self, vertex_count: int, out_rows: Sequence[int]):
        """Initialize from out-neighbour rows, validating completeness and antisymmetry."""
        if isinstance(vertex_count, bool) or not isinstance(vertex_count, int) or vertex_count < 0:
            raise InvalidArgumentError(f"vertex count must be a non-negative integer, got {vertex_count!r}")
        if len(out_rows) != vertex_count:
            raise InvalidArgumentError(f"expected {vertex_count} rows, got {len(out_rows)}")

        full = (1 << vertex_count) - 1
        rows = tuple(int(row) for row in out_rows)
        for u, row in enumerate(rows):
            if row & ~full or (row >> u) & 1:
                raise InvalidArgumentError(f"row {u} has a self-arc or an out-of-range arc")
        for u, v in combinations(range(vertex_count), 2):
            forward = (rows[u] >> v) & 1
            backward = (rows[v] >> u) & 1
            if forward == backward:
                state = "both directions" if forward else "no direction"
                raise InvalidArgumentError(f"pair {{{u}, {v}}} has {state}")

        self._vertex_count = vertex_count
        self._rows = rows
        self._full = full

    @classmethod
    def from_arcs(cls, vertex_count: int, arcs: Iterable[Pair]) -> "Tournament":
        """Build from an iterable of arcs (u, v) meaning u -> v."""
        rows = [0] * vertex_count
        for u, v in arcs:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count) or u == v:
                raise InvalidArgumentError(f"arc ({u}, {v}) is not valid on {vertex_count} vertices")
            if (rows[u] >> v) & 1:
                raise InvalidArgumentError(f"duplicate arc ({u}, {v})")
            rows[u] |= 1 << v
        return cls(vertex_count, rows)

    @classmethod
    def transitive(cls, vertex_count: int) -> "Tournament":
        """Every arc points from the lower to the higher vertex."""
        full = (1 << vertex_count) - 1
        return cls(vertex_count, [full & ~((1 << (u + 1)) - 1) for u in range(vertex_count)])

    @classmethod
    def circulant(cls, vertex_count: int, connection: Iterable[int]) -> "Tournament":
        """u -> v iff (v - u) mod n lies in the connection set."""
        steps = {s % vertex_count for s in connection} if vertex_count else set()
        rows = []
        for u in range(vertex_count):
            row = 0
            for s in steps:
                row |= 1 << ((u + s) % vertex_count)
            rows.append(row)
        return cls(vertex_count, rows)

    @classmethod
    def rotational(cls, vertex_count: int) -> "Tournament":
        """Regular rotational tournament on an odd number of vertices."""
        if vertex_count % 2 == 0:
            raise InvalidArgumentError(f"rotational tournaments need an odd order, got {vertex_count}")
        return cls.circulant(vertex_count, range(1, (vertex_count - 1) // 2 + 1))

    @classmethod
    def quadratic_residue(cls, prime: int) -> "Tournament":
        """Paley tournament: u -> v iff v - u is a non-zero square mod a prime p = 3 (mod 4)."""
        if prime < 3 or prime % 4 != 3 or any(prime % d == 0 for d in range(2, int(prime ** 0.5) + 1)):
            raise InvalidArgumentError(f"quadratic-residue tournaments need a prime p = 3 mod 4, got {prime}")
        return cls.circulant(prime, {x * x % prime for x in range(1, prime)})

    @classmethod
    def cyclic_triangle(cls) -> "Tournament":
        """0 -> 1 -> 2 -> 0."""
        return cls.rotational(3)

    @classmethod
    def from_code(cls, vertex_count: int, code: int) -> "Tournament":
        """Decode the pair bit-encoding; bit k is set iff the lower vertex of the k-th pair wins."""
        pairs = list(combinations(range(vertex_count), 2))
        if not 0 <= code < (1 << len(pairs)):
            raise InvalidArgumentError(f"code {code} out of range for {vertex_count} vertices")
        rows = [0] * vertex_count
        for index, (u, v) in enumerate(pairs):
            if (code >> index) & 1:
                rows[u] |= 1 << v
            else:
                rows[v] |= 1 << u
        return cls(vertex_count, rows)

    @classmethod
    def random(cls, vertex_count: int, rng: random.Random) -> "Tournament":
        """Uniformly random labeled tournament."""
        return cls.from_code(vertex_count, rng.getrandbits(comb(vertex_count, 2)) if vertex_count > 1 else 0)

    @property
    def vertex_count(self) -> int:
        """Number of vertices."""
        return self._vertex_count

    @property
    def rows(self) -> Tuple[int, ...]:
        """Out-neighbour bitmask of every vertex."""
        return self._rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tournament):
            return NotImplemented
        return self._vertex_count == other._vertex_count and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._vertex_count, self._rows))

    def __repr__(self) -> str:
        return f"Tournament(vertex_count={self._vertex_count}, code={self.encode()})"

    def encode(self) -> int:
        """Pair bit-encoding, inverse of from_code."""
        code = 0
        for index, (u, v) in enumerate(combinations(range(self._vertex_count), 2)):
            if (self._rows[u] >> v) & 1:
                code |= 1 << index
        return code

    def has_arc(self, u: int, v: int) -> bool:
        """True iff u -> v."""
        return (self._rows[u] >> v) & 1 == 1

    def out_mask(self, v: int) -> int:
        return self._rows[v]

    def in_mask(self, v: int) -> int:
        return self._full & ~self._rows[v] & ~(1 << v)

    def out_degree(self, v: int) -> int:
        return bin(self._rows[v]).count("1")

    def in_degree(self, v: int) -> int:
        return self._vertex_count - 1 - self.out_degree(v)

    def score_sequence(self) -> Tuple[int, ...]:
        """Out-degrees in non-decreasing order."""
        return tuple(sorted(self.out_degree(v) for v in range(self._vertex_count)))

    def arcs(self) -> List[Pair]:
        """All arcs ordered by their unordered pair."""
        return [
            (u, v) if self.has_arc(u, v) else (v, u)
            for u, v in combinations(range(self._vertex_count), 2)
        ]

    def subtournament(self, vertices: Sequence[int]) -> "Tournament":
        """T[S] with S relabeled in the given order."""
        rows = []
        for u in vertices:
            row = 0
            for index, v in enumerate(vertices):
                if u != v and self.has_arc(u, v):
                    row |= 1 << index
            rows.append(row)
        return Tournament(len(vertices), rows)

    def relabel(self, mapping: Sequence[int]) -> "Tournament":
        """Apply a permutation given as old vertex -> new vertex."""
        if sorted(mapping) != list(range(self._vertex_count)):
            raise InvalidArgumentError("relabeling must be a permutation of the vertex range")
        return Tournament.from_arcs(self._vertex_count, ((mapping[u], mapping[v]) for u, v in self.arcs()))


def iter_cyclic_triangles(T: Tournament) -> Iterator[Triple]:
    """Yield every cyclic triangle once, as a sorted triple, in lexicographic order."""
    for u in range(T.vertex_count):
        higher = ~((1 << (u + 1)) - 1)
        found = []
        for v in iter_bits(T.out_mask(u) & higher):
            for w in iter_bits(T.out_mask(v) & T.in_mask(u) & higher):
                found.append((u, min(v, w), max(v, w)))
        yield from sorted(found)


def cyclic_triangle_count(T: Tournament) -> int:
    """Number of cyclic triangles, by the degree formula and by enumeration."""
    n = T.vertex_count
    transitive_twice = sum(
        comb(T.out_degree(v), 2) + comb(T.in_degree(v), 2) for v in range(n)
    )
    if transitive_twice % 2:
        raise InternalInconsistencyError(f"degree sum {transitive_twice} is odd for {T!r}")
    closed_form = comb(n, 3) - transitive_twice // 2

    enumerated = sum(1 for _ in iter_cyclic_triangles(T))
    if closed_form != enumerated:
        raise InternalInconsistencyError(
            f"cyclic triangle count disagrees: formula {closed_form}, enumeration {enumerated}"
        )
    return closed_form


def kendall_smith_bound(n: int) -> int:
    """Maximum number of cyclic triangles in a tournament on n vertices."""
    if n < 0:
        raise InvalidArgumentError(f"n must be non-negative, got {n}")
    if n % 2:
        return (n ** 3 - n) // 24
    return (n ** 3 - 4 * n) // 24


def cyclic_hypergraph(T: Tournament) -> Hypergraph3:
    """H(T): the 3-graph of cyclic triangles."""
    return Hypergraph3(T.vertex_count, iter_cyclic_triangles(T))


def pair_coverage(T: Tournament, u: int, v: int) -> int:
    """Number of cyclic triangles containing {u, v}."""
    if u == v:
        raise InvalidArgumentError("pair coverage needs two distinct vertices")
    if not T.has_arc(u, v):
        u, v = v, u
    return bin(T.out_mask(v) & T.in_mask(u)).count("1")


def near_regular_set(T: Tournament, eps2) -> FrozenSet[int]:
    """Vertices whose in- and out-degree both lie strictly within eps2*n of (n-1)/2."""
    n = T.vertex_count
    center = Fraction(n - 1, 2)
    slack = as_fraction(eps2) * n
    low, high = center - slack, center + slack
    return frozenset(
        v for v in range(n)
        if low < T.out_degree(v) < high and low < T.in_degree(v) < high
    )


def low_coverage_pairs(T: Tournament, eps2) -> FrozenSet[Pair]:
    """Pairs {u, v} (as u < v) lying in at most eps2*n cyclic triangles."""
    limit = as_fraction(eps2) * T.vertex_count
    return frozenset(
        (u, v) for u, v in combinations(range(T.vertex_count), 2)
        if pair_coverage(T, u, v) <= limit
    )


def d5() -> Tournament:
    """The five-vertex tournament D5."""
    return Tournament.from_arcs(5, D5_ARCS)


@lru_cache(maxsize=1)
def _t5_codes() -> Tuple[int, ...]:
    pattern = tight_cycle_minus_one(5)
    codes = []
    for code in range(1 << comb(5, 2)):
        hypergraph = cyclic_hypergraph(Tournament.from_code(5, code))
        if len(hypergraph) >= len(pattern) and naive_contains(hypergraph, pattern, injective=True):
            codes.append(code)
    _LOGGER.debug("T5 holds %d of %d labeled tournaments", len(codes), 1 << comb(5, 2))
    return tuple(codes)


def t5_family() -> List[Tournament]:
    """Labeled 5-vertex tournaments whose cyclic hypergraph contains a copy of C5 minus an edge."""
    return [Tournament.from_code(5, code) for code in _t5_codes()]


def count_induced(T: Tournament, D: Tournament) -> int:
    """Number of vertex subsets S with T[S] isomorphic to D."""
    k = D.vertex_count
    if k > T.vertex_count:
        return 0

    images: Set[int] = {D.relabel(order).encode() for order in permutations(range(k))}
    total = 0
    for subset in combinations(range(T.vertex_count), k):
        if T.subtournament(subset).encode() in images:
            total += 1
    return total
