"""Core 3-graph machinery for turanlab."""
import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations, product
from math import comb
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .config import Settings, get_settings
from .const import BITSET_VERTEX_LIMIT, DEFAULT_CACHE_SIZE
from .errors import InvalidArgumentError, ResourceLimitError, UnsupportedSizeError

_LOGGER = logging.getLogger(__name__)

Triple = Tuple[int, int, int]
Pair = Tuple[int, int]

_C2 = [comb(i, 2) for i in range(BITSET_VERTEX_LIMIT + 1)]
_C3 = [comb(i, 3) for i in range(BITSET_VERTEX_LIMIT + 1)]


def triple_rank(a: int, b: int, c: int) -> int:
    """Colex rank of a sorted triple a < b < c."""
    if c <= BITSET_VERTEX_LIMIT:
        return _C3[c] + _C2[b] + a
    return comb(c, 3) + comb(b, 2) + a


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indexes of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_set(mask: int) -> FrozenSet[int]:
    """Convert a bitmask into a frozenset of indexes."""
    return frozenset(iter_bits(mask))


def as_fraction(value) -> Fraction:
    """Exact rational for an int, Fraction, decimal string or float (via its shortest repr)."""
    if isinstance(value, Fraction):
        return value
    try:
        if isinstance(value, float):
            return Fraction(repr(value))
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as err:
        raise InvalidArgumentError(f"{value!r} is not a rational number") from err


def _normalize_triple(edge: Sequence[int], vertex_count: int) -> Triple:
    """Validate an edge and return it as a sorted triple."""
    try:
        vertices = sorted(int(v) for v in edge)
    except (TypeError, ValueError) as err:
        raise InvalidArgumentError(f"edge {edge!r} is not a vertex triple") from err
    if len(vertices) != 3:
        raise InvalidArgumentError(f"edge {edge!r} does not have exactly 3 vertices")
    a, b, c = vertices
    if a == b or b == c:
        raise InvalidArgumentError(f"edge {edge!r} repeats a vertex")
    if a < 0 or c >= vertex_count:
        raise InvalidArgumentError(f"edge {edge!r} leaves the vertex range 0..{vertex_count - 1}")
    return (a, b, c)


class Hypergraph3:
    """A 3-uniform hypergraph on the vertices 0..vertex_count-1."""

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]] = ()):
        """Initialize from a vertex count and an iterable of triples."""
        if isinstance(vertex_count, bool) or not isinstance(vertex_count, int) or vertex_count < 0:
            raise InvalidArgumentError(f"vertex count must be a non-negative integer, got {vertex_count!r}")

        seen = set()
        for edge in edges:
            triple = _normalize_triple(edge, vertex_count)
            if triple in seen:
                raise InvalidArgumentError(f"duplicate edge {triple}")
            seen.add(triple)

        self._vertex_count = vertex_count
        self._edges: Tuple[Triple, ...] = tuple(sorted(seen))
        self._edge_set: FrozenSet[Triple] = frozenset(seen)
        self._mask: Optional[int] = None
        if vertex_count <= BITSET_VERTEX_LIMIT:
            mask = 0
            for a, b, c in self._edges:
                mask |= 1 << triple_rank(a, b, c)
            self._mask = mask

    @property
    def vertex_count(self) -> int:
        """Number of vertices."""
        return self._vertex_count

    @property
    def edges(self) -> Tuple[Triple, ...]:
        """Edges as lexicographically sorted triples."""
        return self._edges

    @property
    def edge_set(self) -> FrozenSet[Triple]:
        """Edges as a frozenset of sorted triples."""
        return self._edge_set

    @property
    def edge_mask(self) -> Optional[int]:
        """Edge bitset indexed by colex rank, or None above the bitset limit."""
        return self._mask

    def __len__(self) -> int:
        return len(self._edges)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._edges)

    def __contains__(self, edge: object) -> bool:
        if not isinstance(edge, (tuple, list)) or len(edge) != 3:
            return False
        return self.has_edge(*edge)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph3):
            return NotImplemented
        return self._vertex_count == other._vertex_count and self._edge_set == other._edge_set

    def __hash__(self) -> int:
        return hash((self._vertex_count, self._edge_set))

    def __repr__(self) -> str:
        return f"Hypergraph3(vertex_count={self._vertex_count}, edges={list(self._edges)})"

    def __getstate__(self) -> Dict[str, Any]:
        # cached views are rebuilt lazily after unpickling
        return {"vertex_count": self._vertex_count, "edges": self._edges}

    def __setstate__(self, state: Dict[str, Any]) -> None:
        self.__init__(state["vertex_count"], state["edges"])

    def has_edge(self, a: int, b: int, c: int) -> bool:
        """Return True if {a, b, c} is an edge."""
        if a == b or b == c or a == c:
            return False
        if a > b:
            a, b = b, a
        if b > c:
            b, c = c, b
        if a > b:
            a, b = b, a
        if a < 0 or c >= self._vertex_count:
            return False
        if self._mask is not None:
            return (self._mask >> triple_rank(a, b, c)) & 1 == 1
        return (a, b, c) in self._edge_set

    @cached_property
    def pair_links(self) -> Dict[Pair, int]:
        """Map each covered pair (u < v) to the bitmask of vertices completing it to an edge."""
        links: Dict[Pair, int] = {}
        for a, b, c in self._edges:
            links[(a, b)] = links.get((a, b), 0) | (1 << c)
            links[(a, c)] = links.get((a, c), 0) | (1 << b)
            links[(b, c)] = links.get((b, c), 0) | (1 << a)
        return links

    @cached_property
    def incidence(self) -> Tuple[Tuple[Triple, ...], ...]:
        """Edges incident to each vertex."""
        buckets: List[List[Triple]] = [[] for _ in range(self._vertex_count)]
        for edge in self._edges:
            for vertex in edge:
                buckets[vertex].append(edge)
        return tuple(tuple(bucket) for bucket in buckets)

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        """Degree of every vertex."""
        return tuple(len(bucket) for bucket in self.incidence)

    def link_mask(self, u: int, v: int) -> int:
        """Bitmask of the vertices w with {u, v, w} an edge."""
        if u > v:
            u, v = v, u
        return self.pair_links.get((u, v), 0)

    def covered_pairs(self) -> List[Pair]:
        """Unordered pairs contained in at least one edge, sorted."""
        return sorted(self.pair_links)

    def check_vertex(self, v: int) -> None:
        """Raise if v is not a vertex."""
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self._vertex_count:
            raise InvalidArgumentError(f"vertex {v!r} outside 0..{self._vertex_count - 1}")

    def relabel(self, mapping: Sequence[int]) -> "Hypergraph3":
        """Apply a permutation given as old vertex -> new vertex."""
        if sorted(mapping) != list(range(self._vertex_count)):
            raise InvalidArgumentError("relabeling must be a permutation of the vertex range")
        return Hypergraph3(
            self._vertex_count,
            ((mapping[a], mapping[b], mapping[c]) for a, b, c in self._edges),
        )

    def induced(self, vertices: Iterable[int]) -> "Hypergraph3":
        """Sub-hypergraph induced on vertices, relabeled in increasing order."""
        chosen = sorted(set(vertices))
        for v in chosen:
            self.check_vertex(v)
        position = {v: i for i, v in enumerate(chosen)}
        return Hypergraph3(
            len(chosen),
            (
                (position[a], position[b], position[c])
                for a, b, c in self._edges
                if a in position and b in position and c in position
            ),
        )

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "Hypergraph3":
        """Return a copy with additional edges."""
        merged = set(self._edge_set)
        for edge in extra:
            merged.add(_normalize_triple(edge, self._vertex_count))
        return Hypergraph3(self._vertex_count, merged)

    def without_edges(self, removed: Iterable[Sequence[int]]) -> "Hypergraph3":
        """Return a copy with the given edges removed."""
        dropped = {_normalize_triple(edge, self._vertex_count) for edge in removed}
        return Hypergraph3(self._vertex_count, self._edge_set - dropped)


def _vertex_filter(H: Hypergraph3, S: Optional[Iterable[int]]) -> int:
    """Bitmask of a vertex subset, all vertices when S is None."""
    if S is None:
        return (1 << H.vertex_count) - 1
    mask = 0
    for v in S:
        H.check_vertex(v)
        mask |= 1 << v
    return mask


def degree(H: Hypergraph3, v: int) -> int:
    """Number of edges containing v."""
    H.check_vertex(v)
    return H.degrees[v]


def codegree(
    H: Hypergraph3, u: int, v: int, S: Optional[Iterable[int]] = None
) -> Tuple[int, FrozenSet[int]]:
    """Common neighbors of u and v inside S, with their count."""
    H.check_vertex(u)
    H.check_vertex(v)
    if u == v:
        raise InvalidArgumentError("codegree needs two distinct vertices")
    neighbors = bits_to_set(H.link_mask(u, v) & _vertex_filter(H, S))
    return len(neighbors), neighbors


def link_graph(
    H: Hypergraph3,
    v: int,
    S1: Optional[Iterable[int]] = None,
    S2: Optional[Iterable[int]] = None,
) -> nx.Graph:
    """Link graph of v: pairs {x, y} with {v, x, y} an edge, x in S1 and y in S2."""
    H.check_vertex(v)
    first = _vertex_filter(H, S1)
    second = _vertex_filter(H, S2)
    graph = nx.Graph()
    for edge in H.incidence[v]:
        x, y = (w for w in edge if w != v)
        x_bit, y_bit = 1 << x, 1 << y
        if (first & x_bit and second & y_bit) or (first & y_bit and second & x_bit):
            graph.add_edge(x, y)
    return graph


@dataclass(frozen=True)
class Partition3:
    """Ordered partition (V1, V2, V3) of the vertex set."""
    parts: Tuple[FrozenSet[int], FrozenSet[int], FrozenSet[int]]

    @classmethod
    def from_parts(cls, first: Iterable[int], second: Iterable[int], third: Iterable[int]) -> "Partition3":
        """Build a partition from three vertex iterables."""
        return cls((frozenset(first), frozenset(second), frozenset(third)))

    @property
    def sizes(self) -> Tuple[int, int, int]:
        """Part sizes."""
        return tuple(len(part) for part in self.parts)

    def validate(self, vertex_count: int) -> None:
        """Raise unless the parts are disjoint and cover 0..vertex_count-1."""
        if len(self.parts) != 3:
            raise InvalidArgumentError("a partition needs exactly three parts")
        union = set()
        for part in self.parts:
            if union & part:
                raise InvalidArgumentError(f"parts overlap on {sorted(union & part)}")
            union |= part
        if union != set(range(vertex_count)):
            missing = sorted(set(range(vertex_count)) - union)
            extra = sorted(union - set(range(vertex_count)))
            raise InvalidArgumentError(f"partition does not cover the vertex set (missing {missing}, extra {extra})")

    def part_index(self) -> Dict[int, int]:
        """Map each vertex to the index of its part."""
        return {v: index for index, part in enumerate(self.parts) for v in part}


@dataclass(frozen=True)
class PartitionReport:
    """Edge classification of a hypergraph against a partition."""
    crossing: FrozenSet[Triple] = field(default_factory=frozenset)
    missing_crossing: FrozenSet[Triple] = field(default_factory=frozenset)
    bad: FrozenSet[Triple] = field(default_factory=frozenset)
    inside: FrozenSet[Triple] = field(default_factory=frozenset)

    def summary(self) -> Dict[str, int]:
        """Counts of every class."""
        return {
            "crossing": len(self.crossing),
            "missing_crossing": len(self.missing_crossing),
            "bad": len(self.bad),
            "inside": len(self.inside),
        }


def classify_partition(H: Hypergraph3, partition: Partition3) -> PartitionReport:
    """Split edges into crossing, bad and inside classes and list missing crossing triples."""
    partition.validate(H.vertex_count)
    index = partition.part_index()

    crossing = set()
    bad = set()
    inside = set()
    for edge in H.edges:
        distinct = len({index[v] for v in edge})
        if distinct == 3:
            crossing.add(edge)
        elif distinct == 2:
            bad.add(edge)
        else:
            inside.add(edge)

    missing = set()
    for combo in product(*(sorted(part) for part in partition.parts)):
        triple = tuple(sorted(combo))
        if triple not in H.edge_set:
            missing.add(triple)

    return PartitionReport(
        crossing=frozenset(crossing),
        missing_crossing=frozenset(missing),
        bad=frozenset(bad),
        inside=frozenset(inside),
    )


def blow_up(H: Hypergraph3, t: int, settings: Optional[Settings] = None) -> Hypergraph3:
    """The t-blow-up; clone i of vertex v is encoded as v*t + i."""
    if isinstance(t, bool) or not isinstance(t, int) or t < 1:
        raise InvalidArgumentError(f"blow-up factor must be a positive integer, got {t!r}")
    settings = settings or get_settings()
    edge_count = len(H) * t ** 3
    if edge_count > settings.max_edges:
        raise ResourceLimitError(f"blow-up would have {edge_count} edges (limit {settings.max_edges})")

    layers = range(t)
    edges = [
        (a * t + i, b * t + j, c * t + k)
        for a, b, c in H.edges
        for i, j, k in product(layers, layers, layers)
    ]
    return Hypergraph3(H.vertex_count * t, edges)


@dataclass(frozen=True)
class Symmetrization:
    """Result of replacing a vertex set by clones of a vertex."""
    hypergraph: Hypergraph3
    relabeling: Dict[int, int]
    clones: Tuple[int, ...]


def symmetrize(H: Hypergraph3, S: Iterable[int], v: int) -> Symmetrization:
    """Replace every vertex of S by a clone of v; clones take the tail of the vertex range.

    The relabeling maps each old vertex to its new label; a vertex of S maps to the clone that
    replaced it (clones follow S in increasing order).
    """
    H.check_vertex(v)
    removed = sorted(set(S))
    for s in removed:
        H.check_vertex(s)
    if v in removed:
        raise InvalidArgumentError(f"vertex {v} cannot be symmetrized onto itself")

    removed_set = set(removed)
    kept = [w for w in range(H.vertex_count) if w not in removed_set]
    relabeling = {w: i for i, w in enumerate(kept)}
    clones = tuple(range(len(kept), H.vertex_count))
    relabeling.update({s: clone for s, clone in zip(removed, clones)})

    edges = set()
    for edge in H.edges:
        if removed_set.intersection(edge):
            continue
        edges.add(tuple(sorted(relabeling[w] for w in edge)))
        if v in edge:
            x, y = (relabeling[w] for w in edge if w != v)
            for clone in clones:
                edges.add(tuple(sorted((clone, x, y))))

    return Symmetrization(Hypergraph3(H.vertex_count, edges), relabeling, clones)


def _invariant_classes(H: Hypergraph3) -> List[List[int]]:
    """Group vertices by an isomorphism-invariant signature, classes in signature order."""
    codegrees: Dict[int, List[int]] = {v: [] for v in range(H.vertex_count)}
    for (u, w), mask in H.pair_links.items():
        weight = bin(mask).count("1")
        codegrees[u].append(weight)
        codegrees[w].append(weight)

    signature = {v: (H.degrees[v], tuple(sorted(codegrees[v]))) for v in range(H.vertex_count)}
    classes: Dict[Tuple, List[int]] = {}
    for v in range(H.vertex_count):
        classes.setdefault(signature[v], []).append(v)
    return [classes[key] for key in sorted(classes)]


def _labelings(classes: List[List[int]]) -> Iterator[Dict[int, int]]:
    """Every relabeling that sends each class onto a consecutive block of labels."""
    blocks = []
    start = 0
    for members in classes:
        blocks.append((members, list(range(start, start + len(members)))))
        start += len(members)

    for arrangement in product(*(permutations(members) for members, _ in blocks)):
        mapping: Dict[int, int] = {}
        for ordered, (_, labels) in zip(arrangement, blocks):
            mapping.update(zip(ordered, labels))
        yield mapping


def canonical_form(H: Hypergraph3, settings: Optional[Settings] = None) -> bytes:
    """Isomorphism-invariant byte string: equal iff the hypergraphs are isomorphic."""
    settings = settings or get_settings()
    n = H.vertex_count
    if n > settings.canonical_limit:
        raise UnsupportedSizeError(f"canonical form supports at most {settings.canonical_limit} vertices, got {n}")

    best = -1
    for mapping in _labelings(_invariant_classes(H)):
        mask = 0
        for a, b, c in H.edges:
            x, y, z = sorted((mapping[a], mapping[b], mapping[c]))
            mask |= 1 << triple_rank(x, y, z)
        if mask > best:
            best = mask

    width = max(1, (comb(n, 3) + 7) // 8)
    return bytes([n]) + max(best, 0).to_bytes(width, "big")


def canonical_labeling(H: Hypergraph3) -> Tuple[Triple, ...]:
    """Lexicographically smallest sorted triple list among relabelings of H's support onto 0..m-1."""
    support = sorted({v for edge in H.edges for v in edge})
    best: Optional[Tuple[Triple, ...]] = None
    for order in permutations(range(len(support))):
        mapping = dict(zip(support, order))
        candidate = tuple(sorted(tuple(sorted((mapping[a], mapping[b], mapping[c]))) for a, b, c in H.edges))
        if best is None or candidate < best:
            best = candidate
    return best or ()


def from_canonical_form(form: bytes) -> Hypergraph3:
    """Representative hypergraph of a canonical form."""
    if not form:
        raise InvalidArgumentError("canonical form is empty")
    n = form[0]
    mask = int.from_bytes(form[1:], "big")
    if mask >> comb(n, 3):
        raise InvalidArgumentError(f"canonical form has bits beyond the {comb(n, 3)} triples on {n} vertices")
    return Hypergraph3(n, (triple for triple in all_triples(n) if (mask >> triple_rank(*triple)) & 1))


def all_triples(n: int) -> List[Triple]:
    """Every 3-subset of 0..n-1 in lexicographic order."""
    return list(combinations(range(n), 3))


@dataclass
class CanonicalCache:
    """Bounded cache of canonical computations with LRU eviction."""
    cache: OrderedDict = field(default_factory=OrderedDict)
    max_size: int = DEFAULT_CACHE_SIZE
    hits: int = 0
    misses: int = 0
    evictions: int = 0

    def get(self, key: Any) -> Optional[Any]:
        """Return the cached value or None."""
        if key in self.cache:
            self.cache.move_to_end(key)
            self.hits += 1
            return self.cache[key]
        self.misses += 1
        return None

    def set(self, key: Any, value: Any) -> None:
        """Store a value, evicting the least recently used entry when full."""
        if len(self.cache) >= self.max_size and key not in self.cache:
            if not self.evictions:
                _LOGGER.warning("Canonical cache is full at %d entries, evicting", self.max_size)
            self.evictions += 1
            self.cache.popitem(last=False)
        self.cache[key] = value
        self.cache.move_to_end(key)

    def get_stats(self) -> Dict[str, Any]:
        """Get cache statistics."""
        total_requests = self.hits + self.misses
        hit_rate = (self.hits / total_requests * 100) if total_requests > 0 else 0
        return {
            "size": len(self.cache),
            "max_size": self.max_size,
            "hits": self.hits,
            "misses": self.misses,
            "evictions": self.evictions,
            "hit_rate": round(hit_rate, 2),
        }
