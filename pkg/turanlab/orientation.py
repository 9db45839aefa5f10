"""Orientability of 3-graphs for turanlab."""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .const import WALK_CYCLE_MINUS_ONE
from .core import Hypergraph3, Pair
from .errors import InternalInconsistencyError, InvalidArgumentError
from .tournament import Tournament
from .walks import (
    PairDigraph,
    WalkWitness,
    pair_digraph,
    reverse_walk,
    walk_from_parents,
    walk_vertices,
)

_LOGGER = logging.getLogger(__name__)

# a bottle walk (a, b) ~> (b, a) never has fewer arcs
MIN_BOTTLE_ARCS = 4


@dataclass(frozen=True)
class BottleCertificate:
    """Pseudo-path v1 v2 ... vk v2 v1 with k >= 4."""
    sequence: Tuple[int, ...]

    def __post_init__(self) -> None:
        sequence = tuple(self.sequence)
        object.__setattr__(self, "sequence", sequence)
        if len(sequence) < MIN_BOTTLE_ARCS + 2:
            raise InvalidArgumentError(f"a bottle has at least {MIN_BOTTLE_ARCS + 2} vertices, got {len(sequence)}")
        if sequence[0] != sequence[-1] or sequence[1] != sequence[-2]:
            raise InvalidArgumentError(f"{list(sequence)} does not end with its first two vertices reversed")

    @property
    def size(self) -> int:
        return len(self.sequence)

    @property
    def k(self) -> int:
        return len(self.sequence) - 2


@dataclass(frozen=True)
class OrientationOutcome:
    """Either a witness tournament or a bottle certificate."""
    witness: Optional[Tournament] = None
    certificate: Optional[BottleCertificate] = None

    def __post_init__(self) -> None:
        if (self.witness is None) == (self.certificate is None):
            raise InvalidArgumentError("an orientation outcome holds exactly one of witness and certificate")

    @property
    def orientable(self) -> bool:
        return self.witness is not None


class _PairUnionFind:
    """Disjoint sets over unordered pairs with path compression and union by rank."""

    def __init__(self) -> None:
        self._parent: Dict[Pair, Pair] = {}
        self._rank: Dict[Pair, int] = {}

    def add(self, pair: Pair) -> None:
        if pair not in self._parent:
            self._parent[pair] = pair
            self._rank[pair] = 0

    def find(self, pair: Pair) -> Pair:
        root = pair
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[pair] != root:
            self._parent[pair], pair = root, self._parent[pair]
        return root

    def union(self, first: Pair, second: Pair) -> None:
        first, second = self.find(first), self.find(second)
        if first == second:
            return
        if self._rank[first] < self._rank[second]:
            first, second = second, first
        self._parent[second] = first
        if self._rank[first] == self._rank[second]:
            self._rank[first] += 1

    def groups(self) -> List[FrozenSet[Pair]]:
        buckets: Dict[Pair, List[Pair]] = {}
        for pair in self._parent:
            buckets.setdefault(self.find(pair), []).append(pair)
        return sorted((frozenset(members) for members in buckets.values()), key=min)


def tightly_connected_classes(H: Hypergraph3) -> List[FrozenSet[Pair]]:
    """Classes of covered pairs (as u < v) under tight connectivity, ordered by smallest pair."""
    sets = _PairUnionFind()
    for a, b, c in H.edges:
        for pair in ((a, b), (a, c), (b, c)):
            sets.add(pair)
        sets.union((a, b), (a, c))
        sets.union((a, b), (b, c))
    return sets.groups()


def _is_cyclic(T: Tournament, a: int, b: int, c: int) -> bool:
    if T.has_arc(a, b):
        return T.has_arc(b, c) and T.has_arc(c, a)
    return T.has_arc(c, b) and T.has_arc(a, c)


def verify_orientation(H: Hypergraph3, T: Tournament) -> bool:
    """True iff every edge of H is a cyclic triangle of T."""
    if H.vertex_count != T.vertex_count:
        raise InvalidArgumentError(
            f"hypergraph has {H.vertex_count} vertices but tournament has {T.vertex_count}"
        )
    return all(_is_cyclic(T, a, b, c) for a, b, c in H.edges)


def verify_bottle(H: Hypergraph3, sequence: Sequence[int]) -> bool:
    """True iff sequence is v1 v2 ... vk v2 v1 with k >= 4 and every window an edge of H."""
    seq = list(sequence)
    if len(seq) < MIN_BOTTLE_ARCS + 2:
        return False
    if seq[0] != seq[-1] or seq[1] != seq[-2]:
        return False
    return all(H.has_edge(seq[i], seq[i + 1], seq[i + 2]) for i in range(len(seq) - 2))


def _closed_from_common_start(to_pair: List[Pair], to_reversed: List[Pair]) -> List[Pair]:
    """s ~> x and s ~> rev(x) give s ~> rev(x) ~> rev(s)."""
    return to_reversed + reverse_walk(to_pair)[1:]


def _closed_from_common_end(from_root: List[Pair], from_reversed_root: List[Pair]) -> List[Pair]:
    """s ~> x and rev(s) ~> x give rev(x) ~> rev(s) ~> x."""
    return reverse_walk(from_root) + from_reversed_root[1:]


def _conflict_certificate(
    root: Pair,
    pair: Pair,
    forward: Dict[Pair, Optional[Pair]],
    backward: Dict[Pair, Optional[Pair]],
) -> BottleCertificate:
    """Bottle from a pair whose two orientations are both derivable from the root."""
    c, d = pair
    one_forward = pair in forward
    two_forward = (d, c) in forward

    if one_forward and two_forward:
        closed = _closed_from_common_start(walk_from_parents(forward, pair), walk_from_parents(forward, (d, c)))
    elif one_forward:
        closed = _closed_from_common_end(walk_from_parents(forward, pair), walk_from_parents(backward, pair))
    elif two_forward:
        closed = _closed_from_common_end(walk_from_parents(forward, (d, c)), walk_from_parents(backward, (d, c)))
    else:
        closed = _closed_from_common_start(walk_from_parents(backward, (d, c)), walk_from_parents(backward, pair))

    _LOGGER.debug("Conflict on %s from root %s gives closed walk of %d arcs", pair, root, len(closed) - 1)
    return BottleCertificate(tuple(walk_vertices(closed)))


def orient(H: Hypergraph3) -> OrientationOutcome:
    """Witness tournament making every edge cyclic, or a bottle certificate."""
    digraph = pair_digraph(H)
    lower_wins: Dict[Pair, bool] = {}

    for index, members in enumerate(tightly_connected_classes(H)):
        root = min(members)
        a, b = root
        forward = digraph.bfs_parents((a, b))
        backward = digraph.bfs_parents((b, a))
        _LOGGER.debug("Class %d: root %s, %d pairs", index, root, len(members))

        for c, d in sorted(members):
            case_one = (c, d) in forward or (d, c) in backward
            case_two = (d, c) in forward or (c, d) in backward
            if case_one and case_two:
                certificate = _conflict_certificate(root, (c, d), forward, backward)
                if not verify_bottle(H, certificate.sequence):
                    raise InternalInconsistencyError(f"reconstructed bottle {certificate.sequence} is invalid")
                return OrientationOutcome(certificate=certificate)
            if not case_one and not case_two:
                raise InternalInconsistencyError(f"pair {(c, d)} is unreachable from its class root {root}")
            lower_wins[(c, d)] = case_one

    arcs = [
        (u, v) if lower_wins.get((u, v), True) else (v, u)
        for u, v in combinations(range(H.vertex_count), 2)
    ]
    witness = Tournament.from_arcs(H.vertex_count, arcs)
    if not verify_orientation(H, witness):
        raise InternalInconsistencyError("constructed tournament leaves an edge non-cyclic")
    return OrientationOutcome(witness=witness)


def find_bottle(H: Hypergraph3, max_size: Optional[int] = None) -> Optional[BottleCertificate]:
    """A shortest bottle (of at most max_size vertices, if given), or None."""
    digraph: PairDigraph = pair_digraph(H)
    best: Optional[List[Pair]] = None
    limit = None if max_size is None else max_size - 2
    if limit is not None and limit < MIN_BOTTLE_ARCS:
        return None

    for a, b in digraph.nodes():
        walk = digraph.shortest_walk((a, b), (b, a), max_arcs=limit)
        if walk is None:
            continue
        best = walk
        limit = len(walk) - 2
        if limit < MIN_BOTTLE_ARCS:
            break

    if best is None:
        return None
    return BottleCertificate(tuple(walk_vertices(best)))


def bottle_to_cycles_minus_one(certificate: BottleCertificate) -> Tuple[WalkWitness, WalkWitness]:
    """A bottle v1 ... vk v2 v1 holds pseudo-cycles minus one edge of sizes k and k - 1."""
    inner = certificate.sequence[:-2]
    k = len(inner)
    longer = (inner[k - 1],) + inner[: k - 1]
    shorter = inner[1:]
    return WalkWitness(longer, WALK_CYCLE_MINUS_ONE), WalkWitness(shorter, WALK_CYCLE_MINUS_ONE)
