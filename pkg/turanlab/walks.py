"""Tight walks over the pair digraph for turanlab."""
import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .config import Settings, get_settings
from .const import (
    EMBED_CASE_DOUBLE_RESIDUE,
    EMBED_CASE_MULTIPLE_OF_THREE,
    EMBED_CASE_SAME_RESIDUE,
    MIN_CYCLE_LENGTH,
    WALK_CYCLE_MINUS_ONE,
    WALK_PSEUDO_CYCLE,
    WALK_PSEUDO_PATH,
)
from .constructions import tight_cycle_minus_one
from .core import Hypergraph3, Pair, Triple, blow_up, iter_bits
from .errors import InternalInconsistencyError, InvalidArgumentError, UnsupportedSizeError

_LOGGER = logging.getLogger(__name__)

# pairs (x, y) of a DP layer, keyed by x with a bitmask of y
Layer = Dict[int, int]


@dataclass(frozen=True)
class WalkWitness:
    """Vertex sequence of a pseudo-path, pseudo-cycle or pseudo-cycle minus one edge."""
    vertices: Tuple[int, ...]
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in (WALK_PSEUDO_PATH, WALK_PSEUDO_CYCLE, WALK_CYCLE_MINUS_ONE):
            raise InvalidArgumentError(f"unknown walk kind {self.kind!r}")
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def length(self) -> int:
        """Number of vertices in the sequence."""
        return len(self.vertices)

    def windows(self) -> List[Triple]:
        """Consecutive triples the walk requires to be edges."""
        seq = self.vertices
        size = len(seq)
        if self.kind == WALK_PSEUDO_PATH:
            return [(seq[i], seq[i + 1], seq[i + 2]) for i in range(size - 2)]
        count = size - 1 if self.kind == WALK_CYCLE_MINUS_ONE else size
        return [(seq[i], seq[(i + 1) % size], seq[(i + 2) % size]) for i in range(count)]

    def is_valid_in(self, H: Hypergraph3) -> bool:
        """True iff every required window is an edge of H."""
        windows = self.windows()
        return bool(windows) and all(H.has_edge(*window) for window in windows)


class FreenessReport(NamedTuple):
    """Outcome of the pseudo-cycle-minus-one family check."""
    free: bool
    witness: Optional[WalkWitness]


class PairDigraph:
    """Ordered pairs inside edges; (a, b) -> (b, c) iff {a, b, c} is an edge."""

    def __init__(self, hypergraph: Hypergraph3):
        """Initialize from a hypergraph."""
        self._hypergraph = hypergraph
        self._links = hypergraph.pair_links

    @property
    def hypergraph(self) -> Hypergraph3:
        return self._hypergraph

    @property
    def vertex_count(self) -> int:
        return self._hypergraph.vertex_count

    def link(self, x: int, y: int) -> int:
        """Bitmask of the vertices z with {x, y, z} an edge."""
        if x > y:
            x, y = y, x
        return self._links.get((x, y), 0)

    def nodes(self) -> List[Pair]:
        """Ordered pairs contained in at least one edge, sorted."""
        return sorted(pair for u, v in self._links for pair in ((u, v), (v, u)))

    def successors(self, pair: Pair) -> List[Pair]:
        """Out-neighbours of a pair, in ascending order."""
        x, y = pair
        return [(y, z) for z in iter_bits(self.link(x, y))]

    def predecessors(self, pair: Pair) -> List[Pair]:
        """In-neighbours of a pair, in ascending order."""
        x, y = pair
        return [(w, x) for w in iter_bits(self.link(x, y))]

    def has_arc(self, source: Pair, target: Pair) -> bool:
        return source[1] == target[0] and self._hypergraph.has_edge(source[0], source[1], target[1])

    def arcs(self) -> List[Tuple[Pair, Pair]]:
        """Every arc, ordered by source then target."""
        return [(node, succ) for node in self.nodes() for succ in self.successors(node)]

    def arc_count(self) -> int:
        return 2 * sum(bin(mask).count("1") for mask in self._links.values())

    def bfs_parents(
        self, start: Pair, goal: Optional[Pair] = None, max_arcs: Optional[int] = None
    ) -> Dict[Pair, Optional[Pair]]:
        """Breadth-first parents from start, stopping once goal is discovered or max_arcs is reached."""
        parents: Dict[Pair, Optional[Pair]] = {start: None}
        frontier = [start]
        depth = 0
        while frontier and (goal is None or goal not in parents):
            if max_arcs is not None and depth >= max_arcs:
                break
            discovered = []
            for pair in frontier:
                for succ in self.successors(pair):
                    if succ not in parents:
                        parents[succ] = pair
                        discovered.append(succ)
            frontier = discovered
            depth += 1
        return parents

    def shortest_walk(
        self, start: Pair, goal: Pair, max_arcs: Optional[int] = None
    ) -> Optional[List[Pair]]:
        """Shortest walk start ~> goal as a list of pairs, or None."""
        parents = self.bfs_parents(start, goal, max_arcs)
        if goal not in parents:
            return None
        return walk_from_parents(parents, goal)


def walk_from_parents(parents: Dict[Pair, Optional[Pair]], goal: Pair) -> List[Pair]:
    """Follow BFS parents back from goal."""
    walk = [goal]
    while parents[walk[-1]] is not None:
        walk.append(parents[walk[-1]])
    walk.reverse()
    return walk


def reverse_walk(walk: Sequence[Pair]) -> List[Pair]:
    """Reversal image: (x1,y1) ... (xm,ym) becomes (ym,xm) ... (y1,x1)."""
    return [(y, x) for x, y in reversed(walk)]


def walk_vertices(walk: Sequence[Pair]) -> List[int]:
    """Vertex sequence traced by a walk of pairs."""
    if not walk:
        return []
    return [walk[0][0], walk[0][1]] + [pair[1] for pair in walk[1:]]


def pair_digraph(H: Hypergraph3) -> PairDigraph:
    """Pair digraph of H."""
    return PairDigraph(H)


def find_pseudo_path(H: Hypergraph3, start: Pair, goal: Pair) -> Optional[WalkWitness]:
    """Shortest pseudo-path whose first two vertices are start and last two are goal."""
    for pair in (start, goal):
        H.check_vertex(pair[0])
        H.check_vertex(pair[1])
        if pair[0] == pair[1]:
            raise InvalidArgumentError(f"pair {pair} repeats a vertex")
    walk = pair_digraph(H).shortest_walk(start, goal)
    if walk is None:
        return None
    return WalkWitness(tuple(walk_vertices(walk)), WALK_PSEUDO_PATH)


def _check_length(length: int) -> None:
    if isinstance(length, bool) or not isinstance(length, int) or length < MIN_CYCLE_LENGTH:
        raise InvalidArgumentError(f"length must be an integer >= {MIN_CYCLE_LENGTH}, got {length!r}")


def _extend_layers(digraph: PairDigraph, layers: List[Layer], steps: int) -> None:
    """Append layers until there are steps + 1 of them."""
    while len(layers) <= steps:
        current = layers[-1]
        following: Layer = {}
        for x, ys in current.items():
            for y in iter_bits(ys):
                succ = digraph.link(x, y)
                if succ:
                    following[y] = following.get(y, 0) | succ
        layers.append(following)


def _anchor_layer(digraph: PairDigraph, anchor: int) -> Layer:
    """Pairs (anchor, y) that start at least one arc."""
    mask = 0
    for other in range(digraph.vertex_count):
        if other != anchor and digraph.link(anchor, other):
            mask |= 1 << other
    return {anchor: mask} if mask else {}


def _closing_pair(layer: Layer, anchor: int) -> Optional[Pair]:
    """Smallest pair (x, anchor) in a layer."""
    closers = [x for x, ys in layer.items() if (ys >> anchor) & 1]
    if not closers:
        return None
    return (min(closers), anchor)


def _backtrack(digraph: PairDigraph, layers: List[Layer], end: Pair, steps: int) -> List[Pair]:
    """Recover a walk of the given number of arcs ending at end, choosing lowest predecessors."""
    walk = [end]
    x, y = end
    for step in range(steps, 0, -1):
        previous = layers[step - 1]
        for w in iter_bits(digraph.link(x, y)):
            if (previous.get(w, 0) >> x) & 1:
                break
        else:
            raise InternalInconsistencyError(f"no predecessor for {(x, y)} at step {step}")
        walk.append((w, x))
        x, y = w, x
    walk.reverse()
    return walk


def find_cycle_minus_one(H: Hypergraph3, length: int) -> Optional[WalkWitness]:
    """v0 ... v_{l-1} whose windows i = 0..l-2 (indices mod l) are all edges, or None."""
    _check_length(length)
    digraph = pair_digraph(H)
    for anchor in range(H.vertex_count):
        layers = [_anchor_layer(digraph, anchor)]
        if not layers[0]:
            continue
        _extend_layers(digraph, layers, length - 1)
        end = _closing_pair(layers[length - 1], anchor)
        if end is not None:
            walk = _backtrack(digraph, layers, end, length - 1)
            return WalkWitness(tuple(pair[0] for pair in walk), WALK_CYCLE_MINUS_ONE)
    return None


def find_pseudo_cycle(H: Hypergraph3, length: int) -> Optional[WalkWitness]:
    """Closed walk of exactly length arcs, returned as its vertex sequence, or None."""
    _check_length(length)
    digraph = pair_digraph(H)
    # some window of a closed walk increases, so starting pairs (a, b) with a < b suffice
    for a, b in H.covered_pairs():
        layers: List[Layer] = [{a: 1 << b}]
        _extend_layers(digraph, layers, length)
        if (layers[length].get(a, 0) >> b) & 1:
            walk = _backtrack(digraph, layers, (a, b), length)
            return WalkWitness(tuple(pair[0] for pair in walk[:length]), WALK_PSEUDO_CYCLE)
    return None


def family_lengths(max_cycle: int) -> List[int]:
    """Sizes 4 <= l <= L with 3 not dividing l."""
    return [length for length in range(MIN_CYCLE_LENGTH, max_cycle + 1) if length % 3]


def is_fcm_free(H: Hypergraph3, max_cycle: int) -> FreenessReport:
    """Check every pseudo-cycle minus one edge of size 4..L not divisible by 3."""
    _check_length(max_cycle)
    lengths = family_lengths(max_cycle)
    digraph = pair_digraph(H)

    best: Optional[Tuple[int, int, Pair]] = None
    best_layers: List[Layer] = []
    for anchor in range(H.vertex_count):
        layers = [_anchor_layer(digraph, anchor)]
        if not layers[0]:
            continue
        for length in lengths:
            if best is not None and length >= best[0]:
                break
            _extend_layers(digraph, layers, length - 1)
            end = _closing_pair(layers[length - 1], anchor)
            if end is not None:
                best = (length, anchor, end)
                best_layers = layers
                break

    if best is None:
        return FreenessReport(True, None)

    length, anchor, end = best
    _LOGGER.debug("Smallest violation has size %d anchored at %d", length, anchor)
    walk = _backtrack(digraph, best_layers, end, length - 1)
    return FreenessReport(False, WalkWitness(tuple(pair[0] for pair in walk), WALK_CYCLE_MINUS_ONE))


def naive_contains(
    H: Hypergraph3, F: Hypergraph3, injective: bool, settings: Optional[Settings] = None
) -> bool:
    """True iff some (injective, if asked) map V(F) -> V(H) sends every edge of F onto an edge of H."""
    settings = settings or get_settings()
    k = F.vertex_count
    if k > settings.pattern_vertex_limit:
        raise UnsupportedSizeError(f"patterns may have at most {settings.pattern_vertex_limit} vertices, got {k}")
    if injective and k > H.vertex_count:
        return False

    closing: List[List[Triple]] = [[] for _ in range(k)]
    for edge in F.edges:
        closing[max(edge)].append(edge)

    image = [0] * k
    used = [False] * H.vertex_count

    def extend(position: int) -> bool:
        if position == k:
            return True
        for target in range(H.vertex_count):
            if injective and used[target]:
                continue
            image[position] = target
            if all(H.has_edge(image[a], image[b], image[c]) for a, b, c in closing[position]):
                used[target] = True
                found = extend(position + 1)
                used[target] = False
                if found:
                    return True
        return False

    return extend(0)


def minimal_blowup_factor(outer: int, inner: int) -> Tuple[str, int]:
    """Embedding case and the smallest blow-up factor it needs for C-_outer in C-_inner[t]."""
    for value in (outer, inner):
        _check_length(value)
    if inner % 3 == 0:
        raise InvalidArgumentError(f"inner length must not be divisible by 3, got {inner}")
    if outer < 2 * inner - 3:
        raise InvalidArgumentError(f"outer length must be at least {2 * inner - 3}, got {outer}")

    if outer % 3 == 0:
        return EMBED_CASE_MULTIPLE_OF_THREE, outer // 3 + 2
    if (outer - inner) % 3 == 0:
        repeats = (outer - inner) // 3
        return EMBED_CASE_SAME_RESIDUE, repeats + 2 if repeats else 1
    repeats = (outer - 2 * inner + 3) // 3
    return EMBED_CASE_DOUBLE_RESIDUE, repeats + 2 if repeats else 2


def embed_cm_in_blowup(
    outer: int, inner: int, t: Optional[int] = None, settings: Optional[Settings] = None
) -> WalkWitness:
    """Copy of C-_outer inside the t-blow-up of C-_inner; clone k of vertex i is (i-1)*t + (k-1)."""
    case, needed = minimal_blowup_factor(outer, inner)
    if t is None:
        t = needed
    elif t < needed:
        raise InvalidArgumentError(f"case {case} needs a blow-up factor of at least {needed}, got {t}")

    def clone(vertex: int, layer: int) -> int:
        return (vertex - 1) * t + (layer - 1)

    def power(pattern: Sequence[int], repeats: int) -> List[int]:
        return [clone(vertex, layer) for layer in range(3, repeats + 3) for vertex in pattern]

    if case == EMBED_CASE_MULTIPLE_OF_THREE:
        sequence = power((1, 2, 3), outer // 3)
    elif case == EMBED_CASE_SAME_RESIDUE:
        sequence = power((1, 2, 3), (outer - inner) // 3)
        sequence += [clone(vertex, 1) for vertex in range(1, inner + 1)]
    else:
        sequence = power((1, 3, 2), (outer - 2 * inner + 3) // 3)
        sequence += [clone(1, 1), clone(3, 1), clone(2, 1)]
        for vertex in range(4, inner + 1):
            sequence += [clone(vertex, 1), clone(vertex - 1, 2)]

    witness = WalkWitness(tuple(sequence), WALK_CYCLE_MINUS_ONE)
    host = blow_up(tight_cycle_minus_one(inner), t, settings)
    if len(sequence) != outer or len(set(sequence)) != outer or not witness.is_valid_in(host):
        raise InternalInconsistencyError(
            f"embedding of C-_{outer} into C-_{inner}[{t}] ({case}) failed verification: {sequence}"
        )
    _LOGGER.debug("Embedded C-_%d into C-_%d[%d] via %s", outer, inner, t, case)
    return witness
