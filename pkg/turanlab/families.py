"""Forbidden families and their membership tests for turanlab."""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .config import Settings, get_settings
from .const import (
    DEFAULT_MAX_CYCLE,
    FAMILY_C5_MINUS,
    FAMILY_EMPTY,
    FAMILY_EXPLICIT,
    FAMILY_FCM,
    FAMILY_K4_MINUS,
    MIN_CYCLE_LENGTH,
)
from .constructions import k4_minus, tight_cycle_minus_one
from .core import Hypergraph3, Triple, _normalize_triple
from .errors import InvalidArgumentError, UnsupportedSizeError
from .walks import is_fcm_free, naive_contains

_LOGGER = logging.getLogger(__name__)


class FamilyMatcher(ABC):
    """Abstract base class for forbidden-family membership tests."""

    def __init__(self, name: str):
        """Initialize matcher.

        Args:
            name: Family label used in log records
        """
        self.name = name
        self._logger = _LOGGER.getChild(name.replace("(", "_").replace(")", ""))

    @abstractmethod
    def is_free(self, H: Hypergraph3) -> bool:
        """True iff H contains no member of the family."""

    def violated_by(self, H: Hypergraph3, edge: Sequence[int]) -> bool:
        """True iff adding edge to the family-free H creates a member of the family."""
        triple = _normalize_triple(edge, H.vertex_count)
        if triple in H.edge_set:
            return False
        return not self.is_free(H.with_edges([triple]))


class EmptyFamilyMatcher(FamilyMatcher):
    """Nothing is forbidden."""

    def __init__(self):
        super().__init__(FAMILY_EMPTY)

    def is_free(self, H: Hypergraph3) -> bool:
        return True

    def violated_by(self, H: Hypergraph3, edge: Sequence[int]) -> bool:
        return False


def _closes_k4_minus(H: Hypergraph3, triple: Triple) -> bool:
    """True iff triple and two edges of H span four vertices."""
    a, b, c = triple
    for d in range(H.vertex_count):
        if d in triple:
            continue
        present = H.has_edge(a, b, d) + H.has_edge(a, c, d) + H.has_edge(b, c, d)
        if present >= 2:
            return True
    return False


class WalkFamilyMatcher(FamilyMatcher):
    """Pseudo-cycles minus one edge of every size 4..L not divisible by 3."""

    def __init__(self, max_cycle: int):
        super().__init__(f"{FAMILY_FCM}({max_cycle})")
        self.max_cycle = max_cycle

    def is_free(self, H: Hypergraph3) -> bool:
        return is_fcm_free(H, self.max_cycle).free

    def violated_by(self, H: Hypergraph3, edge: Sequence[int]) -> bool:
        triple = _normalize_triple(edge, H.vertex_count)
        if triple in H.edge_set:
            return False
        # K4- is the size-4 member
        if _closes_k4_minus(H, triple):
            return True
        return not is_fcm_free(H.with_edges([triple]), self.max_cycle).free


def _extends(host: Hypergraph3, pattern: Hypergraph3, fixed: Dict[int, int]) -> bool:
    """Injective extension of a partial map V(pattern) -> V(host) carrying edges onto edges."""
    order = [v for v in range(pattern.vertex_count) if v not in fixed]
    position = {v: 0 for v in fixed}
    position.update({v: index + 1 for index, v in enumerate(order)})
    closing: List[List[Triple]] = [[] for _ in range(len(order) + 1)]
    for edge in pattern.edges:
        closing[max(position[v] for v in edge)].append(edge)

    image = dict(fixed)
    used = set(fixed.values())
    if not all(host.has_edge(image[a], image[b], image[c]) for a, b, c in closing[0]):
        return False

    def extend(step: int) -> bool:
        if step == len(order):
            return True
        vertex = order[step]
        for target in range(host.vertex_count):
            if target in used:
                continue
            image[vertex] = target
            if all(host.has_edge(image[a], image[b], image[c]) for a, b, c in closing[step + 1]):
                used.add(target)
                found = extend(step + 1)
                used.discard(target)
                if found:
                    return True
        del image[vertex]
        return False

    return extend(0)


class PatternFamilyMatcher(FamilyMatcher):
    """A finite list of explicit patterns, matched injectively."""

    def __init__(self, name: str, patterns: Sequence[Hypergraph3], settings: Optional[Settings] = None):
        super().__init__(name)
        self.patterns = tuple(patterns)
        self.settings = settings or get_settings()

    def is_free(self, H: Hypergraph3) -> bool:
        return not any(naive_contains(H, pattern, True, self.settings) for pattern in self.patterns)

    def violated_by(self, H: Hypergraph3, edge: Sequence[int]) -> bool:
        triple = _normalize_triple(edge, H.vertex_count)
        if triple in H.edge_set:
            return False
        host = H.with_edges([triple])
        for pattern in self.patterns:
            if pattern.vertex_count > host.vertex_count:
                continue
            # any new copy uses the added edge as the image of some pattern edge
            for pattern_edge in pattern.edges:
                for image in permutations(triple):
                    if _extends(host, pattern, dict(zip(pattern_edge, image))):
                        self._logger.debug("Edge %s completes a copy of %s", triple, pattern)
                        return True
        return False


@dataclass(frozen=True)
class ForbiddenFamily:
    """A named forbidden family: explicit patterns or the walk family up to max_cycle."""
    name: str
    patterns: Tuple[Hypergraph3, ...] = ()
    max_cycle: Optional[int] = None

    def __post_init__(self) -> None:
        if self.max_cycle is not None and self.max_cycle < MIN_CYCLE_LENGTH:
            raise InvalidArgumentError(f"L must be at least {MIN_CYCLE_LENGTH}, got {self.max_cycle}")
        object.__setattr__(self, "patterns", tuple(self.patterns))

    @classmethod
    def empty(cls) -> "ForbiddenFamily":
        return cls(FAMILY_EMPTY)

    @classmethod
    def k4_minus(cls) -> "ForbiddenFamily":
        return cls(FAMILY_K4_MINUS, (k4_minus(),))

    @classmethod
    def c5_minus(cls) -> "ForbiddenFamily":
        return cls(FAMILY_C5_MINUS, (tight_cycle_minus_one(5),))

    @classmethod
    def fcm(cls, max_cycle: int = DEFAULT_MAX_CYCLE) -> "ForbiddenFamily":
        return cls(FAMILY_FCM, max_cycle=max_cycle)

    @classmethod
    def explicit(
        cls, patterns: Sequence[Hypergraph3], settings: Optional[Settings] = None
    ) -> "ForbiddenFamily":
        """Family of arbitrary patterns with at most pattern_vertex_limit vertices each."""
        settings = settings or get_settings()
        patterns = tuple(patterns)
        if not patterns:
            raise InvalidArgumentError("an explicit family needs at least one pattern")
        for pattern in patterns:
            if pattern.vertex_count > settings.pattern_vertex_limit:
                raise UnsupportedSizeError(
                    f"patterns may have at most {settings.pattern_vertex_limit} vertices, got {pattern.vertex_count}"
                )
        return cls(FAMILY_EXPLICIT, patterns)

    @classmethod
    def from_name(cls, name: str, max_cycle: int = DEFAULT_MAX_CYCLE) -> "ForbiddenFamily":
        """Family for a CLI keyword."""
        factories = {
            FAMILY_EMPTY: cls.empty,
            FAMILY_K4_MINUS: cls.k4_minus,
            FAMILY_C5_MINUS: cls.c5_minus,
        }
        if name == FAMILY_FCM:
            return cls.fcm(max_cycle)
        if name not in factories:
            raise InvalidArgumentError(f"unknown family {name!r}")
        return factories[name]()

    @property
    def label(self) -> str:
        if self.max_cycle is not None:
            return f"{self.name}({self.max_cycle})"
        return self.name

    def matcher(self, settings: Optional[Settings] = None) -> FamilyMatcher:
        """Membership test for this family."""
        if self.max_cycle is not None:
            return WalkFamilyMatcher(self.max_cycle)
        if not self.patterns:
            return EmptyFamilyMatcher()
        return PatternFamilyMatcher(self.label, self.patterns, settings)

    def is_free(self, H: Hypergraph3, settings: Optional[Settings] = None) -> bool:
        return self.matcher(settings).is_free(H)

    def violated_by(self, H: Hypergraph3, edge: Sequence[int], settings: Optional[Settings] = None) -> bool:
        return self.matcher(settings).violated_by(H, edge)
