"""Text file formats for turanlab."""
import logging
import re
from math import comb
from typing import Any, Dict, Iterator, List, Mapping, Sequence, Tuple

from .const import FORMAT_ARC, FORMAT_COMMENT, FORMAT_EDGE, FORMAT_HEADER, FORMAT_POINT
from .core import Hypergraph3
from .errors import InvalidArgumentError
from .plane import PlanePoint, QSqrt3
from .tournament import Tournament

_LOGGER = logging.getLogger(__name__)

_INT = r"(-?\d+)"
_RATIONAL = r"(-?\d+(?:/\d+)?)"

HEADER_PATTERN = re.compile(rf"^{FORMAT_HEADER}\s+{_INT}$")
EDGE_PATTERN = re.compile(rf"^{FORMAT_EDGE}\s+{_INT}\s+{_INT}\s+{_INT}$")
ARC_PATTERN = re.compile(rf"^{FORMAT_ARC}\s+{_INT}\s+{_INT}$")
POINT_PATTERN = re.compile(rf"^{FORMAT_POINT}\s+{_RATIONAL}\s+{_RATIONAL}\s+{_RATIONAL}\s+{_RATIONAL}$")


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    """Non-blank, non-comment lines with their 1-based line numbers."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith(FORMAT_COMMENT):
            yield number, line


def _read_header(lines: List[Tuple[int, str]], kind: str) -> int:
    if not lines:
        raise InvalidArgumentError(f"{kind} file is empty")
    number, line = lines[0]
    match = HEADER_PATTERN.match(line)
    if not match:
        raise InvalidArgumentError(f"line {number}: expected '{FORMAT_HEADER} <count>', got {line!r}")
    count = int(match.group(1))
    if count < 0:
        raise InvalidArgumentError(f"line {number}: vertex count must be non-negative")
    return count


def read_hypergraph(text: str) -> Hypergraph3:
    """Parse 'n <count>' followed by 'e a b c' lines in any order."""
    lines = list(_content_lines(text))
    n = _read_header(lines, "hypergraph")

    seen: Dict[Tuple[int, int, int], int] = {}
    for number, line in lines[1:]:
        match = EDGE_PATTERN.match(line)
        if not match:
            raise InvalidArgumentError(f"line {number}: expected '{FORMAT_EDGE} a b c', got {line!r}")
        triple = tuple(sorted(int(group) for group in match.groups()))
        if triple in seen:
            raise InvalidArgumentError(f"line {number}: edge {triple} already given on line {seen[triple]}")
        seen[triple] = number

    try:
        return Hypergraph3(n, seen)
    except InvalidArgumentError as err:
        raise InvalidArgumentError(f"invalid hypergraph: {err}") from err


def write_hypergraph(H: Hypergraph3) -> str:
    """Header and one edge per line, lexicographically sorted."""
    lines = [f"{FORMAT_HEADER} {H.vertex_count}"]
    lines.extend(f"{FORMAT_EDGE} {a} {b} {c}" for a, b, c in H.edges)
    return "\n".join(lines) + "\n"


def read_tournament(text: str) -> Tournament:
    """Parse 'n <count>' followed by exactly C(n, 2) lines 'a u v' meaning u -> v."""
    lines = list(_content_lines(text))
    n = _read_header(lines, "tournament")

    arcs = []
    pairs: Dict[Tuple[int, int], int] = {}
    for number, line in lines[1:]:
        match = ARC_PATTERN.match(line)
        if not match:
            raise InvalidArgumentError(f"line {number}: expected '{FORMAT_ARC} u v', got {line!r}")
        u, v = int(match.group(1)), int(match.group(2))
        pair = (min(u, v), max(u, v))
        if pair in pairs:
            raise InvalidArgumentError(f"line {number}: pair {pair} already oriented on line {pairs[pair]}")
        pairs[pair] = number
        arcs.append((u, v))

    if len(arcs) != comb(n, 2):
        raise InvalidArgumentError(f"a tournament on {n} vertices needs {comb(n, 2)} arcs, got {len(arcs)}")
    return Tournament.from_arcs(n, arcs)


def write_tournament(T: Tournament) -> str:
    """Header and one arc per unordered pair, pairs in lexicographic order."""
    lines = [f"{FORMAT_HEADER} {T.vertex_count}"]
    for u in range(T.vertex_count):
        for v in range(u + 1, T.vertex_count):
            source, target = (u, v) if T.has_arc(u, v) else (v, u)
            lines.append(f"{FORMAT_ARC} {source} {target}")
    return "\n".join(lines) + "\n"


def read_points(text: str) -> List[PlanePoint]:
    """Parse 'p ax bx ay by' lines: x = ax + bx*sqrt3, y = ay + by*sqrt3."""
    points = []
    seen: Dict[PlanePoint, int] = {}
    for number, line in _content_lines(text):
        match = POINT_PATTERN.match(line)
        if not match:
            raise InvalidArgumentError(f"line {number}: expected '{FORMAT_POINT} ax bx ay by', got {line!r}")
        ax, bx, ay, by = match.groups()
        try:
            point = PlanePoint(QSqrt3.parse(ax, bx), QSqrt3.parse(ay, by))
        except InvalidArgumentError as err:
            raise InvalidArgumentError(f"line {number}: {err}") from err
        if point in seen:
            raise InvalidArgumentError(f"line {number}: point repeats line {seen[point]}")
        seen[point] = number
        points.append(point)
    return points


def write_points(points: Sequence[PlanePoint]) -> str:
    """One 'p ax bx ay by' line per point."""
    return "".join(
        f"{FORMAT_POINT} {point.x.a} {point.x.b} {point.y.a} {point.y.b}\n" for point in points
    )


def _record_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (list, tuple)):
        return ",".join(_record_value(item) for item in value)
    return str(value).replace(" ", "_")


def format_record(fields: Mapping[str, Any]) -> str:
    """One line of space-separated key=value pairs."""
    return " ".join(f"{key}={_record_value(value)}" for key, value in fields.items())
