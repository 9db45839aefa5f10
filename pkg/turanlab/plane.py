"""Planar point sets and triangle-similarity hypergraphs for turanlab."""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .config import Settings, get_settings
from .const import EQUILATERAL_ANGLE, LATTICE_COLORS, STRAIGHT_ANGLE
from .core import Hypergraph3, Triple, as_fraction
from .errors import IndeterminateError, InvalidArgumentError
from .walks import is_fcm_free

_LOGGER = logging.getLogger(__name__)

# float screen before the exact unit-distance test
_UNIT_PREFILTER = 1e-6


@dataclass(frozen=True)
class QSqrt3:
    """Exact number a + b*sqrt(3) with rational a, b."""
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))

    @classmethod
    def parse(cls, rational: str, surd: str = "0") -> "QSqrt3":
        """From the two rational parts written as "num/den" or integers."""
        return cls(as_fraction(rational.strip()), as_fraction(surd.strip()))

    def _coerce(self, other) -> "QSqrt3":
        if isinstance(other, QSqrt3):
            return other
        return QSqrt3(as_fraction(other))

    def __add__(self, other) -> "QSqrt3":
        other = self._coerce(other)
        return QSqrt3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other) -> "QSqrt3":
        other = self._coerce(other)
        return QSqrt3(self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> "QSqrt3":
        return self._coerce(other) - self

    def __neg__(self) -> "QSqrt3":
        return QSqrt3(-self.a, -self.b)

    def __mul__(self, other) -> "QSqrt3":
        other = self._coerce(other)
        return QSqrt3(self.a * other.a + 3 * self.b * other.b, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QSqrt3":
        other = self._coerce(other)
        norm = other.a * other.a - 3 * other.b * other.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        return self * QSqrt3(other.a / norm, -other.b / norm)

    def sign(self) -> int:
        """Exact sign: compare a^2 with 3b^2 when the parts disagree."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        return sa if self.a * self.a > 3 * self.b * self.b else sb

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(3)

    def __str__(self) -> str:
        return f"{self.a}+{self.b}r3"


_HALF = Fraction(1, 2)
_ROOT3_HALF = QSqrt3(0, _HALF)


@dataclass(frozen=True)
class PlanePoint:
    """Point with coordinates in Q(sqrt 3)."""
    x: QSqrt3
    y: QSqrt3

    @classmethod
    def of(cls, x, y) -> "PlanePoint":
        return cls(x if isinstance(x, QSqrt3) else QSqrt3(x), y if isinstance(y, QSqrt3) else QSqrt3(y))

    def __add__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x - other.x, self.y - other.y)

    def rotate60(self) -> "PlanePoint":
        """Counterclockwise rotation by 60 degrees about the origin."""
        return PlanePoint(
            self.x * _HALF - self.y * _ROOT3_HALF,
            self.x * _ROOT3_HALF + self.y * _HALF,
        )

    def squared_norm(self) -> QSqrt3:
        return self.x * self.x + self.y * self.y

    def cross(self, other: "PlanePoint") -> QSqrt3:
        return self.x * other.y - self.y * other.x

    def as_floats(self) -> Tuple[float, float]:
        return float(self.x), float(self.y)


@dataclass(frozen=True)
class TriangleShape:
    """Sorted angles in degrees, positive and summing to 180."""
    angles: Tuple[Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        if len(self.angles) != 3:
            raise InvalidArgumentError(f"a triangle has three angles, got {self.angles!r}")
        angles = tuple(sorted(as_fraction(angle) for angle in self.angles))
        object.__setattr__(self, "angles", angles)
        if angles[0] <= 0 or angles[2] >= STRAIGHT_ANGLE:
            raise InvalidArgumentError(f"angles must lie strictly between 0 and {STRAIGHT_ANGLE}: {angles}")
        if sum(angles) != STRAIGHT_ANGLE:
            raise InvalidArgumentError(f"angles must sum to {STRAIGHT_ANGLE}, got {sum(angles)}")

    @classmethod
    def equilateral(cls) -> "TriangleShape":
        return cls((EQUILATERAL_ANGLE,) * 3)

    @property
    def is_equilateral(self) -> bool:
        return self.angles[0] == EQUILATERAL_ANGLE


@dataclass(frozen=True)
class ColoredPoint:
    """Lattice point x*v1 + y*v2 with its color (x + 2y) mod 3."""
    x: int
    y: int
    point: PlanePoint
    color: int


def _check_distinct(points: Sequence[PlanePoint]) -> Dict[PlanePoint, int]:
    index: Dict[PlanePoint, int] = {}
    for i, point in enumerate(points):
        if point in index:
            raise InvalidArgumentError(f"points {index[point]} and {i} coincide")
        index[point] = i
    return index


def _is_degenerate(p: PlanePoint, q: PlanePoint, r: PlanePoint) -> bool:
    return (q - p).cross(r - p).sign() == 0


def _equilateral_triples(points: Sequence[PlanePoint], index: Dict[PlanePoint, int]) -> List[Triple]:
    """Every equilateral triple, by looking up the apex over each ordered pair."""
    found = set()
    for i, p in enumerate(points):
        for j, q in enumerate(points):
            if i == j:
                continue
            k = index.get(p + (q - p).rotate60())
            if k is not None:
                found.add(tuple(sorted((i, j, k))))
    return sorted(found)


def equilateral_triples_bruteforce(points: Sequence[PlanePoint]) -> List[Triple]:
    """Equilateral triples by comparing exact squared side lengths over all triples."""
    _check_distinct(points)
    result = []
    for i, j, k in combinations(range(len(points)), 3):
        p, q, r = points[i], points[j], points[k]
        first = (q - p).squared_norm()
        if first == (r - q).squared_norm() == (p - r).squared_norm():
            result.append((i, j, k))
    return result


def _approximate(value: QSqrt3) -> Tuple[float, float]:
    """float(value) and a bound on its absolute rounding error."""
    return float(value), 4 * (math.ulp(float(value.a)) + 2 * math.ulp(float(value.b)))


def _direction_error(vector: PlanePoint) -> Tuple[Tuple[float, float], Optional[float]]:
    """Float vector and a bound in radians on how far its direction may be off; None if unbounded."""
    (x, x_error), (y, y_error) = _approximate(vector.x), _approximate(vector.y)
    slack = math.hypot(x_error, y_error)
    length = math.hypot(x, y)
    if length <= 2 * slack:
        return (x, y), None
    return (x, y), slack / (length - slack)


def _angle_bounds(p: PlanePoint, q: PlanePoint, r: PlanePoint, margin: float) -> List[Tuple[float, float]]:
    """Interior angles at p, q and r as outward-rounded intervals in degrees."""
    bounds = []
    for vertex, left, right in ((p, q, r), (q, r, p), (r, p, q)):
        (ux, uy), u_error = _direction_error(left - vertex)
        (vx, vy), v_error = _direction_error(right - vertex)
        if u_error is None or v_error is None:
            bounds.append((0.0, float(STRAIGHT_ANGLE)))
            continue
        angle = math.degrees(math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy))
        width = math.degrees(u_error + v_error) + 8 * math.ulp(float(STRAIGHT_ANGLE)) + margin
        low = max(0.0, math.nextafter(angle - width, -math.inf))
        high = min(float(STRAIGHT_ANGLE), math.nextafter(angle + width, math.inf))
        bounds.append((low, high))
    return bounds


def _deviation_bounds(
    bounds: List[Tuple[float, float]], target: Sequence[Fraction]
) -> Tuple[float, float]:
    """Interval holding max |angle - target| over the sorted angles."""
    lows = sorted(low for low, _ in bounds)
    highs = sorted(high for _, high in bounds)
    least = greatest = 0.0
    for low, high, angle in zip(lows, highs, target):
        goal_low = math.nextafter(float(angle), -math.inf)
        goal_high = math.nextafter(float(angle), math.inf)
        least = max(least, low - goal_high, goal_low - high)
        greatest = max(greatest, high - goal_low, goal_high - low)
    return max(0.0, math.nextafter(least, -math.inf)), math.nextafter(greatest, math.inf)


def similarity_hypergraph(
    points: Sequence[PlanePoint],
    shape: TriangleShape,
    eps=0,
    settings: Optional[Settings] = None,
) -> Hypergraph3:
    """Triples of points forming a triangle whose sorted angles are all within eps of shape's.

    Exactly equilateral triples are found in Q(sqrt 3), so an equilateral shape with eps = 0 is
    decided exactly. Every other comparison brackets the angles with outward-rounded intervals
    widened by ``angle_margin``; a triple whose interval straddles eps raises IndeterminateError.
    """
    settings = settings or get_settings()
    index = _check_distinct(points)
    eps = as_fraction(eps)
    if eps < 0:
        raise InvalidArgumentError(f"eps must be non-negative, got {eps}")

    exact = set(_equilateral_triples(points, index)) if shape.is_equilateral else set()
    if shape.is_equilateral and eps == 0:
        return Hypergraph3(len(points), sorted(exact))

    slack = float(eps)
    # float(eps) may round either way
    slack_low, slack_high = math.nextafter(slack, -math.inf), math.nextafter(slack, math.inf)
    edges = []
    for i, j, k in combinations(range(len(points)), 3):
        if (i, j, k) in exact:
            edges.append((i, j, k))
            continue
        if _is_degenerate(points[i], points[j], points[k]):
            continue
        bounds = _angle_bounds(points[i], points[j], points[k], settings.angle_margin)
        least, greatest = _deviation_bounds(bounds, shape.angles)
        if greatest <= slack_low:
            edges.append((i, j, k))
        elif least <= slack_high:
            raise IndeterminateError(
                (i, j, k), f"triangle {(i, j, k)} deviates by {least} to {greatest} degrees, eps is {eps}"
            )
    return Hypergraph3(len(points), edges)


def lattice_patch(radius: int) -> List[ColoredPoint]:
    """Points x*(1, 0) + y*(1/2, sqrt3/2) with |x|, |y| <= radius, colored (x + 2y) mod 3."""
    if radius < 0:
        raise InvalidArgumentError(f"radius must be non-negative, got {radius}")
    patch = []
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            point = PlanePoint(QSqrt3(x + Fraction(y, 2)), QSqrt3(0, Fraction(y, 2)))
            patch.append(ColoredPoint(x, y, point, (x + 2 * y) % LATTICE_COLORS))
    return patch


def unit_triangles(points: Sequence[PlanePoint]) -> List[Triple]:
    """Equilateral triples with side length exactly one."""
    index = _check_distinct(points)
    floats = [point.as_floats() for point in points]
    found = set()
    for i, j in combinations(range(len(points)), 2):
        dx = floats[j][0] - floats[i][0]
        dy = floats[j][1] - floats[i][1]
        if abs(dx * dx + dy * dy - 1) > _UNIT_PREFILTER:
            continue
        p, q = points[i], points[j]
        if (q - p).squared_norm() != QSqrt3(1):
            continue
        for apex in (p + (q - p).rotate60(), q + (p - q).rotate60()):
            k = index.get(apex)
            if k is not None:
                found.add(tuple(sorted((i, j, k))))
    return sorted(found)


def rainbow_check(patch: Sequence[ColoredPoint]) -> bool:
    """True iff every unit equilateral triangle of the patch carries all three colors."""
    colors = [member.color for member in patch]
    triangles = unit_triangles([member.point for member in patch])
    for triple in triangles:
        if len({colors[v] for v in triple}) != LATTICE_COLORS:
            _LOGGER.debug("Unit triangle %s is not rainbow", triple)
            return False
    _LOGGER.debug("All %d unit triangles are rainbow", len(triangles))
    return True


def c_tri(max_cycle: int, settings: Optional[Settings] = None) -> int:
    """Vertex cap of the forbidden family for triangle hypergraphs."""
    settings = settings or get_settings()
    return max_cycle + settings.c_tri_offset


def equilateral_cm_free_check(
    points: Iterable,
    max_cycle: int,
    through_c_tri: bool = False,
    settings: Optional[Settings] = None,
) -> bool:
    """True iff the equilateral-similarity hypergraph of points has no pseudo-cycle minus one edge."""
    plain = [member.point if isinstance(member, ColoredPoint) else member for member in points]
    hypergraph = similarity_hypergraph(plain, TriangleShape.equilateral(), 0, settings)
    limit = c_tri(max_cycle, settings) if through_c_tri else max_cycle
    report = is_fcm_free(hypergraph, limit)
    if not report.free:
        _LOGGER.debug("Equilateral hypergraph contains %s", report.witness)
    return report.free
