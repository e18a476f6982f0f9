"""Exact rational points, directions and lines in R^3 (and their planar images).

All coordinates are :class:`fractions.Fraction`; nothing in this module
rounds.  Lines are stored in a canonical form so that two descriptions of the
same geometric line compare (and hash) equal.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, NamedTuple, Optional, Sequence

from .errors import GenericityExhausted, ZeroDirection

GENERICITY_RETRY_LIMIT = 64


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are rejected: they would smuggle rounding into the predicates.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


class Point3(NamedTuple):
    x: Fraction
    y: Fraction
    z: Fraction

    def __str__(self):
        return f"({self.x}, {self.y}, {self.z})"


class Point2(NamedTuple):
    x: Fraction
    y: Fraction

    def __str__(self):
        return f"({self.x}, {self.y})"


def point3(x, y, z) -> Point3:
    return Point3(to_fraction(x), to_fraction(y), to_fraction(z))


def point2(x, y) -> Point2:
    return Point2(to_fraction(x), to_fraction(y))


def _primitive(vec: Sequence) -> tuple:
    """Scale a rational vector to a primitive integer vector, first nonzero > 0."""
    fr = [to_fraction(v) for v in vec]
    if all(v == 0 for v in fr):
        raise ZeroDirection("direction vector is zero")
    den = math.lcm(*(v.denominator for v in fr))
    ints = [int(v * den) for v in fr]
    g = math.gcd(*ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


@dataclass(frozen=True, order=True)
class Direction3:
    """Projective direction: primitive integer vector, first nonzero entry positive."""

    dx: int
    dy: int
    dz: int

    def __post_init__(self):
        if (self.dx, self.dy, self.dz) != _primitive((self.dx, self.dy, self.dz)):
            raise ValueError(f"{(self.dx, self.dy, self.dz)} is not a canonical direction; use Direction3.of")

    @classmethod
    def of(cls, vx, vy, vz) -> "Direction3":
        return cls(*_primitive((vx, vy, vz)))

    def __iter__(self):
        return iter((self.dx, self.dy, self.dz))

    def __str__(self):
        return f"<{self.dx}, {self.dy}, {self.dz}>"


@dataclass(frozen=True, order=True)
class Direction2:
    dx: int
    dy: int

    def __post_init__(self):
        if (self.dx, self.dy) != _primitive((self.dx, self.dy)):
            raise ValueError(f"{(self.dx, self.dy)} is not a canonical direction; use Direction2.of")

    @classmethod
    def of(cls, vx, vy) -> "Direction2":
        return cls(*_primitive((vx, vy)))

    def __iter__(self):
        return iter((self.dx, self.dy))


def _canonical_base(point: Sequence[Fraction], direction: Sequence[int]) -> tuple:
    # Slide along the line until the first coordinate with nonzero direction is 0.
    i = next(k for k, v in enumerate(direction) if v != 0)
    t = -point[i] / direction[i]
    return tuple(p + t * d for p, d in zip(point, direction))


@dataclass(frozen=True, order=True)
class Line3:
    base: Point3
    dir: Direction3
    id: Hashable = field(default=None, compare=False)

    def contains(self, p: Point3) -> bool:
        return _on_line3(self.base, tuple(self.dir), p)

    def point_at(self, t) -> Point3:
        t = to_fraction(t)
        return Point3(*(b + t * d for b, d in zip(self.base, self.dir)))

    def with_id(self, new_id) -> "Line3":
        return Line3(self.base, self.dir, new_id)

    def __str__(self):
        return f"{self.base}+t{self.dir}"


@dataclass(frozen=True, order=True)
class Line2:
    base: Point2
    dir: Direction2
    id: Hashable = field(default=None, compare=False)

    def contains(self, p: Point2) -> bool:
        ex, ey = p[0] - self.base.x, p[1] - self.base.y
        return ex * self.dir.dy - ey * self.dir.dx == 0


def canonicalize_line(point, direction, id=None) -> Line3:
    """Canonical form of the line through ``point`` with the given direction.

    ``direction`` may be a :class:`Direction3` or any raw rational 3-vector;
    an all-zero vector raises :class:`ZeroDirection`.
    """
    d = direction if isinstance(direction, Direction3) else Direction3.of(*direction)
    p = point if isinstance(point, Point3) else point3(*point)
    return Line3(Point3(*_canonical_base(p, tuple(d))), d, id)


def canonicalize_line2(point, direction, id=None) -> Line2:
    d = direction if isinstance(direction, Direction2) else Direction2.of(*direction)
    p = point if isinstance(point, Point2) else point2(*point)
    return Line2(Point2(*_canonical_base(p, tuple(d))), d, id)


def line_through(p, q, id=None) -> Line3:
    p = p if isinstance(p, Point3) else point3(*p)
    q = q if isinstance(q, Point3) else point3(*q)
    return canonicalize_line(p, [b - a for a, b in zip(p, q)], id)


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _on_line3(base, d, p) -> bool:
    e = (p[0] - base[0], p[1] - base[1], p[2] - base[2])
    return e[1] * d[2] == e[2] * d[1] and e[2] * d[0] == e[0] * d[2] and e[0] * d[1] == e[1] * d[0]


def det3(u, v, w):
    return _dot(u, _cross(v, w))


def triple_spans(d1, d2, d3) -> bool:
    """True iff the three directions are linearly independent."""
    return det3(tuple(d1), tuple(d2), tuple(d3)) != 0


class IntersectionKind(enum.Enum):
    POINT = "point"
    PARALLEL = "parallel"
    SKEW = "skew"
    IDENTICAL = "identical"


class Intersection(NamedTuple):
    kind: IntersectionKind
    point: Optional[Point3] = None


def line_intersection(l1: Line3, l2: Line3) -> Intersection:
    d1, d2 = tuple(l1.dir), tuple(l2.dir)
    if d1 == d2:
        if l1.base == l2.base:
            return Intersection(IntersectionKind.IDENTICAL)
        return Intersection(IntersectionKind.PARALLEL)
    n = _cross(d1, d2)
    w = tuple(b - a for a, b in zip(l1.base, l2.base))
    if _dot(w, n) != 0:
        return Intersection(IntersectionKind.SKEW)
    # base1 + t d1 = base2 + s d2  =>  t (d1 x d2) = w x d2
    t = Fraction(_dot(_cross(w, d2), n)) / _dot(n, n)
    return Intersection(IntersectionKind.POINT, l1.point_at(t))


def count_incidences(points: Iterable, lines: Iterable) -> int:
    """Number of pairs (p, l) with p on l; works for 3-D and planar inputs alike."""
    by_dir: dict = {}
    for line in lines:
        by_dir.setdefault(line.dir, {})
        key = line.base
        by_dir[line.dir][key] = by_dir[line.dir].get(key, 0) + 1
    total = 0
    for p in points:
        for d, bases in by_dir.items():
            total += bases.get(_canonical_base(p, tuple(d)), 0)
    return total


@dataclass(frozen=True)
class AffineMap:
    """x -> A x + b with rational A (invertible) and b."""

    matrix: tuple
    offset: tuple = (Fraction(0), Fraction(0), Fraction(0))

    def __post_init__(self):
        m = tuple(tuple(to_fraction(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "offset", tuple(to_fraction(v) for v in self.offset))
        if self.determinant() == 0:
            raise ValueError("affine map is singular")

    def determinant(self) -> Fraction:
        return det3(*self.matrix)

    def linear(self, v) -> tuple:
        return tuple(sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in self.matrix)

    def apply_point(self, p) -> Point3:
        return Point3(*(a + b for a, b in zip(self.linear(p), self.offset)))

    def apply_direction(self, d) -> Direction3:
        return Direction3.of(*self.linear(tuple(d)))

    def apply_line(self, line: Line3) -> Line3:
        return canonicalize_line(self.apply_point(line.base), self.apply_direction(line.dir), line.id)

    def inverse(self) -> "AffineMap":
        m = self.matrix
        det = self.determinant()
        cof = [[_cross(m[(j + 1) % 3], m[(j + 2) % 3])[i] for j in range(3)] for i in range(3)]
        inv = tuple(tuple(c / det for c in row) for row in cof)
        off = tuple(-sum((a * b for a, b in zip(row, self.offset)), Fraction(0)) for row in inv)
        return AffineMap(inv, off)


# --- generic projection -------------------------------------------------------


@dataclass(frozen=True)
class ProjectionCertificate:
    direction: Direction3
    dropped_axis: int
    rejections: int


@dataclass(frozen=True)
class PlanarConfig:
    points: tuple
    lines: tuple


def _projector(v: Direction3):
    vec = tuple(v)
    i = max(range(3), key=lambda k: (abs(vec[k]), -k))
    keep = [k for k in range(3) if k != i]

    def proj(p):
        s = Fraction(p[i]) / vec[i]
        return tuple(p[k] - vec[k] * s for k in keep)

    return i, proj


def _random_direction(rng: random.Random) -> Direction3:
    while True:
        v = [rng.randint(-64, 64) for _ in range(3)]
        if any(v):
            return Direction3.of(*v)


def project_generic(points: Sequence[Point3], lines: Sequence[Line3], seed: int,
                    max_tries: int = GENERICITY_RETRY_LIMIT, candidates=None):
    """Project a 3-D configuration onto a plane along a seeded random direction.

    A direction is accepted only if it keeps distinct points distinct, distinct
    lines distinct, no line collapses to a point, and the incidence count is
    unchanged (projection never destroys incidences, so equal counts mean no
    incidence was created).  ``candidates`` overrides the random draws and is
    meant for tests.

    Returns ``(PlanarConfig, ProjectionCertificate)``.
    """
    rng = random.Random(seed)
    draws = iter(candidates) if candidates is not None else None
    distinct_points = set(points)
    incidences = count_incidences(distinct_points, lines)
    for attempt in range(max_tries):
        if draws is not None:
            try:
                raw = next(draws)
            except StopIteration:
                break
            v = raw if isinstance(raw, Direction3) else Direction3.of(*raw)
        else:
            v = _random_direction(rng)
        axis, proj = _projector(v)
        if any(line.dir == v for line in lines):
            continue
        images = {proj(p) for p in distinct_points}
        if len(images) != len(distinct_points):
            continue
        planar_lines = tuple(
            canonicalize_line2(proj(line.base), proj(tuple(line.dir)), line.id) for line in lines
        )
        if len(set(planar_lines)) != len(set(lines)):
            continue
        planar_points = tuple(Point2(*proj(p)) for p in points)
        if count_incidences(set(planar_points), planar_lines) != incidences:
            continue
        return PlanarConfig(planar_points, planar_lines), ProjectionCertificate(v, axis, attempt)
    raise GenericityExhausted(f"no generic projection direction found in {max_tries} draws")
