"""Joint detection, multiplicities and the bound reports built on them."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from . import _accel
from .errors import EmptyConfig, HypothesisViolated, ResourceLimit
from .geometry import (
    Direction3,
    IntersectionKind,
    Line2,
    Line3,
    Point2,
    Point3,
    count_incidences,
    line_intersection,
    project_generic,
)

log = logging.getLogger(__name__)

# Triple enumeration is cubic; beyond this many lines through one point we refuse.
MAX_LINES_PER_JOINT = 10_000
# Decimal digits used for sums of square roots (~133 bits of mantissa).
REPORT_PRECISION = 40


@dataclass(frozen=True)
class LineConfig:
    lines: Tuple[Line3, ...]
    provenance: str = ""
    duplicates_removed: int = 0

    @classmethod
    def from_lines(cls, lines: Iterable[Line3], provenance: str = "") -> "LineConfig":
        """Deduplicate (keeping the first copy) and give id-less lines their index."""
        seen = set()
        kept: List[Line3] = []
        dropped = 0
        for line in lines:
            if line in seen:
                dropped += 1
                continue
            seen.add(line)
            kept.append(line)
        kept = [ln if ln.id is not None else ln.with_id(i) for i, ln in enumerate(kept)]
        ids = [ln.id for ln in kept]
        if len(set(ids)) != len(ids):
            raise ValueError("line ids must be unique")
        if dropped:
            log.warning("collapsed %d duplicate line(s) in %s", dropped, provenance or "input")
        return cls(tuple(kept), provenance, dropped)

    @property
    def L(self) -> int:
        return len(self.lines)

    def __len__(self):
        return len(self.lines)

    def lines_through(self, x: Point3) -> List[Line3]:
        return [ln for ln in self.lines if ln.contains(x)]

    def subconfig(self, ids) -> "LineConfig":
        ids = set(ids)
        return LineConfig(tuple(ln for ln in self.lines if ln.id in ids), self.provenance)


@dataclass(frozen=True)
class JointRecord:
    location: Point3
    incident_line_ids: Tuple[Hashable, ...]
    k_count: int
    multiplicity: int


def _sort_ids(ids) -> tuple:
    return tuple(sorted(ids, key=lambda v: (type(v).__name__, v)))


def multiplicity(dirs: Sequence[Direction3]) -> int:
    """Number of unordered triples among ``dirs`` that span R^3."""
    if len(dirs) > MAX_LINES_PER_JOINT:
        raise ResourceLimit(f"{len(dirs)} lines through one point exceeds {MAX_LINES_PER_JOINT}")
    return _accel.count_spanning_triples([tuple(d) for d in dirs])


def concurrency_points(lines: Sequence) -> Dict[object, set]:
    """Map every pairwise intersection point to the indices of lines through it."""
    meet = _meet3 if lines and isinstance(lines[0], Line3) else _meet2
    points: Dict[object, set] = {}
    n = len(lines)
    for i in range(n):
        li = lines[i]
        for j in range(i + 1, n):
            p = meet(li, lines[j])
            if p is not None:
                s = points.setdefault(p, set())
                s.add(i)
                s.add(j)
    return points


def _meet3(a: Line3, b: Line3) -> Optional[Point3]:
    if a.dir == b.dir:
        return None
    r = line_intersection(a, b)
    return r.point if r.kind is IntersectionKind.POINT else None


def _meet2(a: Line2, b: Line2) -> Optional[Point2]:
    d1, d2 = tuple(a.dir), tuple(b.dir)
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    if cross == 0:
        return None
    wx, wy = b.base.x - a.base.x, b.base.y - a.base.y
    t = Fraction(wx * d2[1] - wy * d2[0]) / cross
    return Point2(a.base.x + t * d1[0], a.base.y + t * d1[1])


def detect_joints(config: LineConfig) -> List[JointRecord]:
    """All joints of the configuration, sorted by location."""
    lines = config.lines
    records = []
    for x, idx in sorted(concurrency_points(lines).items()):
        if len(idx) < 3:
            continue
        n = multiplicity([lines[i].dir for i in idx])
        if n:
            records.append(JointRecord(x, _sort_ids(lines[i].id for i in idx), len(idx), n))
    return records


@dataclass(frozen=True)
class DyadicStats:
    buckets: Dict[Tuple[int, int], Tuple[JointRecord, ...]]

    @property
    def totals(self) -> Dict[Tuple[int, int], int]:
        return {key: len(v) for key, v in self.buckets.items()}

    def rows(self) -> List[Tuple[int, int, int]]:
        return [(lam, mu, len(v)) for (lam, mu), v in sorted(self.buckets.items())]


def dyadic_class(n: int) -> int:
    """The unique e with 2**e <= n < 2**(e+1)."""
    if n < 1:
        raise ValueError("dyadic classes are defined for n >= 1")
    return n.bit_length() - 1


def dyadic_stats(joints: Iterable[JointRecord]) -> DyadicStats:
    buckets: Dict[Tuple[int, int], List[JointRecord]] = {}
    for j in joints:
        key = (dyadic_class(j.multiplicity), dyadic_class(j.k_count))
        buckets.setdefault(key, []).append(j)
    return DyadicStats({k: tuple(v) for k, v in sorted(buckets.items())})


@dataclass(frozen=True)
class BoundReport:
    L: int
    joint_count: int
    weighted_sum: Decimal
    rhs: Decimal
    ratio: Decimal


def weighted_bound(multiplicities: Iterable[int], L: int) -> Tuple[Decimal, Decimal, Decimal]:
    """(sum of sqrt N(x), L^{3/2}, their ratio) at REPORT_PRECISION digits."""
    with localcontext() as ctx:
        ctx.prec = REPORT_PRECISION
        total = sum((Decimal(n).sqrt() for n in multiplicities), Decimal(0))
        rhs = Decimal(L) * Decimal(L).sqrt()
        return +total, +rhs, total / rhs


def bound_report(config: LineConfig, joints: Optional[List[JointRecord]] = None) -> BoundReport:
    if config.L == 0:
        raise EmptyConfig("bound report needs at least one line")
    if joints is None:
        joints = detect_joints(config)
    total, rhs, ratio = weighted_bound((j.multiplicity for j in joints), config.L)
    return BoundReport(config.L, len(joints), total, rhs, ratio)


@dataclass(frozen=True)
class Prop12Report:
    N: int
    k: int
    class_size: int
    lhs: Decimal
    term1: Decimal
    term2: Decimal


def dyadic_class_members(joints: Iterable[JointRecord], N: int, k: int) -> List[JointRecord]:
    """Joints with N <= N(x) < 2N lying on at least k and fewer than 2k lines."""
    return [j for j in joints if N <= j.multiplicity < 2 * N and k <= j.k_count < 2 * k]


def proposition12_report(config: LineConfig, N: int, k: int,
                         joints: Optional[List[JointRecord]] = None) -> Prop12Report:
    if N < 1 or k < 3:
        raise ValueError("need N >= 1 and k >= 3")
    if joints is None:
        joints = detect_joints(config)
    size = len(dyadic_class_members(joints, N, k))
    L = config.L
    with localcontext() as ctx:
        ctx.prec = REPORT_PRECISION
        rn, rk = Decimal(N).sqrt(), Decimal(k).sqrt()
        lhs = size * rn
        term1 = Decimal(L) * Decimal(L).sqrt() / rk
        term2 = Decimal(L) / Decimal(k) * rn
    return Prop12Report(N, k, size, lhs, term1, term2)


# --- lemma checkers -----------------------------------------------------------


@dataclass(frozen=True)
class Lemma31Result:
    holds: bool
    lhs_lines: int
    rhs: Fraction
    multiplicity: int
    sub_multiplicity: int


@dataclass(frozen=True)
class Lemma32Result:
    holds: bool
    off_plane_lines: int
    rhs: Fraction
    multiplicity: int


def _joint_at(config: LineConfig, x: Point3, k: int) -> Tuple[List[Line3], int]:
    if k < 1:
        raise HypothesisViolated("k must be a positive integer")
    through = config.lines_through(x)
    n = multiplicity([ln.dir for ln in through])
    if n == 0:
        raise HypothesisViolated(f"{x} is not a joint of the configuration")
    if len(through) > 2 * k:
        raise HypothesisViolated(f"{x} lies on {len(through)} > 2k = {2 * k} lines")
    return through, n


def check_lemma31(config: LineConfig, subset_ids, x: Point3, k: int) -> Lemma31Result:
    """Count lines outside the subcollection through a joint whose multiplicity it at most halves."""
    subset_ids = set(subset_ids)
    known = {ln.id for ln in config.lines}
    if not subset_ids <= known:
        raise HypothesisViolated("subset contains ids not in the configuration")
    through, n = _joint_at(config, x, k)
    inside = [ln for ln in through if ln.id in subset_ids]
    n_sub = multiplicity([ln.dir for ln in inside])
    if 2 * n_sub > n:
        raise HypothesisViolated(f"subcollection multiplicity {n_sub} exceeds N/2 = {Fraction(n, 2)}")
    outside = len(through) - len(inside)
    rhs = Fraction(n, 1000 * k * k)
    return Lemma31Result(outside >= rhs, outside, rhs, n, n_sub)


def check_lemma32(config: LineConfig, x: Point3, plane_normal, k: int) -> Lemma32Result:
    """Count joint lines not contained in the plane through x with the given normal."""
    through, n = _joint_at(config, x, k)
    nv = tuple(plane_normal)
    if not any(nv):
        raise HypothesisViolated("plane normal is zero")
    off = sum(1 for ln in through if sum(a * b for a, b in zip(ln.dir, nv)) != 0)
    rhs = Fraction(n, 1000 * k * k)
    return Lemma32Result(off >= rhs, off, rhs, n)


# --- incidences ----------------------------------------------------------------


@dataclass(frozen=True)
class STReport:
    I: int
    bound: Decimal
    ratio: Decimal
    projected: bool = False
    projection: object = field(default=None, compare=False)


def _is_spatial(points, lines) -> bool:
    if points:
        return isinstance(points[0], Point3)
    return bool(lines) and isinstance(lines[0], Line3)


def st_bound(P: int, L: int) -> Decimal:
    """|P|^{2/3} |L|^{2/3} + |P| + |L|."""
    with localcontext() as ctx:
        ctx.prec = REPORT_PRECISION
        prod = Decimal(P * L)
        cross = (prod * prod) ** (Decimal(1) / Decimal(3)) if prod else Decimal(0)
        return cross + P + L


def st_report(points: Sequence, lines: Sequence, seed: int = 0) -> STReport:
    """Incidence count against the point-line incidence bound (3-D inputs are projected first)."""
    points, lines = list(points), list(lines)
    projected, cert = False, None
    if _is_spatial(points, lines):
        planar, cert = project_generic(points, lines, seed)
        points, lines, projected = list(planar.points), list(planar.lines), True
    inc = count_incidences(points, lines)
    bound = st_bound(len(points), len(lines))
    with localcontext() as ctx:
        ctx.prec = REPORT_PRECISION
        ratio = Decimal(inc) / bound if bound else Decimal(0)
    return STReport(inc, bound, ratio, projected, cert)


@dataclass(frozen=True)
class RichPointsReport:
    k: int
    S: int
    bound_terms: Tuple[Fraction, Fraction]


def rich_points_report(lines: Sequence, k: int) -> RichPointsReport:
    """Points lying on at least k of the lines, with the two terms L^2/k^3 and L/k."""
    if k < 2:
        raise ValueError("k must be at least 2")
    lines = list(lines)
    rich = sum(1 for idx in concurrency_points(lines).values() if len(idx) >= k)
    L = len(lines)
    return RichPointsReport(k, rich, (Fraction(L * L, k**3), Fraction(L, k)))
