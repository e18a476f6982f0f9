"""Joints of polynomially parametrised curves t -> (x(t), y(t), z(t)).

Intersections are found by eliminating one parameter with Sylvester
resultants and keeping only rational, exactly verified parameter pairs.  When
an elimination polynomial might have irrational real roots the result is
marked incomplete instead of silently dropping them.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .errors import DegenerateElimination, EmptyConfig, VanishingDerivative
from .geometry import AffineMap, Direction3, Line3, Point3, to_fraction
from .joints import multiplicity, weighted_bound
from .poly import BiPoly, UniPoly, rational_roots, sylvester_resultant, unipoly_gcd


@dataclass(frozen=True)
class ParamCurve:
    px: UniPoly
    py: UniPoly
    pz: UniPoly
    id: Hashable = None
    degree_bound: Optional[int] = None

    def __post_init__(self):
        coords = tuple(UniPoly(c.coeffs if isinstance(c, UniPoly) else c, "t") for c in (self.px, self.py, self.pz))
        for name, c in zip(("px", "py", "pz"), coords):
            object.__setattr__(self, name, c)
        deg = max(c.degree for c in coords)
        if deg < 1:
            raise ValueError("a parametrised curve needs a non-constant coordinate")
        if self.degree_bound is None:
            object.__setattr__(self, "degree_bound", deg)
        elif deg > self.degree_bound:
            raise ValueError(f"coordinate degree {deg} exceeds bound {self.degree_bound}")

    @classmethod
    def from_coeffs(cls, x, y, z, id=None, degree_bound=None) -> "ParamCurve":
        """Coordinates given as ascending coefficient lists."""
        return cls(UniPoly(x), UniPoly(y), UniPoly(z), id, degree_bound)

    @classmethod
    def from_line(cls, line: Line3, id=None) -> "ParamCurve":
        return cls(*(UniPoly([b, d]) for b, d in zip(line.base, line.dir)), id=line.id if id is None else id)

    @property
    def coords(self) -> Tuple[UniPoly, UniPoly, UniPoly]:
        return (self.px, self.py, self.pz)

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.coords)

    def point_at(self, t) -> Point3:
        t = to_fraction(t)
        return Point3(*(c(t) for c in self.coords))

    def velocity(self, t) -> Tuple[Fraction, Fraction, Fraction]:
        t = to_fraction(t)
        return tuple(c.derivative()(t) for c in self.coords)

    def parameters_at(self, x: Point3) -> Tuple[List[Fraction], bool]:
        """Rational parameters mapping to x, and whether that list is certainly complete."""
        polys = [c - v for c, v in zip(self.coords, x) if not (c - v).is_zero()]
        g = polys[0]
        for q in polys[1:]:
            g = unipoly_gcd(g, q)
        if g.degree <= 0:
            return [], True
        rr = rational_roots(g)
        return rr.distinct(), not rr.nonrational_roots_possible

    def reparametrize(self, a, c) -> "ParamCurve":
        """Same curve traced by t -> self(a*t + c)."""
        a, c = to_fraction(a), to_fraction(c)
        if a == 0:
            raise ValueError("reparametrisation must be invertible")
        lin = UniPoly([c, a])
        return ParamCurve(*(p(lin) for p in self.coords), id=self.id, degree_bound=self.degree_bound)

    def transform(self, amap: AffineMap) -> "ParamCurve":
        out = []
        for row, off in zip(amap.matrix, amap.offset):
            acc = UniPoly([off])
            for a, p in zip(row, self.coords):
                acc = acc + p * a
            out.append(acc)
        return ParamCurve(*out, id=self.id, degree_bound=self.degree_bound)


@dataclass(frozen=True)
class TangentSet:
    location: Point3
    directions: Tuple[Direction3, ...]
    contributing: Tuple[Tuple[Hashable, Fraction], ...]


@dataclass(frozen=True)
class CurveJointRecord:
    location: Point3
    tangent_set: TangentSet
    multiplicity: int


@dataclass(frozen=True)
class ParameterPairs:
    pairs: Tuple[Tuple[Fraction, Fraction], ...]
    complete: bool
    degenerate: bool = False


def tangent_direction(curve: ParamCurve, t) -> Direction3:
    v = curve.velocity(t)
    if not any(v):
        raise VanishingDerivative(f"curve {curve.id!r} has zero velocity at t = {t}")
    return Direction3.of(*v)


def _difference(g: UniPoly, d: UniPoly) -> BiPoly:
    """g(t) - d(s) as a polynomial in s with coefficients in t."""
    coeffs = [UniPoly([-c]) for c in d.coeffs] or [UniPoly([])]
    coeffs[0] = coeffs[0] + g
    return BiPoly(coeffs, ("s", "t"))


def _gcd_all(polys: Sequence[UniPoly]) -> UniPoly:
    g = polys[0]
    for q in polys[1:]:
        g = unipoly_gcd(g, q)
    return g.monic()


def _eliminate(bivariates: Sequence[BiPoly], univariates: Sequence[UniPoly]) -> Optional[UniPoly]:
    """gcd of all nonzero elimination polynomials in t, or None when every one vanishes."""
    constraints = [u for u in univariates if not u.is_zero()]
    with_s = [b for b in bivariates if b.degree_in("s") >= 1]
    for a, b in combinations(with_s, 2):
        r = sylvester_resultant(a, b, "s")
        if not r.is_zero():
            constraints.append(r)
    if not constraints:
        return None
    return _gcd_all([UniPoly(c.coeffs, "t") for c in constraints])


def _solve_s(bivariates: Sequence[BiPoly], t0: Fraction) -> Tuple[List[Fraction], bool]:
    hs = [b.at_other(t0) for b in bivariates if b.degree_in("s") >= 1]
    hs = [h for h in hs if not h.is_zero()]
    if not hs:
        return [], False
    h = _gcd_all(hs)
    if h.degree <= 0:
        return [], True
    rr = rational_roots(h)
    return rr.distinct(), not rr.nonrational_roots_possible


def curve_pair_intersections(gamma: ParamCurve, delta: ParamCurve) -> ParameterPairs:
    """Rational (t, s) with gamma(t) == delta(s), verified exactly."""
    diffs = [_difference(g, d) for g, d in zip(gamma.coords, delta.coords)]
    univariate = [g - d.coeffs[0] if d.coeffs else g for g, d in zip(gamma.coords, delta.coords) if d.degree <= 0]
    if any(u.degree == 0 for u in univariate):
        # a coordinate can never agree
        return ParameterPairs((), True)
    g = _eliminate(diffs, univariate)
    if g is None:
        raise DegenerateElimination(
            f"curves {gamma.id!r} and {delta.id!r} share a component: no coordinate pair eliminates s"
        )
    if g.degree <= 0:
        return ParameterPairs((), True)
    rr = rational_roots(g)
    complete = not rr.nonrational_roots_possible
    pairs = []
    for t0 in rr.distinct():
        ss, ok = _solve_s(diffs, t0)
        complete &= ok
        target = gamma.point_at(t0)
        pairs.extend((t0, s0) for s0 in ss if delta.point_at(s0) == target)
    return ParameterPairs(tuple(sorted(pairs)), complete)


def _divided_difference(p: UniPoly) -> BiPoly:
    """(p(t) - p(s)) / (t - s) as a polynomial in s with coefficients in t."""
    terms: Dict[Tuple[int, int], Fraction] = {}
    for n, c in enumerate(p.coeffs):
        for i in range(n):
            j = n - 1 - i
            terms[(j, i)] = terms.get((j, i), Fraction(0)) + c
    return BiPoly.from_terms(terms, ("s", "t"))


def curve_self_crossings(curve: ParamCurve) -> ParameterPairs:
    """Rational t > s with curve(t) == curve(s).

    ``degenerate`` is set when the curve retraces itself (infinitely many
    crossing pairs); such results are also marked incomplete.
    """
    coords = [c for c in curve.coords if c.degree >= 1]
    if any(c.degree == 1 for c in coords):
        return ParameterPairs((), True)
    divided = [_divided_difference(c) for c in coords]
    g = _eliminate(divided, [])
    if g is None:
        return ParameterPairs((), False, degenerate=True)
    if g.degree <= 0:
        return ParameterPairs((), True)
    rr = rational_roots(g)
    complete = not rr.nonrational_roots_possible
    found = set()
    for t0 in rr.distinct():
        ss, ok = _solve_s(divided, t0)
        complete &= ok
        for s0 in ss:
            if s0 != t0 and curve.point_at(s0) == curve.point_at(t0):
                found.add((max(t0, s0), min(t0, s0)))
    return ParameterPairs(tuple(sorted(found)), complete)


@dataclass(frozen=True)
class CurveJoints:
    joints: Tuple[CurveJointRecord, ...]
    complete: bool
    flagged_pairs: int = 0


def detect_curve_joints(curves: Sequence[ParamCurve]) -> CurveJoints:
    curves = list(curves)
    ids = [c.id for c in curves]
    if len(set(ids)) != len(ids):
        raise ValueError("curve ids must be unique")
    complete = True
    flagged = 0
    locations: Dict[Point3, set] = {}
    for i, j in combinations(range(len(curves)), 2):
        res = curve_pair_intersections(curves[i], curves[j])
        if not res.complete:
            complete = False
            flagged += 1
        for t, _ in res.pairs:
            locations.setdefault(curves[i].point_at(t), set()).update((i, j))
    for i, c in enumerate(curves):
        res = curve_self_crossings(c)
        if not res.complete:
            complete = False
            flagged += 1
        for t, _ in res.pairs:
            locations.setdefault(c.point_at(t), set()).add(i)

    records = []
    for x in sorted(locations):
        dirs = {}
        contributing = []
        for i in sorted(locations[x]):
            params, ok = curves[i].parameters_at(x)
            complete &= ok
            for t in params:
                v = curves[i].velocity(t)
                if not any(v):
                    continue
                contributing.append((curves[i].id, t))
                dirs.setdefault(Direction3.of(*v), None)
        directions = tuple(sorted(dirs))
        n = multiplicity(directions) if len(directions) >= 3 else 0
        if n:
            records.append(CurveJointRecord(x, TangentSet(x, directions, tuple(contributing)), n))
    return CurveJoints(tuple(records), complete, flagged)


@dataclass(frozen=True)
class CurveBoundReport:
    curve_count: int
    joint_count: int
    weighted_sum: Decimal
    rhs: Decimal
    ratio: Decimal
    complete: bool
    flagged_pairs: int


def curve_bound_report(curves: Sequence[ParamCurve], result: Optional[CurveJoints] = None) -> CurveBoundReport:
    curves = list(curves)
    if not curves:
        raise EmptyConfig("bound report needs at least one curve")
    if result is None:
        result = detect_curve_joints(curves)
    total, rhs, ratio = weighted_bound((j.multiplicity for j in result.joints), len(curves))
    return CurveBoundReport(len(curves), len(result.joints), total, rhs, ratio,
                            result.complete, result.flagged_pairs)
