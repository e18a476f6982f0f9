"""Audits of how lines meet the zero set of a polynomial.

Everything reduces to restricting a polynomial to a line: the restriction is
identically zero iff the line lies in the zero set, and otherwise has at most
``deg p`` roots.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, List, Sequence, Tuple

from .errors import LineInZeroSet
from .geometry import Line3
from .poly import MultiPoly, count_real_roots, rational_roots, restrict_to_line, square_free_part


def lines_in_zero_set(p: MultiPoly, lines: Sequence[Line3]) -> List[Line3]:
    if p.is_zero():
        raise ValueError("the zero polynomial vanishes on every line")
    return [ln for ln in lines if restrict_to_line(p, ln).is_zero()]


@dataclass(frozen=True)
class LineMeeting:
    line_id: Hashable
    rational_params: Tuple[Fraction, ...]
    real_roots: int
    nonrational_possible: bool

    @property
    def count(self) -> int:
        return len(self.rational_params)


@dataclass(frozen=True)
class SurfaceIncidences:
    count: int
    real_count: int
    per_line: Tuple[LineMeeting, ...]


def surface_line_incidences(p: MultiPoly, lines: Sequence[Line3]) -> SurfaceIncidences:
    """Distinct rational crossing parameters of each line with Z(p).

    ``real_roots`` counts distinct real crossings exactly (Sturm), so a line
    with irrational crossings shows ``real_roots > count``.
    """
    deg = p.degree
    meetings = []
    for ln in lines:
        q = restrict_to_line(p, ln)
        if q.is_zero():
            raise LineInZeroSet(f"line {ln.id!r} lies in the zero set")
        if q.degree <= 0:
            meetings.append(LineMeeting(ln.id, (), 0, False))
            continue
        rr = rational_roots(q)
        roots = tuple(rr.distinct())
        real = count_real_roots(q)
        assert real <= deg and len(roots) <= real, "restriction has more roots than its degree"
        meetings.append(LineMeeting(ln.id, roots, real, rr.nonrational_roots_possible))
    return SurfaceIncidences(
        sum(m.count for m in meetings), sum(m.real_roots for m in meetings), tuple(meetings)
    )


@dataclass(frozen=True)
class CriticalCensus:
    critical: Tuple[Line3, ...]
    bound: int
    within_bound: bool
    square_free: MultiPoly


def critical_line_census(p: MultiPoly, candidate_lines: Sequence[Line3]) -> CriticalCensus:
    """Candidates on which the square-free part and its whole gradient vanish."""
    sf = square_free_part(p)
    grad = sf.gradient()
    critical = []
    for ln in candidate_lines:
        if restrict_to_line(sf, ln).is_zero() and all(
            g.is_zero() or restrict_to_line(g, ln).is_zero() for g in grad
        ):
            critical.append(ln)
    bound = p.degree**2
    return CriticalCensus(tuple(critical), bound, len(critical) <= bound, sf)


@dataclass(frozen=True)
class CommonLines:
    lines: Tuple[Line3, ...]
    bound: int
    within_bound: bool
    checked: bool


def common_zero_lines(p1: MultiPoly, p2: MultiPoly, candidates: Sequence[Line3],
                      coprime_asserted: bool) -> CommonLines:
    """Candidates contained in both zero sets.

    The count is compared with ``deg p1 * deg p2`` only when the caller vouches
    that the two polynomials share no factor; otherwise ``within_bound`` is
    reported as true and ``checked`` as false.
    """
    common = tuple(
        ln for ln in candidates
        if restrict_to_line(p1, ln).is_zero() and restrict_to_line(p2, ln).is_zero()
    )
    bound = p1.degree * p2.degree
    within = len(common) <= bound if coprime_asserted else True
    return CommonLines(common, bound, within, bool(coprime_asserted))
