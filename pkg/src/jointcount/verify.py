"""Brute-force cross-checks for small inputs.

These are deliberately naive: every triple of lines is examined directly,
without the pairwise-intersection bucketing used by the joints engine.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import Line3, Point3, triple_spans

ORACLE_LINE_LIMIT = 60


def _meet(a: Line3, b: Line3) -> Optional[Point3]:
    """Solve a.base + t a.dir = b.base + s b.dir by Cramer's rule on a nonsingular 2x2 minor."""
    u, v = tuple(a.dir), tuple(b.dir)
    w = [q - p for p, q in zip(a.base, b.base)]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        det = -u[i] * v[j] + u[j] * v[i]
        if det == 0:
            continue
        t = Fraction(-w[i] * v[j] + w[j] * v[i], det)
        s = Fraction(u[i] * w[j] - u[j] * w[i], det)
        p = Point3(*(c + t * e for c, e in zip(a.base, u)))
        if all(p[k] == b.base[k] + s * v[k] for k in range(3)):
            return p
        return None
    return None


def brute_force_joints(lines: Sequence[Line3]) -> Dict[Point3, Tuple[int, int]]:
    """Map joint -> (lines through it, spanning triples through it)."""
    triples: Dict[Point3, int] = {}
    for a, b, c in combinations(lines, 3):
        if not triple_spans(a.dir, b.dir, c.dir):
            continue
        p = _meet(a, b)
        if p is not None and c.contains(p):
            triples[p] = triples.get(p, 0) + 1
    return {p: (sum(1 for ln in lines if ln.contains(p)), n) for p, n in triples.items()}


@dataclass(frozen=True)
class Mismatch:
    location: Point3
    engine: Optional[Tuple[int, int]]
    oracle: Optional[Tuple[int, int]]


def compare_joints(records, oracle: Dict[Point3, Tuple[int, int]]) -> List[Mismatch]:
    engine = {r.location: (r.k_count, r.multiplicity) for r in records}
    out = []
    for p in sorted(set(engine) | set(oracle)):
        if engine.get(p) != oracle.get(p):
            out.append(Mismatch(p, engine.get(p), oracle.get(p)))
    return out
