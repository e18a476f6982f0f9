"""Polynomial partitioning of finite point sets in R^3.

A degree-<=d polynomial is a linear functional on the lift of a point to its
monomials, so bisecting several point sets at once is a search over
coefficient vectors.  The search here is heuristic (float directions, seeded)
but every reported count is obtained by exact rational evaluation of the
returned polynomial.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from . import _accel
from .errors import BudgetTooSmall, TooManySets
from .geometry import Point3, to_fraction
from .poly import MultiPoly, X, monomials

ZBUCKET = "Z"
SignVector = Tuple[int, ...]

DEFAULT_MAX_ITER = 2000
_RESTART_PATIENCE = 12
_COEFF_GRID = 1 << 24


def lifted_dimension(d: int) -> int:
    """Number of non-constant monomials of degree <= d in three variables."""
    return math.comb(d + 3, 3) - 1


def veronese_lift(pt, d: int) -> Tuple[Fraction, ...]:
    """Values of all non-constant monomials of degree <= d at pt (graded-lex order)."""
    if d < 1:
        raise ValueError("lift degree must be at least 1")
    vals = [to_fraction(v) for v in pt]
    pw = [[v**k for k in range(d + 1)] for v in vals]
    return tuple(pw[0][a] * pw[1][b] * pw[2][c] for a, b, c in monomials(d))


@dataclass(frozen=True)
class PointSet:
    points: Tuple[Point3, ...]
    id: Hashable = None
    has_duplicates: bool = False

    @classmethod
    def of(cls, points, id=None) -> "PointSet":
        pts = tuple(p if isinstance(p, Point3) else Point3(*map(to_fraction, p)) for p in points)
        return cls(pts, id, len(set(pts)) != len(pts))

    def __len__(self):
        return len(self.points)


class SetCounts(NamedTuple):
    n_pos: int
    n_neg: int
    n_zero: int


@dataclass(frozen=True)
class BisectionStep:
    poly: MultiPoly
    per_set_counts: Tuple[SetCounts, ...]
    converged: bool
    iterations: int
    degree_budget: int = 0

    def discrepancy(self, sizes: Sequence[int]) -> int:
        return sum(_excess(c, n) for c, n in zip(self.per_set_counts, sizes))


def _half(n: int) -> int:
    return (n + 1) // 2


def _excess(c: SetCounts, n: int) -> int:
    h = _half(n)
    return max(0, c.n_pos - h) + max(0, c.n_neg - h)


class SignEvaluator:
    """Exact signs of a fixed polynomial using only integer arithmetic.

    The polynomial is scaled to integer coefficients and each point is
    cleared of denominators, which multiplies the value by a positive
    constant and so preserves its sign.
    """

    def __init__(self, poly: MultiPoly):
        den = math.lcm(*(c.denominator for c in poly.terms.values())) if poly.terms else 1
        self.deg = max(poly.degree, 0)
        self.terms = [(e, int(c * den)) for e, c in poly.terms.items()]
        self.top = [max((e[i] for e, _ in self.terms), default=0) for i in range(3)]

    def sign(self, pt) -> int:
        D = math.lcm(*(to_fraction(v).denominator for v in pt))
        X = [int(to_fraction(v) * D) for v in pt]
        pw = [[1] for _ in range(3)]
        for i in range(3):
            for _ in range(self.top[i]):
                pw[i].append(pw[i][-1] * X[i])
        dpw = [1]
        if D != 1:
            for _ in range(self.deg):
                dpw.append(dpw[-1] * D)
        total = 0
        for (a, b, c), coef in self.terms:
            term = coef * pw[0][a] * pw[1][b] * pw[2][c]
            if D != 1:
                term *= dpw[self.deg - a - b - c]
            total += term
        return (total > 0) - (total < 0)


def exact_counts(poly: MultiPoly, points: Sequence[Point3]) -> SetCounts:
    ev = SignEvaluator(poly)
    tally = Counter(ev.sign(p) for p in points)
    return SetCounts(tally[1], tally[-1], tally[0])


def is_bisected(c: SetCounts) -> bool:
    n = c.n_pos + c.n_neg + c.n_zero
    return c.n_pos <= _half(n) and c.n_neg <= _half(n)


class _Lifted:
    """Exact and float monomial features of a point cloud in normalised coordinates."""

    def __init__(self, points: Sequence[Point3], d: int):
        coords = list(zip(*points)) if points else [(0,), (0,), (0,)]
        self.center = tuple((min(c) + max(c)) / 2 for c in coords)
        spread = max(max(abs(v - m) for v in c) for c, m in zip(coords, self.center))
        # power-of-two scale keeps the exact arithmetic cheap
        self.scale = _pow2_ceiling(spread) if spread > 0 else Fraction(1)
        self.d = d
        self.points = list(points)
        self._exact: Dict[int, Tuple[Fraction, ...]] = {}
        cen = np.array([float(m) for m in self.center])
        u = (np.array([[float(v) for v in p] for p in points], dtype=float).reshape(-1, 3) - cen) / float(self.scale)
        cols = [np.ones(len(u))] + [u[:, 0] ** a * u[:, 1] ** b * u[:, 2] ** e for a, b, e in monomials(d)]
        self.floats = np.column_stack(cols)

    def exact(self, i: int) -> Tuple[Fraction, ...]:
        if i not in self._exact:
            self._exact[i] = (Fraction(1),) + veronese_lift(self.normalise(self.points[i]), d=self.d)
        return self._exact[i]

    def normalise(self, p):
        return tuple((v - m) / self.scale for v, m in zip(p, self.center))

    def polynomial(self, coeffs: Sequence[Fraction]) -> MultiPoly:
        """The polynomial in x, y, z whose lifted coefficients are ``coeffs``."""
        u = [
            (MultiPoly.var(i) - self.center[i]) * (1 / self.scale) for i in range(3)
        ]
        terms = {(0, 0, 0): coeffs[0]}
        body = MultiPoly(terms)
        for c, (a, b, e) in zip(coeffs[1:], monomials(self.d)):
            if c:
                body = body + MultiPoly({(a, b, e): c})
        poly = body.substitute(*u)
        return _primitive(poly)


def _pow2_ceiling(v: Fraction) -> Fraction:
    """Smallest power of two (possibly fractional) that is >= v > 0."""
    k = v.numerator.bit_length() - v.denominator.bit_length()
    p = Fraction(2) ** k
    while p < v:
        p *= 2
    while p / 2 >= v:
        p /= 2
    return p


def _primitive(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        return p
    den = math.lcm(*(c.denominator for c in p.terms.values()))
    nums = [int(c * den) for c in p.terms.values()]
    g = math.gcd(*nums)
    return p * Fraction(den, g)


def _exact_projection(rows: List[Tuple[Fraction, ...]], c: List[Fraction]) -> Optional[List[Fraction]]:
    """Closest vector to c (Euclidean) annihilated by every row, computed exactly."""
    basis: List[List[Fraction]] = []
    for r in rows:
        # Gram-Schmidt over Q; dependent rows add no constraint
        v = list(r)
        for b, bb in basis:
            coef = sum(x * y for x, y in zip(v, b)) / bb
            if coef:
                v = [x - coef * y for x, y in zip(v, b)]
        nn = sum(x * x for x in v)
        if nn:
            basis.append((v, nn))
    out = list(c)
    for b, bb in basis:
        coef = sum(x * y for x, y in zip(out, b)) / bb
        if coef:
            out = [x - coef * y for x, y in zip(out, b)]
    if not any(out):
        return None
    return out


def discrete_ham_sandwich(sets: Sequence[PointSet], d: int, seed: int = 0,
                          max_iter: int = DEFAULT_MAX_ITER) -> BisectionStep:
    """Search for a nonzero polynomial of degree <= d bisecting every set.

    Each restart follows a zero of the smoothed balance map
    c -> (mean of tanh(<lift(p), c> / tau) over each set) from large tau, where
    the map is linear and its zeros form a null space, down to small tau by
    damped least-norm Newton steps on the unit sphere.  The endpoint is then
    polished discretely: snap the coefficient vector so every set's median
    point lies on the zero set, and sweep a random great circle that keeps
    those medians on it.  All of this runs in floating point; a candidate is
    accepted only after its coefficients are rounded to rationals,
    re-projected exactly and every sign re-checked exactly.  If nothing
    bisects within ``max_iter`` iterations the best candidate seen is
    returned with ``converged=False``.
    """
    sets = [s if isinstance(s, PointSet) else PointSet.of(s) for s in sets]
    M = lifted_dimension(d)
    if len(sets) > M:
        raise TooManySets(f"{len(sets)} sets exceed the {M} a degree-{d} polynomial can bisect")
    sizes = [len(s) for s in sets]
    if sum(sizes) == 0:
        return BisectionStep(X, tuple(SetCounts(0, 0, 0) for _ in sets), True, 0, d)

    points = [p for s in sets for p in s.points]
    labels = np.array([i for i, s in enumerate(sets) for _ in s.points], dtype=np.int64)
    members = [np.flatnonzero(labels == i) for i in range(len(sets))]
    halves = np.array([_half(n) for n in sizes], dtype=np.int64)
    lifted = _Lifted(points, d)
    # Search inside the row space of the lifted points so that no candidate
    # vanishes on all of them, unless that space is too small to guarantee a
    # bisection, in which case the full space (and its trivial answers) is used.
    _, sv, vt = np.linalg.svd(lifted.floats, full_matrices=False)
    rank = int((sv > 1e-9 * sv[0]).sum())
    basis = vt[:rank] if rank > len(sets) else np.eye(M + 1)
    F = lifted.floats @ basis.T
    rng = np.random.default_rng(seed)

    def score(c, pivots):
        vals = F @ c
        vals[pivots] = 0.0
        tol = 1e-9 * max(float(np.abs(vals).max()), 1e-300)
        return int(_accel.sign_discrepancy(vals, labels, halves, tol)[0])

    best: Optional[Tuple[int, np.ndarray, List[int]]] = None
    tried = set()
    iterations = 0
    while iterations < max_iter:
        iterations += 1
        c = _continuation(F, labels, sizes, rng)
        sc = score(c, [])
        if best is None or sc < best[0]:
            best = (sc, c.copy(), [])
        if sc == 0:
            step = _exact_candidate(lifted, basis.T @ c, [], sets, iterations, d)
            if step is not None and step.converged:
                return step
        stale, local = 0, None
        while iterations < max_iter and stale < _RESTART_PATIENCE:
            iterations += 1
            pivots = _medians(F @ c, members)
            A = F[pivots]
            c = c - np.linalg.lstsq(A, A @ c, rcond=None)[0]
            if np.linalg.norm(c) < 1e-12:
                break
            c = _unit(c)
            snapped = c
            c = _circle_step(F, c, A, pivots, labels, halves, rng)
            for cand in (snapped, c):
                sc = score(cand, pivots)
                if best is None or sc < best[0]:
                    best = (sc, cand.copy(), pivots)
                if sc == 0:
                    key = (tuple(pivots), tuple(np.round(cand, 6)))
                    if key not in tried:
                        tried.add(key)
                        step = _exact_candidate(lifted, basis.T @ cand, pivots, sets, iterations, d)
                        if step is not None and step.converged:
                            return step
            if local is None or sc < local:
                local, stale = sc, 0
            else:
                stale += 1
    if best is None:
        best = (0, _unit(rng.standard_normal(len(basis))), [])
    c = basis.T @ best[1]
    step = _exact_candidate(lifted, c, best[2], sets, iterations, d)
    if step is None:
        step = _exact_candidate(lifted, c, [], sets, iterations, d)
    return step


def _unit(c: np.ndarray) -> np.ndarray:
    return c / np.linalg.norm(c)


def _continuation(F, labels, sizes, rng, shrink=0.8, span=1e-5, newton=6) -> np.ndarray:
    n_sets = len(sizes)
    weights = np.zeros((n_sets, len(labels)))
    weights[labels, np.arange(len(labels))] = 1.0 / np.maximum(np.asarray(sizes, dtype=float), 1.0)[labels]
    _, sv, vt = np.linalg.svd(weights @ F, full_matrices=True)
    rank = int((sv > 1e-12 * max(sv.max(initial=0.0), 1e-300)).sum())
    null = vt[rank:]
    c = _unit(null.T @ rng.standard_normal(len(null)))
    tau = 4 * float(np.abs(F @ c).max()) or 1.0
    tau_end = tau * span
    while tau > tau_end:
        for _ in range(newton):
            th = np.tanh((F @ c) / tau)
            res = weights @ th
            r0 = np.linalg.norm(res)
            if r0 < 1e-12:
                break
            jac = weights @ (((1 - th * th) / tau)[:, None] * F)
            # stay tangent to the sphere: the extra row pins c . dc = 0
            dc = np.linalg.lstsq(np.vstack([jac, c]), np.concatenate([-res, [0.0]]), rcond=None)[0]
            t = 1.0
            while True:
                cn = _unit(c + t * dc)
                if np.linalg.norm(weights @ np.tanh((F @ cn) / tau)) < r0 or t < 1e-3:
                    break
                t /= 2
            c = cn
        tau *= shrink
    return c


def _medians(values: np.ndarray, members) -> List[int]:
    out = []
    for idx in members:
        if len(idx):
            order = idx[np.argsort(values[idx], kind="stable")]
            out.append(int(order[len(idx) // 2]))
    return out


def _circle_step(F, c, A, pivots, labels, halves, rng) -> np.ndarray:
    """Best point on a random great circle through c that keeps the pivots on the zero set."""
    _, sv, vt = np.linalg.svd(A, full_matrices=True)
    rank = int((sv > 1e-10 * sv[0]).sum()) if len(sv) else 0
    null = vt[rank:]
    w = null.T @ rng.standard_normal(len(null))
    w = w - (w @ c) * c
    if np.linalg.norm(w) < 1e-12:
        return c
    w = _unit(w)
    a, b = F @ c, F @ w
    # a cos(th) + b sin(th) changes sign once on (0, pi), at atan2(b, a) + pi/2 (mod pi)
    cross = np.mod(np.arctan2(b, a) + np.pi / 2, np.pi)
    signs = np.where(np.abs(a) > 1e-12 * np.abs(a).max(), np.sign(a), np.sign(b)).astype(np.int64)
    signs[pivots] = 0
    movers = np.flatnonzero(signs != 0)
    order = movers[np.argsort(cross[movers], kind="stable")]
    D = _accel.sweep_discrepancy(order, signs, labels, halves)
    k = int(rng.choice(np.flatnonzero(D == D.min())))
    lo = cross[order[k - 1]] if k > 0 else 0.0
    hi = cross[order[k]] if k < len(order) else np.pi
    th = (lo + hi) / 2
    return _unit(np.cos(th) * c + np.sin(th) * w)


def _exact_candidate(lifted: _Lifted, c: np.ndarray, pivots, sets, iterations: int, d: int):
    cq = [Fraction(int(round(v * _COEFF_GRID)), _COEFF_GRID) for v in c]
    cand = _exact_projection([lifted.exact(i) for i in pivots], cq)
    if cand is None:
        return None
    return _finish(lifted, cand, sets, iterations, d)


def _finish(lifted: _Lifted, cand, sets, iterations: int, d: int) -> BisectionStep:
    poly = lifted.polynomial(cand)
    counts = tuple(exact_counts(poly, s.points) for s in sets)
    ok = all(is_bisected(c) for c in counts)
    return BisectionStep(poly, counts, ok, iterations, d)


# --- the iterated partition -----------------------------------------------------


def _min_step_degree(j: int) -> int:
    """Smallest D with D^3 >= 2^(j-1), i.e. ceil(2^((j-1)/3))."""
    target = 1 << (j - 1)
    D = max(1, round(target ** (1 / 3)))
    while D**3 < target:
        D += 1
    while D > 1 and (D - 1) ** 3 >= target:
        D -= 1
    return D


def step_degrees(d) -> List[int]:
    """Degree budget of each halving step for total degree budget d.

    Step j uses ceil(2^((j-1)/3)), raised if needed so that 2^(j-1) sets can be
    bisected at once; J is the largest count with total degree <= d and 2^J <= d^3.
    """
    d = to_fraction(str(d)) if isinstance(d, float) else to_fraction(d)
    out: List[int] = []
    total = 0
    j = 1
    while True:
        deg = _min_step_degree(j)
        while lifted_dimension(deg) < (1 << (j - 1)):
            deg += 1
        if total + deg > d or (1 << j) > d**3:
            break
        out.append(deg)
        total += deg
        j += 1
    return out


@dataclass(frozen=True)
class HalvingEntry:
    step: int
    cell: SignVector
    parent_count: int
    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def ok(self) -> bool:
        return is_bisected(SetCounts(self.n_pos, self.n_neg, self.n_zero))


@dataclass(frozen=True)
class PartitionAudit:
    nonempty_cells: int
    max_cell_count: int
    z_bucket_count: int
    degree_used: int
    target_cells: int
    all_converged: bool
    halving_ok: bool
    occupancy_constant: float
    cell_count_constant: float


@dataclass(frozen=True)
class Partition:
    steps: Tuple[BisectionStep, ...]
    product_poly: MultiPoly
    J: int
    assignments: Tuple[Union[SignVector, str], ...]
    audit: PartitionAudit
    ledger: Tuple[HalvingEntry, ...] = field(default=(), repr=False)
    degree_budget: Fraction = Fraction(0)

    @property
    def converged(self) -> bool:
        return self.audit.all_converged

    def cells(self) -> Dict[SignVector, int]:
        return dict(Counter(a for a in self.assignments if a != ZBUCKET))


def guth_katz_partition(points, d, seed: int = 0, max_iter: int = DEFAULT_MAX_ITER) -> Partition:
    """Iterated simultaneous bisection of a finite point set.

    Points falling exactly on a step's zero set go to the Z bucket and take no
    further part in the halving.  Non-convergence of any step is recorded in
    the audit, never hidden.
    """
    pts = points.points if isinstance(points, PointSet) else PointSet.of(points).points
    if not pts:
        raise ValueError("partition needs at least one point")
    budget = to_fraction(str(d)) if isinstance(d, float) else to_fraction(d)
    if budget <= 1:
        raise BudgetTooSmall("degree budget must exceed 1")
    schedule = step_degrees(budget)
    if not schedule:
        raise BudgetTooSmall(f"degree budget {d} admits no halving step (need 2 <= d^3)")

    cells: Dict[SignVector, List[int]] = {(): list(range(len(pts)))}
    assignments: List[Union[SignVector, str, None]] = [None] * len(pts)
    steps: List[BisectionStep] = []
    ledger: List[HalvingEntry] = []
    for j, deg in enumerate(schedule, start=1):
        keys = [k for k in sorted(cells) if cells[k]]
        sets = [PointSet.of([pts[i] for i in cells[k]], id=k) for k in keys]
        step = discrete_ham_sandwich(sets, deg, seed=_step_seed(seed, j), max_iter=max_iter)
        steps.append(step)
        new_cells: Dict[SignVector, List[int]] = {}
        ev = SignEvaluator(step.poly)
        for k in keys:
            pos, neg, zero = [], [], 0
            for i in cells[k]:
                sg = ev.sign(pts[i])
                if sg == 0:
                    assignments[i] = ZBUCKET
                    zero += 1
                elif sg > 0:
                    pos.append(i)
                else:
                    neg.append(i)
            new_cells[k + (1,)] = pos
            new_cells[k + (-1,)] = neg
            ledger.append(HalvingEntry(j, k, len(cells[k]), len(pos), len(neg), zero))
        cells = new_cells
    for k, idx in cells.items():
        for i in idx:
            assignments[i] = k

    product = MultiPoly.product([s.poly for s in steps])
    J = len(steps)
    counts = Counter(a for a in assignments if a != ZBUCKET)
    S = len(pts)
    max_cell = max(counts.values(), default=0)
    audit = PartitionAudit(
        nonempty_cells=len(counts),
        max_cell_count=max_cell,
        z_bucket_count=sum(1 for a in assignments if a == ZBUCKET),
        degree_used=product.degree,
        target_cells=2**J,
        all_converged=all(s.converged for s in steps),
        halving_ok=all(e.ok for e in ledger),
        occupancy_constant=max_cell * 2**J / S,
        cell_count_constant=len(counts) / float(budget) ** 3,
    )
    return Partition(tuple(steps), product, J, tuple(assignments), audit, tuple(ledger), budget)


def _step_seed(seed: int, j: int) -> int:
    return int(np.random.SeedSequence([seed, j]).generate_state(1)[0])


def assign_cells(points, partition: Partition) -> List[Union[SignVector, str]]:
    """Sign vector of every point over the step polynomials, or ZBUCKET."""
    pts = points.points if isinstance(points, PointSet) else PointSet.of(points).points
    evs = [SignEvaluator(step.poly) for step in partition.steps]
    out: List[Union[SignVector, str]] = []
    for p in pts:
        signs = tuple(ev.sign(p) for ev in evs)
        out.append(ZBUCKET if 0 in signs else signs)
    return out
