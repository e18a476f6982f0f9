"""Seeded property suites over generated instances.

Each suite draws ``n`` instances from a seeded generator, checks one
theorem-backed or structural property exactly, and reports the failures.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List

from .curves import ParamCurve, detect_curve_joints
from .errors import DegenerateElimination
from .generators import bush_lines, grid_lines, random_lines
from .geometry import AffineMap, Direction3, canonicalize_line, point3
from .joints import (
    LineConfig,
    bound_report,
    check_lemma31,
    check_lemma32,
    detect_joints,
    multiplicity,
)
from .poly import BiPoly, MultiPoly, UniPoly, sylvester_resultant
from .verify import brute_force_joints, compare_joints
from .zeroset import critical_line_census


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    failures: int = 0
    examples: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.instances > 0 and self.failures == 0

    def record(self, ok: bool, detail: Callable[[], str]) -> None:
        self.instances += 1
        if not ok:
            self.failures += 1
            if len(self.examples) < 5:
                self.examples.append(detail())

    def as_dict(self) -> Dict[str, object]:
        return {"name": self.name, "instances": self.instances, "failures": self.failures,
                "passed": self.passed, "examples": list(self.examples)}


def _rng(seed: int, salt: str) -> random.Random:
    return random.Random(f"{salt}:{seed}")


def _direction(rng: random.Random, bound: int = 3) -> Direction3:
    while True:
        v = [rng.randint(-bound, bound) for _ in range(3)]
        if any(v):
            return Direction3.of(*v)


def _point(rng: random.Random, bound: int = 5):
    return point3(*(rng.randint(-bound, bound) for _ in range(3)))


# --- joints ---------------------------------------------------------------------


def random_line_config(rng: random.Random, max_lines: int = 15) -> LineConfig:
    """A small configuration mixing lattice lines, bushes and grid pieces, so joints are common."""
    L = rng.randint(3, max_lines)
    style = rng.randrange(4)
    if style == 0:
        lines = random_lines(L, rng.randrange(1 << 30), bound=1)
    elif style == 1:
        lines = random_lines(L, rng.randrange(1 << 30), bound=2)
    elif style == 2:
        k = rng.randint(2, 3)
        lines = rng.sample(grid_lines(k), min(L, 3 * k * k))
    else:
        m = rng.randint(3, max(3, L // 2))
        centre = _point(rng, 2)
        lines = [canonicalize_line(centre, ln.dir) for ln in bush_lines(m, rng.randrange(1 << 30))]
        lines += random_lines(L - m, rng.randrange(1 << 30), bound=1) if L > m else []
    return LineConfig.from_lines(lines)


def oracle_suite(n: int = 300, seed: int = 0, max_lines: int = 15) -> SuiteResult:
    """detect_joints against exhaustive triple enumeration."""
    res = SuiteResult("joints-vs-oracle")
    rng = _rng(seed, "oracle")
    for _ in range(n):
        cfg = random_line_config(rng, max_lines)
        diff = compare_joints(detect_joints(cfg), brute_force_joints(cfg.lines))
        res.record(not diff, lambda: f"L={cfg.L}: {diff[:3]}")
    return res


def _lemma_instance(rng: random.Random):
    while True:
        x = _point(rng, 4)
        m = rng.randint(3, 9)
        dirs = []
        if rng.random() < 0.4:
            # a coplanar cluster keeps N(x) well below C(m, 3)
            u, v = _direction(rng), _direction(rng)
            for _ in range(m - 1):
                a, b = rng.randint(-2, 2), rng.randint(-2, 2)
                w = [a * p + b * q for p, q in zip(u, v)]
                if any(w):
                    dirs.append(Direction3.of(*w))
            dirs.append(_direction(rng))
        else:
            dirs = [_direction(rng) for _ in range(m)]
        lines = [canonicalize_line(x, d) for d in set(dirs)]
        if multiplicity([ln.dir for ln in lines]) == 0:
            continue
        extra = [ln for ln in random_lines(rng.randint(0, 5) or 1, rng.randrange(1 << 30), bound=4)
                 if not ln.contains(x)]
        cfg = LineConfig.from_lines(lines + extra)
        through = cfg.lines_through(x)
        n_x = multiplicity([ln.dir for ln in through])
        k = rng.randint(math.ceil(len(through) / 2), len(through) + 2)
        subset = [ln for ln in through if rng.random() < 0.6]
        while subset and 2 * multiplicity([ln.dir for ln in subset]) > n_x:
            subset.pop(rng.randrange(len(subset)))
        subset_ids = {ln.id for ln in subset} | {ln.id for ln in cfg.lines if not ln.contains(x) and rng.random() < 0.5}
        if rng.random() < 0.5 and len(through) >= 2:
            a, b = rng.sample(through, 2)
            u, v = tuple(a.dir), tuple(b.dir)
            normal = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
            if not any(normal):
                normal = tuple(_direction(rng))
        else:
            normal = tuple(_direction(rng))
        return cfg, subset_ids, x, k, normal


def lemma_suite(n: int = 500, seed: int = 0) -> SuiteResult:
    """Both lemma checkers on instances built to satisfy their hypotheses."""
    res = SuiteResult("lemma-checks")
    rng = _rng(seed, "lemma")
    for _ in range(n):
        cfg, subset_ids, x, k, normal = _lemma_instance(rng)
        r1 = check_lemma31(cfg, subset_ids, x, k)
        r2 = check_lemma32(cfg, x, normal, k)
        res.record(r1.holds and r2.holds, lambda: f"x={x} k={k}: {r1} {r2}")
    return res


# --- algebra --------------------------------------------------------------------


def _planes_through_line(rng: random.Random):
    base = _point(rng, 3)
    d = _direction(rng)
    common = canonicalize_line(base, d)
    count = rng.randint(2, 4)
    normals: List[Direction3] = []
    while len(normals) < count:
        r = tuple(_direction(rng))
        dv = tuple(d)
        nv = (dv[1] * r[2] - dv[2] * r[1], dv[2] * r[0] - dv[0] * r[2], dv[0] * r[1] - dv[1] * r[0])
        if any(nv):
            nd = Direction3.of(*nv)
            if nd not in normals:
                normals.append(nd)
    planes = [MultiPoly.linear(*nd, -sum(a * b for a, b in zip(nd, base))) for nd in normals]
    return common, planes


def census_suite(n: int = 100, seed: int = 0) -> SuiteResult:
    """Products of distinct planes through a common line: the line is critical, the count bounded."""
    res = SuiteResult("critical-lines")
    rng = _rng(seed, "census")
    for _ in range(n):
        common, planes = _planes_through_line(rng)
        factors = [(pl, 2 if rng.random() < 0.2 else 1) for pl in planes]
        p = MultiPoly.product(factors)
        candidates = [common] + random_lines(rng.randint(1, 6), rng.randrange(1 << 30), bound=3)
        rng.shuffle(candidates)
        census = critical_line_census(p, candidates)
        ok = common in census.critical and census.within_bound
        res.record(ok, lambda: f"{p}: critical={census.critical}")
    return res


def _random_bipoly(rng: random.Random, dx: int, dy: int) -> BiPoly:
    terms = {(i, j): rng.randint(-4, 4) for i in range(dx + 1) for j in range(dy + 1) if i + j <= max(dx, dy)}
    terms[(dx, 0)] = rng.choice([-3, -2, -1, 1, 2, 3])
    return BiPoly.from_terms(terms, ("x", "y"))


def resultant_suite(n: int = 200, seed: int = 0) -> SuiteResult:
    """Degree bound, planted common factors and planted common zeros."""
    res = SuiteResult("resultants")
    rng = _rng(seed, "resultant")
    for _ in range(n):
        f = _random_bipoly(rng, rng.randint(1, 3), rng.randint(0, 3))
        g = _random_bipoly(rng, rng.randint(1, 3), rng.randint(0, 3))
        r = sylvester_resultant(f, g, "x")
        res.record(r.degree <= f.total_degree * g.total_degree,
                   lambda: f"deg Res = {r.degree} for {f} / {g}")

        h = _random_bipoly(rng, rng.randint(1, 2), rng.randint(0, 2))
        fa, gb = h * _random_bipoly(rng, rng.randint(0, 2), 1), h * _random_bipoly(rng, rng.randint(0, 2), 1)
        rz = sylvester_resultant(fa, gb, "x")
        res.record(rz.is_zero(), lambda: f"planted factor {h}: Res = {rz}")

        r1, r2 = Fraction(rng.randint(-5, 5), rng.randint(1, 3)), Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        f0 = _random_bipoly(rng, rng.randint(1, 3), rng.randint(0, 2))
        g0 = _random_bipoly(rng, rng.randint(1, 3), rng.randint(0, 2))
        fp = f0 - BiPoly.from_terms({(0, 0): f0.evaluate(r1, r2)}, ("x", "y"))
        gp = g0 - BiPoly.from_terms({(0, 0): g0.evaluate(r1, r2)}, ("x", "y"))
        rp = sylvester_resultant(fp, gp, "x")
        res.record(rp.is_zero() or rp(r2) == 0, lambda: f"planted point ({r1}, {r2}): Res({r2}) = {rp(r2)}")
    return res


# --- invariance -----------------------------------------------------------------


def _affine(rng: random.Random) -> AffineMap:
    while True:
        m = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        off = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(3)]
        try:
            return AffineMap(m, off)
        except ValueError:
            continue


def _joint_table(cfg: LineConfig):
    return {j.location: (j.k_count, j.multiplicity) for j in detect_joints(cfg)}


def affine_suite(n: int = 200, seed: int = 0) -> SuiteResult:
    res = SuiteResult("affine-invariance")
    rng = _rng(seed, "affine")
    for _ in range(n):
        cfg = random_line_config(rng, 12)
        amap = _affine(rng)
        before = {amap.apply_point(p): v for p, v in _joint_table(cfg).items()}
        after = _joint_table(LineConfig.from_lines([amap.apply_line(ln) for ln in cfg.lines]))
        res.record(before == after, lambda: f"{len(before)} vs {len(after)} joints")
    return res


def permutation_suite(n: int = 200, seed: int = 0) -> SuiteResult:
    res = SuiteResult("permutation-invariance")
    rng = _rng(seed, "perm")
    for _ in range(n):
        cfg = random_line_config(rng, 12)
        shuffled = list(cfg.lines)
        rng.shuffle(shuffled)
        a, b = detect_joints(cfg), detect_joints(LineConfig.from_lines(shuffled))
        res.record(a == b, lambda: "joint records differ after shuffling")
    return res


def monotonicity_suite(n: int = 200, seed: int = 0) -> SuiteResult:
    """Adding a line never removes a joint, lowers a multiplicity or the weighted sum."""
    res = SuiteResult("monotonicity")
    rng = _rng(seed, "mono")
    for _ in range(n):
        cfg = random_line_config(rng, 12)
        joints = _joint_table(cfg)
        if joints and rng.random() < 0.5:
            x = rng.choice(sorted(joints))
            extra = canonicalize_line(x, _direction(rng))
        else:
            extra = random_lines(1, rng.randrange(1 << 30), bound=2)[0]
        bigger = LineConfig.from_lines(list(cfg.lines) + [extra.with_id("extra")])
        after = _joint_table(bigger)
        ok = all(p in after and after[p][1] >= v[1] for p, v in joints.items())
        ok &= bound_report(bigger).weighted_sum >= bound_report(cfg).weighted_sum
        res.record(ok, lambda: f"adding {extra} broke monotonicity")
    return res


def _random_curves(rng: random.Random) -> List[ParamCurve]:
    centres = [_point(rng, 2) for _ in range(rng.randint(1, 2))]
    curves = []
    for i in range(rng.randint(3, 5)):
        x0 = rng.choice(centres)
        d = _direction(rng)
        b = rng.randint(1, 2)
        coords = []
        for c0, dc in zip(x0, d):
            coeffs = [c0, dc] + [rng.randint(-2, 2) for _ in range(2, b + 1)]
            coords.append(UniPoly(coeffs))
        curves.append(ParamCurve(*coords, id=i))
    return curves


def _curve_table(curves):
    out = detect_curve_joints(curves)
    return out.complete, {j.location: (j.tangent_set.directions, j.multiplicity) for j in out.joints}


def reparametrization_suite(n: int = 200, seed: int = 0) -> SuiteResult:
    res = SuiteResult("reparametrization-invariance")
    rng = _rng(seed, "reparam")
    for _ in range(n):
        while True:
            curves = _random_curves(rng)
            try:
                before = _curve_table(curves)
                break
            except DegenerateElimination:
                continue  # two draws share a component; not a valid configuration
        moved = []
        for c in curves:
            a = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
            moved.append(c.reparametrize(a, Fraction(rng.randint(-4, 4), rng.randint(1, 2))))
        after = _curve_table(moved)
        res.record(before == after, lambda: f"{before} vs {after}")
    return res


def curve_line_suite(n: int = 100, seed: int = 0) -> SuiteResult:
    """Degree-1 curves must reproduce the joints engine exactly."""
    res = SuiteResult("curves-vs-lines")
    rng = _rng(seed, "curveline")
    for _ in range(n):
        cfg = random_line_config(rng, 10)
        lines = {j.location: j.multiplicity for j in detect_joints(cfg)}
        out = detect_curve_joints([ParamCurve.from_line(ln) for ln in cfg.lines])
        curves = {j.location: j.multiplicity for j in out.joints}
        res.record(out.complete and lines == curves, lambda: f"{lines} vs {curves}")
    return res


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "oracle": oracle_suite,
    "lemmas": lemma_suite,
    "census": census_suite,
    "resultants": resultant_suite,
    "affine": affine_suite,
    "permutation": permutation_suite,
    "monotonicity": monotonicity_suite,
    "reparametrization": reparametrization_suite,
    "curve-lines": curve_line_suite,
}
