"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""
import io
import json
import math
import time
from decimal import Decimal
from math import comb

import pytest
import sympy as sp

from jointcount import (
    BiPoly,
    MultiPoly,
    canonicalize_line,
    critical_line_census,
    detect_curve_joints,
    generate,
    guth_katz_partition,
    random_points,
    rich_points_report,
    st_report,
    sylvester_resultant,
)
from jointcount.cli import run
from jointcount.generators import planar_grid
from jointcount.partition import ZBUCKET
from jointcount.suites import (
    affine_suite,
    census_suite,
    curve_line_suite,
    lemma_suite,
    monotonicity_suite,
    oracle_suite,
    permutation_suite,
    reparametrization_suite,
    resultant_suite,
)
from jointcount.verify import brute_force_joints

import oracles


@pytest.fixture
def announce(capsys):
    def emit(num, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {num:>2}] {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return emit


def _sqrt(n, digits=50):
    return Decimal(str(sp.N(sp.sqrt(n), digits)))


def _cli(*argv):
    buf = io.StringIO()
    start = time.perf_counter()
    code = run(list(argv), stdout=buf)
    return code, json.loads(buf.getvalue())["result"], time.perf_counter() - start


def test_criterion_01_grid(announce):
    code, r, dt = _cli("joints", "--gen", "grid:5")
    ratio = Decimal(125) / (Decimal(75) * _sqrt(75))
    ok = (code == 0 and r["L"] == oracles.grid_line_count(5) and r["joint_count"] == oracles.grid_joint_count(5)
          and all(j["N"] == 1 for j in r["joints"]) and r["weighted_sum"] == "125"
          and abs(Decimal(r["ratio"]) - ratio) < Decimal("1e-9") and dt < 1.0)
    assert announce(1, ok, f"L={r['L']} joints={r['joint_count']} ratio={r['ratio'][:12]} time={dt:.3f}s")


def test_criterion_02_bush(announce):
    code, r, dt = _cli("joints", "--gen", "bush:20:seed1")
    oracle = brute_force_joints(generate("bush:20:seed1").lines)
    (only,) = r["joints"]
    ok = (code == 0 and r["joint_count"] == 1 and only["N"] == comb(20, 3) == 1140
          and list(oracle.values()) == [(20, 1140)]
          and abs(Decimal(r["weighted_sum"]) - _sqrt(1140)) < Decimal("1e-9")
          and abs(Decimal(r["rhs"]) - 20 * _sqrt(20)) < Decimal("1e-9") and dt < 1.0)
    assert announce(2, ok, f"N={only['N']} weighted_sum={r['weighted_sum'][:14]} time={dt:.3f}s")


def test_criterion_03_oracle_equivalence(announce):
    start = time.perf_counter()
    res = oracle_suite(300, max_lines=15)
    dt = time.perf_counter() - start
    ok = res.instances == 300 and res.failures == 0 and dt < 60
    assert announce(3, ok, f"{res.instances} configs, {res.failures} discrepancies, {dt:.1f}s {res.examples[:1]}")


def test_criterion_04_lemma_suite(announce):
    res = lemma_suite(500)
    ok = res.instances == 500 and res.failures == 0
    assert announce(4, ok, f"{res.instances} instances, {res.failures} failures {res.examples[:1]}")


def _exact_halving(part, pts):
    """Re-derive every converged step's claim with plain rational evaluation."""
    cells = {(): list(range(len(pts)))}
    for step in part.steps:
        nxt = {}
        for key, idx in cells.items():
            vals = [step.poly.evaluate(pts[i]) for i in idx]
            half = math.ceil(len(idx) / 2)
            pos = [i for i, v in zip(idx, vals) if v > 0]
            neg = [i for i, v in zip(idx, vals) if v < 0]
            if step.converged and (len(pos) > half or len(neg) > half):
                return False
            nxt[key + (1,)], nxt[key + (-1,)] = pos, neg
        cells = nxt
    final = {k: len(v) for k, v in cells.items() if v}
    return final == part.cells()


def test_criterion_05_partition_audit(announce):
    start = time.perf_counter()
    S, lines = 512, []
    ok = True
    for seed in range(4):
        pts = random_points(S, seed)
        part = guth_katz_partition(pts, 4, seed=seed)
        a = part.audit
        good = _exact_halving(part, pts)
        if part.converged:
            good &= a.max_cell_count <= math.ceil(S / 2**part.J) and a.nonempty_cells <= 2**part.J <= 64
        good &= sum(1 for c in part.assignments if c == ZBUCKET) == a.z_bucket_count
        ok &= good
        lines.append(f"seed{seed}:J={part.J},conv={part.converged},max={a.max_cell_count},cells={a.nonempty_cells}")
    for d in (2, 3):
        runs = [guth_katz_partition(random_points(S, 100 + s), d, seed=s).converged for s in range(8)]
        ok &= any(runs)
        lines.append(f"d={d}:{sum(runs)}/8 converged")
    dt = time.perf_counter() - start
    ok &= dt < 120
    assert announce(5, ok, f"{'; '.join(lines)}; {dt:.1f}s")


def test_criterion_06_critical_lines(announce):
    x, y = MultiPoly.var("x"), MultiPoly.var("y")
    z_axis = canonicalize_line((0, 0, 0), (0, 0, 1), id="z")
    x_axis = canonicalize_line((0, 0, 0), (1, 0, 0), id="x")
    y_axis = canonicalize_line((0, 0, 0), (0, 1, 0), id="y")
    census = critical_line_census(MultiPoly.product([x, y, x - y]), [z_axis, x_axis, y_axis])
    suite = census_suite(100)
    ok = census.critical == (z_axis,) and census.bound == 9 and census.within_bound and suite.passed and suite.instances == 100
    assert announce(6, ok, f"critical={[ln.id for ln in census.critical]} bound={census.bound}; "
                           f"planes suite {suite.instances - suite.failures}/{suite.instances}")


def test_criterion_07_resultants(announce):
    f = BiPoly.from_terms({(2, 0): 1, (0, 1): -1})
    g = BiPoly.from_terms({(1, 0): 1, (0, 1): -1})
    r = sylvester_resultant(f, g, "x")
    expect = oracles.resultant({(2, 0): 1, (0, 1): -1}, {(1, 0): 1, (0, 1): -1})
    suite = resultant_suite(200)
    ok = list(r.coeffs) == expect == [0, -1, 1] and suite.passed and suite.instances == 600
    assert announce(7, ok, f"Res = {r}; 200 pairs x 3 checks, {suite.failures} failures {suite.examples[:1]}")


def test_criterion_08_curves(announce):
    code, r, _ = _cli("curves", "--gen", "curve_bush:6:3:seed2")
    res = detect_curve_joints(generate("curve_bush:6:3:seed2"))
    suite = curve_line_suite(100)
    ok = (code == 0 and r["joint_count"] == 1 and r["joints"][0]["N"] == comb(6, 3) and res.complete
          and suite.passed and suite.instances == 100)
    assert announce(8, ok, f"curve bush N={r['joints'][0]['N']}; degree-1 cross-check "
                           f"{suite.instances - suite.failures}/{suite.instances}")


def test_criterion_09_incidences(announce):
    pts, lines = planar_grid(10)
    rep = st_report(pts, lines)
    bound = sp.Integer(100) ** sp.Rational(2, 3) * sp.Integer(20) ** sp.Rational(2, 3) + 120
    rich = rich_points_report(generate("grid:2").lines, 3)
    ok = (rep.I == oracles.planar_grid_incidences(10) == 200 and rep.I <= rep.bound and rep.ratio < 1
          and abs(rep.bound - Decimal(str(sp.N(bound, 50)))) < Decimal("1e-30") and rich.S == 8)
    assert announce(9, ok, f"I={rep.I} bound={str(rep.bound)[:10]} ratio={str(rep.ratio)[:8]}; rich S={rich.S}")


def test_criterion_10_invariance(announce):
    suites = [affine_suite(200), permutation_suite(200), monotonicity_suite(200), reparametrization_suite(200)]
    ok = all(s.passed and s.instances >= 200 for s in suites)
    assert announce(10, ok, ", ".join(f"{s.name} {s.instances - s.failures}/{s.instances}" for s in suites))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
