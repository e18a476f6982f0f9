import random
from fractions import Fraction

import pytest
import sympy as sp

from jointcount import (
    AffineMap,
    ParamCurve,
    curve_bound_report,
    curve_pair_intersections,
    curve_self_crossings,
    detect_curve_joints,
    detect_joints,
    generate,
    point3,
    tangent_direction,
)
from jointcount.errors import DegenerateElimination, EmptyConfig, VanishingDerivative
from jointcount.suites import random_line_config

t, s = sp.symbols("t s")


def _sym(u, var):
    return sum(sp.Rational(c.numerator, c.denominator) * var**i for i, c in enumerate(u.coeffs))


def _sympy_pairs(g, d):
    eqs = [_sym(a, t) - _sym(b, s) for a, b in zip(g.coords, d.coords)]
    sols = sp.solve(eqs, [t, s], dict=True)
    out = set()
    for sol in sols:
        tv, sv = sol.get(t), sol.get(s)
        if tv is not None and sv is not None and tv.is_rational and sv.is_rational:
            out.add((Fraction(int(tv.p), int(tv.q)), Fraction(int(sv.p), int(sv.q))))
    return out


def _random_curve(rng, cid):
    while True:
        coords = [[rng.randint(-2, 2) for _ in range(rng.randint(1, 3))] for _ in range(3)]
        try:
            return ParamCurve.from_coeffs(*coords, id=cid)
        except ValueError:
            continue


def test_pair_intersections_match_sympy():
    rng = random.Random(7)
    checked = 0
    while checked < 25:
        g, d = _random_curve(rng, "g"), _random_curve(rng, "d")
        # plant a meeting so that many cases are non-empty
        shift = [a - b for a, b in zip(g.point_at(1), d.point_at(-1))]
        d = ParamCurve(*(c + k for c, k in zip(d.coords, shift)), id="d")
        try:
            res = curve_pair_intersections(g, d)
        except DegenerateElimination:
            continue
        if not res.complete:
            continue
        assert set(res.pairs) == _sympy_pairs(g, d)
        assert (Fraction(1), Fraction(-1)) in res.pairs
        checked += 1


def test_nodal_cubic_self_crossing():
    node = ParamCurve.from_coeffs([-1, 0, 1], [0, -1, 0, 1], [0], id="node")
    res = curve_self_crossings(node)
    assert res.pairs == ((Fraction(1), Fraction(-1)),) and res.complete
    assert curve_self_crossings(ParamCurve.from_coeffs([0, 1], [0, 0, 1], [0])).pairs == ()


def test_retracing_curve_is_flagged_degenerate():
    res = curve_self_crossings(ParamCurve.from_coeffs([0, 0, 1], [0, 0, 1], [1, 0, 1]))
    assert res.degenerate and not res.complete


def test_identical_curves_cannot_be_eliminated():
    a = ParamCurve.from_coeffs([0, 1, 1], [1, 0, 1], [0, 2], id=0)
    with pytest.raises(DegenerateElimination):
        curve_pair_intersections(a, a.reparametrize(-1, 3))


def test_cusp_has_no_tangent_and_does_not_contribute():
    cusp = ParamCurve.from_coeffs([0, 0, 1], [0, 0, 0, 1], [0], id="cusp")
    with pytest.raises(VanishingDerivative):
        tangent_direction(cusp, 0)
    lines = [ParamCurve.from_coeffs([0, 1], [0], [0], id="x"), ParamCurve.from_coeffs([0], [0], [0, 1], id="z")]
    assert detect_curve_joints(lines + [cusp]).joints == ()
    y = ParamCurve.from_coeffs([0], [0, 1], [0], id="y")
    (j,) = detect_curve_joints(lines + [cusp, y]).joints
    assert j.multiplicity == 1 and {cid for cid, _ in j.tangent_set.contributing} == {"x", "y", "z"}


def test_tangent_direction_is_primitive():
    c = ParamCurve.from_coeffs([0, 2], [0, 0, 3], [1])
    assert tuple(tangent_direction(c, 1)) == (1, 3, 0)


def test_curve_bush_has_one_joint_of_full_multiplicity():
    curves = generate("curve_bush:6:3:seed2")
    res = detect_curve_joints(curves)
    assert res.complete
    (j,) = res.joints
    assert j.location == point3(0, 0, 0) and j.multiplicity == 20
    rep = curve_bound_report(curves, res)
    assert rep.joint_count == 1 and rep.curve_count == 6


@pytest.mark.parametrize("seed", range(10))
def test_degree_one_curves_reproduce_line_joints(seed):
    cfg = random_line_config(random.Random(seed), max_lines=10)
    curves = [ParamCurve.from_line(ln) for ln in cfg.lines]
    got = {j.location: j.multiplicity for j in detect_curve_joints(curves).joints}
    assert got == {j.location: j.multiplicity for j in detect_joints(cfg)}


def test_reparametrisation_and_affine_images_keep_joints():
    curves = generate("curve_bush:4:2:seed3")
    base = {j.location: j.multiplicity for j in detect_curve_joints(curves).joints}
    rep = [c.reparametrize(Fraction(-2, 3), 5) for c in curves]
    assert {j.location: j.multiplicity for j in detect_curve_joints(rep).joints} == base
    amap = AffineMap(((1, 2, 0), (0, 1, 3), (1, 0, 1)), (1, 1, -1))
    moved = {j.location: j.multiplicity for j in detect_curve_joints([c.transform(amap) for c in curves]).joints}
    assert moved == {amap.apply_point(x): n for x, n in base.items()}


def test_curve_validation():
    with pytest.raises(ValueError):
        ParamCurve.from_coeffs([1], [2], [3])
    with pytest.raises(ValueError):
        ParamCurve.from_coeffs([0, 0, 1], [0], [0], degree_bound=1)
    with pytest.raises(ValueError):
        detect_curve_joints([ParamCurve.from_coeffs([0, 1], [0], [0], id=1)] * 2)
    with pytest.raises(EmptyConfig):
        curve_bound_report([])


def test_parameters_at_reports_all_preimages():
    node = ParamCurve.from_coeffs([-1, 0, 1], [0, -1, 0, 1], [0])
    params, complete = node.parameters_at(point3(0, 0, 0))
    assert params == [-1, 1] and complete
    assert node.parameters_at(point3(5, 5, 5)) == ([], True)
