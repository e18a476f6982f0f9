import math
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from jointcount import (
    ZBUCKET,
    MultiPoly,
    PointSet,
    assign_cells,
    discrete_ham_sandwich,
    guth_katz_partition,
    point3,
    random_points,
    veronese_lift,
)
from jointcount.errors import BudgetTooSmall, TooManySets
from jointcount.partition import SignEvaluator, exact_counts, is_bisected, lifted_dimension, step_degrees
from jointcount.poly import monomials

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=9)


def test_lift_dimension_and_order():
    assert [lifted_dimension(d) for d in (1, 2, 3, 4)] == [3, 9, 19, 34]
    x, y, z = sp.symbols("x y z")
    pt = (2, Fraction(-1, 3), 5)
    expect = [sp.Rational(2) ** a * sp.Rational(-1, 3) ** b * sp.Rational(5) ** c for a, b, c in monomials(3)]
    assert list(veronese_lift(pt, 3)) == expect
    with pytest.raises(ValueError):
        veronese_lift(pt, 0)


@given(st.lists(st.integers(-9, 9), min_size=10, max_size=10), st.tuples(fracs, fracs, fracs))
def test_sign_evaluator_matches_exact_evaluation(coeffs, pt):
    terms = {m: c for m, c in zip([(0, 0, 0)] + monomials(2), coeffs)}
    p = MultiPoly(terms) * Fraction(1, 7)
    if p.is_zero():
        return
    v = p.evaluate(pt)
    assert SignEvaluator(p).sign(pt) == (v > 0) - (v < 0)


def _check_bisection(step, sets):
    for c, ps in zip(step.per_set_counts, sets):
        vals = [step.poly.evaluate(p) for p in ps.points]
        pos, neg = sum(v > 0 for v in vals), sum(v < 0 for v in vals)
        assert (c.n_pos, c.n_neg) == (pos, neg)
        half = math.ceil(len(ps) / 2)
        assert pos <= half and neg <= half


@pytest.mark.parametrize("d, m", [(1, 1), (1, 3), (2, 5), (2, 9), (3, 12)])
def test_ham_sandwich_bisects_every_set(d, m):
    rng = random.Random(100 * d + m)
    sets = [PointSet.of(random_points(rng.randint(5, 40), rng.randrange(1 << 20), bound=50), id=i) for i in range(m)]
    step = discrete_ham_sandwich(sets, d, seed=m)
    assert step.converged and not step.poly.is_zero() and step.poly.degree <= d
    _check_bisection(step, sets)


def test_ham_sandwich_rejects_too_many_sets():
    sets = [PointSet.of([(i, 0, 0)]) for i in range(4)]
    with pytest.raises(TooManySets):
        discrete_ham_sandwich(sets, 1)


def test_coplanar_input_may_be_absorbed_by_the_plane():
    pts = [point3(a, b, 0) for a in range(6) for b in range(6)]
    step = discrete_ham_sandwich([PointSet.of(pts)], 1, seed=2)
    assert step.converged
    _check_bisection(step, [PointSet.of(pts)])


def test_exact_counts_and_bisected():
    x = MultiPoly.var("x")
    c = exact_counts(x, [point3(i, 0, 0) for i in range(-2, 3)])
    assert tuple(c) == (2, 2, 1) and is_bisected(c)
    assert not is_bisected(exact_counts(x - 10, [point3(i, 0, 0) for i in range(5)]))


@pytest.mark.parametrize("d, expect", [(4, [1, 2]), (10, [1, 2, 2, 2, 3]), (2.1, [1]), (Fraction(3, 2), [1]), (2, [1])])
def test_step_degree_schedule(d, expect):
    sched = step_degrees(d)
    assert sched == expect
    assert sum(sched) <= d and 2 ** len(sched) <= Fraction(str(d)) ** 3
    for j, deg in enumerate(sched, start=1):
        assert lifted_dimension(deg) >= 2 ** (j - 1)


def test_budget_too_small():
    pts = random_points(10, 1)
    with pytest.raises(BudgetTooSmall):
        guth_katz_partition(pts, 1)
    with pytest.raises(BudgetTooSmall):
        guth_katz_partition(pts, Fraction(6, 5))


def test_partition_audit_on_random_points():
    pts = random_points(300, 5)
    part = guth_katz_partition(pts, 6, seed=3)
    a = part.audit
    assert part.converged and a.halving_ok
    assert a.nonempty_cells <= 2**part.J
    assert a.max_cell_count <= math.ceil(300 / 2**part.J)
    assert a.degree_used <= 6
    assert sum(part.cells().values()) + a.z_bucket_count == 300
    assert tuple(assign_cells(pts, part)) == part.assignments
    for p, cell in zip(pts, part.assignments):
        vals = [s.poly.evaluate(p) for s in part.steps]
        if cell == ZBUCKET:
            assert 0 in vals
        else:
            assert tuple((v > 0) - (v < 0) for v in vals) == cell


def test_partition_is_deterministic_per_seed():
    pts = random_points(120, 9)
    a = guth_katz_partition(pts, 4, seed=1)
    b = guth_katz_partition(pts, 4, seed=1)
    assert a.assignments == b.assignments
    assert [s.poly for s in a.steps] == [s.poly for s in b.steps]


def test_lattice_cube_partition():
    pts = [point3(a, b, c) for a in range(4) for b in range(4) for c in range(4)]
    part = guth_katz_partition(pts, 4, seed=0)
    assert part.converged and part.audit.halving_ok
    assert part.audit.max_cell_count <= 16


def test_duplicate_points_are_flagged():
    ps = PointSet.of([(0, 0, 0), (0, 0, 0), (1, 2, 3)])
    assert ps.has_duplicates and len(ps) == 3
