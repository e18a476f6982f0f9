from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from jointcount import BiPoly, MultiPoly, UniPoly, rational_roots, square_free_part, sylvester_resultant
from jointcount.errors import DegreeZero, UnsupportedRepresentation
from jointcount.poly import count_real_roots, monomials, unipoly_gcd

import oracles

small = st.integers(-6, 6)
coeff_lists = st.lists(small, min_size=1, max_size=6)
T = sp.Symbol("t")


def _sym(u: UniPoly):
    return sum(sp.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(u.coeffs))


@given(coeff_lists, coeff_lists)
def test_unipoly_ring_ops_agree_with_sympy(a, b):
    f, g = UniPoly(a), UniPoly(b)
    assert sp.expand(_sym(f * g) - _sym(f) * _sym(g)) == 0
    assert sp.expand(_sym(f + g) - _sym(f) - _sym(g)) == 0
    if not g.is_zero():
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.is_zero() or r.degree < g.degree


def test_zero_polynomial_has_degree_minus_one():
    assert UniPoly([0, 0]).degree == -1 and UniPoly([0, 0]).is_zero()
    assert UniPoly([1, 0, 0]).degree == 0


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=5))
def test_rational_roots_recovers_planted_roots(roots):
    f = UniPoly.from_roots(roots)
    got = rational_roots(f * UniPoly([1, 0, 1]))
    assert got.distinct() == sorted(set(roots))
    assert not got.nonrational_roots_possible
    assert sorted(got.roots) == sorted(roots)
    with_surd = rational_roots(f * UniPoly([-2, 0, 1]))
    assert with_surd.distinct() == sorted(set(roots))
    assert with_surd.nonrational_roots_possible


@given(coeff_lists)
def test_sturm_count_matches_sympy(coeffs):
    f = UniPoly(coeffs)
    if f.degree < 1:
        return
    assert count_real_roots(f) == len(set(sp.Poly(_sym(f), T).real_roots()))


def test_gcd_is_monic_common_factor():
    f = UniPoly.from_roots([1, 2, 2])
    g = UniPoly.from_roots([2, 3])
    assert unipoly_gcd(f, g) == UniPoly.from_roots([2])


def test_monomials_are_graded_and_complete():
    ms = monomials(3)
    assert len(ms) == 20 - 1
    assert [sum(m) for m in ms] == sorted(sum(m) for m in ms)
    assert (0, 0, 0) not in ms


def test_multipoly_evaluate_restrict_gradient():
    x, y, z = (MultiPoly.var(v) for v in "xyz")
    p = x * x * y - 3 * z + 2
    assert p.degree == 3
    assert p.evaluate((2, 5, Fraction(1, 3))) == 21
    q = p.restrict((1, 0, 0), (0, 1, 1))
    assert q == UniPoly([2, -2])
    gx, gy, gz = p.gradient()
    assert gx == 2 * x * y and gy == x * x and gz == MultiPoly.constant(-3)


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3),
       st.lists(small, min_size=3, max_size=3))
def test_restriction_agrees_with_pointwise_evaluation(a, base, d):
    x, y, z = (MultiPoly.var(v) for v in "xyz")
    p = (x * a[0] + y * a[1] + z * a[2] + 1) * (x * y - z) + x * x * x
    q = p.restrict(base, d)
    for t in (-2, 0, Fraction(1, 3), 5):
        pt = [b + t * c for b, c in zip(base, d)]
        assert q(t) == p.evaluate(pt)


def test_square_free_part_of_factored_product():
    x, y = MultiPoly.var("x"), MultiPoly.var("y")
    p = MultiPoly.product([(x, 2), (y, 1), (x * 3, 1)])
    sf = square_free_part(p)
    assert sf.degree == 2
    assert sf.normalized() == (x * y).normalized()


def test_square_free_part_refuses_unfactored_squares():
    x, y = MultiPoly.var("x"), MultiPoly.var("y")
    with pytest.raises(UnsupportedRepresentation):
        square_free_part((x + y) * (x + y) * y)
    assert square_free_part(x * y + 1).degree == 2


def test_resultant_textbook_example():
    f = BiPoly.from_terms({(2, 0): 1, (0, 1): -1})
    g = BiPoly.from_terms({(1, 0): 1, (0, 1): -1})
    assert sylvester_resultant(f, g, "x") == UniPoly([0, -1, 1], "y")


def _bipoly(rng, dx, dy):
    return {(i, j): rng.randint(-4, 4) for i in range(dx + 1) for j in range(dy + 1) if rng.random() < 0.7}


def test_resultant_agrees_with_sympy(rng):
    checked = 0
    while checked < 40:
        ft, gt = _bipoly(rng, rng.randint(1, 3), 2), _bipoly(rng, rng.randint(1, 3), 2)
        f, g = BiPoly.from_terms(ft), BiPoly.from_terms(gt)
        if f.degree_in("x") < 1 or g.degree_in("x") < 1:
            continue
        got = sylvester_resultant(f, g, "x")
        assert list(got.coeffs) == oracles.resultant(ft, gt, "x")
        checked += 1


def test_resultant_in_second_variable_and_degree_zero():
    f = BiPoly.from_terms({(1, 1): 1, (0, 0): -2})
    g = BiPoly.from_terms({(1, 0): 1, (0, 1): -1})
    r = sylvester_resultant(f, g, "y")
    assert r.var == "x"
    assert list(r.coeffs) == oracles.resultant({(1, 1): 1, (0, 0): -2}, {(1, 0): 1, (0, 1): -1}, "y")
    with pytest.raises(DegreeZero):
        sylvester_resultant(BiPoly.from_terms({(0, 1): 1}), g, "x")


def test_resultant_swap_sign(rng):
    for _ in range(20):
        f = BiPoly.from_terms({(i, j): rng.randint(-3, 3) for i in range(rng.randint(1, 3) + 1) for j in range(2)})
        g = BiPoly.from_terms({(i, j): rng.randint(-3, 3) for i in range(rng.randint(1, 3) + 1) for j in range(2)})
        l, m = f.degree_in("x"), g.degree_in("x")
        if l < 1 or m < 1:
            continue
        assert sylvester_resultant(f, g, "x") == sylvester_resultant(g, f, "x") * (-1) ** (l * m)
