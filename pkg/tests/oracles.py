"""Reference implementations that share no code with the package.

They are deliberately naive: sympy linear algebra for meeting points and
determinants, sympy for resultants, and closed forms for constructed inputs.
"""
from fractions import Fraction
from itertools import combinations
from math import comb

import sympy as sp
from sympy.polys.subresultants_qq_zz import sylvester


def _vec(v):
    return sp.Matrix([sp.Rational(str(c)) for c in v])


def meet(line_a, line_b):
    """Meeting point of two lines given as (point, direction) pairs, or None."""
    (p, u), (q, v) = line_a, line_b
    P, U, Q, V = _vec(p), _vec(u), _vec(q), _vec(v)
    if U.cross(V) == sp.zeros(3, 1):
        return None
    A = U.row_join(-V)
    try:
        sol, params = A.gauss_jordan_solve(Q - P)[:2]
    except ValueError:
        return None
    if params.shape[0]:
        return None
    x = P + sol[0] * U
    if x != Q + sol[1] * V:
        return None
    return tuple(x)


def _spans(u, v, w):
    return sp.Matrix.hstack(_vec(u), _vec(v), _vec(w)).det() != 0


def joints(lines):
    """{point: (lines through it, spanning triples)} by enumerating every triple of lines."""
    lines = list(lines)
    found = {}
    for a, b, c in combinations(range(len(lines)), 3):
        if not _spans(lines[a][1], lines[b][1], lines[c][1]):
            continue
        x = meet(lines[a], lines[b])
        if x is None or meet(lines[a], lines[c]) != x:
            continue
        found.setdefault(x, set()).add((a, b, c))
    out = {}
    for x, triples in found.items():
        through = {i for t in triples for i in t}
        # lines through x that sit in no spanning triple still count toward k
        for i, ln in enumerate(lines):
            if i not in through and _contains(ln, x):
                through.add(i)
        key = tuple(Fraction(int(c.p), int(c.q)) for c in x)
        out[key] = (len(through), len(triples))
    return out


def _contains(line, x):
    p, u = line
    w = _vec(x) - _vec(p)
    return _vec(u).cross(w) == sp.zeros(3, 1)


def grid_joint_count(k):
    return k**3


def grid_line_count(k):
    return 3 * k * k


def bush_multiplicity(L):
    return comb(L, 3)


def resultant(f_terms, g_terms, eliminate="x"):
    """sympy resultant of two polynomials given as {(i, j): c} over (x, y)."""
    x, y = sp.symbols("x y")
    f = sum(sp.Rational(str(c)) * x**i * y**j for (i, j), c in f_terms.items())
    g = sum(sp.Rational(str(c)) * x**i * y**j for (i, j), c in g_terms.items())
    # sp.resultant can differ by (-1)^(deg f * deg g) from the Sylvester
    # determinant when deg f < deg g; use the determinant itself.
    r = sylvester(f, g, x if eliminate == "x" else y, 1).det()
    other = y if eliminate == "x" else x
    poly = sp.Poly(sp.expand(r), other)
    coeffs = [sp.Rational(c) for c in reversed(poly.all_coeffs())]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def planar_grid_incidences(k):
    return 2 * k * k
