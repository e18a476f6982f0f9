"""Exact polynomial arithmetic over the rationals.

* :class:`UniPoly` -- dense univariate polynomials.
* :class:`MultiPoly` -- sparse polynomials in x, y, z, optionally carrying the
  factorisation they were built from.
* :class:`BiPoly` -- polynomials in two variables stored as a univariate
  polynomial (in the main variable) with :class:`UniPoly` coefficients.

plus resultants, gcds, Sturm counts and rational-root extraction.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import DegreeZero, UnsupportedRepresentation
from .geometry import Line3, to_fraction

Exponent = Tuple[int, int, int]
VARS = ("x", "y", "z")

_ZERO = Fraction(0)
_ONE = Fraction(1)


# --- univariate ---------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial, coefficients in ascending degree.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def constant(cls, c, var="t") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def monomial(cls, n: int, c=1, var="t") -> "UniPoly":
        return cls([0] * n + [c], var)

    @classmethod
    def from_roots(cls, roots, var="t") -> "UniPoly":
        out = cls([1], var)
        for r in roots:
            out = out * cls([-to_fraction(r), 1], var)
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def _wrap(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._wrap(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (_ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (_ZERO,) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = to_fraction(other)
            return UniPoly([c * a for a in self.coeffs], self.var)
        if self.is_zero() or other.is_zero():
            return UniPoly([], self.var)
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UniPoly([1], self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.lead
        quot = [_ZERO] * max(len(rem) - dd, 0)
        for k in range(len(rem) - dd - 1, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q:
                for i, c in enumerate(other.coeffs):
                    rem[k + i] -= q * c
        return UniPoly(quot, self.var), UniPoly(rem[:dd] if dd > 0 else [], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        acc = _ZERO if not isinstance(x, UniPoly) else UniPoly([], x.var)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def integer_primitive(self) -> List[int]:
        """Coprime integer coefficients of a nonzero rational multiple of self."""
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        return [c // g for c in ints]

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if mono and abs(c) == 1:
                term = mono
            else:
                term = f"{abs(c)}" + (f"*{mono}" if mono else "")
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def unipoly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by Euclid's algorithm over Q."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def square_free(f: UniPoly) -> UniPoly:
    """f divided by gcd(f, f'): same roots, each simple."""
    if f.degree <= 0:
        return f.monic()
    return f.exact_div(unipoly_gcd(f, f.derivative())).monic()


def sturm_sequence(f: UniPoly) -> List[UniPoly]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign_changes(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def count_real_roots(f: UniPoly, lo=None, hi=None) -> int:
    """Distinct real roots of f (in the half-open interval (lo, hi] when given)."""
    if f.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    if f.degree == 0:
        return 0
    seq = sturm_sequence(f)

    def at(x):
        return _sign_changes(_sign(p(x)) for p in seq)

    def at_inf(positive):
        return _sign_changes(_sign(p.lead) * (1 if positive or p.degree % 2 == 0 else -1) for p in seq)

    v_lo = at_inf(False) if lo is None else at(to_fraction(lo))
    v_hi = at_inf(True) if hi is None else at(to_fraction(hi))
    return v_lo - v_hi


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def _factorize(n: int, out: Dict[int, int]) -> None:
    if n == 1:
        return
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return
    if _is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _factorize(d, out)
    _factorize(n // d, out)


def divisors(n: int) -> List[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    fac: Dict[int, int] = {}
    _factorize(n, fac)
    divs = [1]
    for p, e in fac.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


class RationalRoots(NamedTuple):
    roots: List[Fraction]
    nonrational_roots_possible: bool

    def distinct(self) -> List[Fraction]:
        return sorted(set(self.roots))


def rational_roots(f: UniPoly) -> RationalRoots:
    """All rational roots of f, repeated by multiplicity, in ascending order.

    ``nonrational_roots_possible`` is set when the Sturm count of distinct real
    roots exceeds the number of distinct rational roots found.
    """
    if f.is_zero():
        raise ValueError("rational_roots of the zero polynomial")
    if f.degree == 0:
        return RationalRoots([], False)
    g = square_free(f)
    ints = g.integer_primitive()
    found: List[Fraction] = []
    low = 0
    while ints[low] == 0:
        low += 1
    if low:
        found.append(_ZERO)
        ints = ints[low:]
    n = len(ints) - 1
    if n >= 1:
        a0, an = ints[0], ints[-1]
        # Cauchy bound on |root| prunes the candidate list
        bound = 1 + max(Fraction(abs(c), abs(an)) for c in ints[:-1])
        for q in divisors(an):
            for p in divisors(a0):
                if Fraction(p, q) > bound:
                    continue
                for cand in (p, -p):
                    if math.gcd(p, q) != 1:
                        continue
                    if sum(c * cand**i * q ** (n - i) for i, c in enumerate(ints)) == 0:
                        found.append(Fraction(cand, q))
    found.sort()
    roots: List[Fraction] = []
    for r in found:
        lin = UniPoly([-r, 1], f.var)
        rest = f
        while True:
            q, rem = divmod(rest, lin)
            if not rem.is_zero():
                break
            roots.append(r)
            rest = q
    return RationalRoots(roots, count_real_roots(f) > len(found))


# --- trivariate ---------------------------------------------------------------


def monomials(d: int) -> List[Exponent]:
    """Non-constant monomials of degree <= d in graded-lex order (x > y > z)."""
    out = []
    for deg in range(1, d + 1):
        for a in range(deg, -1, -1):
            for b in range(deg - a, -1, -1):
                out.append((a, b, deg - a - b))
    return out


class MultiPoly:
    """Sparse polynomial in x, y, z with rational coefficients.

    ``factors`` is an optional tuple of ``(MultiPoly, exponent)`` pairs whose
    product equals the polynomial; it is set by :meth:`product` and preserved
    by multiplication of two factored polynomials.
    """

    __slots__ = ("terms", "factors")

    def __init__(self, terms: Optional[Dict[Exponent, object]] = None, factors=None):
        t: Dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            c = to_fraction(c)
            if c != 0:
                t[tuple(e)] = c
        self.terms = t
        self.factors = tuple(factors) if factors is not None else None

    @classmethod
    def var(cls, name) -> "MultiPoly":
        i = VARS.index(name) if isinstance(name, str) else name
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): 1})

    @classmethod
    def constant(cls, c) -> "MultiPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def linear(cls, a, b, c, d=0) -> "MultiPoly":
        """a*x + b*y + c*z + d."""
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c, (0, 0, 0): d})

    @classmethod
    def product(cls, factors) -> "MultiPoly":
        """Expanded product that remembers its factorisation.

        ``factors`` holds MultiPolys or ``(MultiPoly, exponent)`` pairs.
        """
        pairs = [(f, 1) if isinstance(f, MultiPoly) else (f[0], int(f[1])) for f in factors]
        out = cls.constant(1)
        for f, e in pairs:
            out = out * (f ** e)
        return cls(out.terms, pairs)

    @property
    def factored_form(self):
        return self.factors

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MultiPoly.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _wrap(self, other):
        return other if isinstance(other, MultiPoly) else MultiPoly.constant(other)

    def __add__(self, other):
        other = self._wrap(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, _ZERO) + c
        return MultiPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = to_fraction(other)
            return MultiPoly({e: c * v for e, v in self.terms.items()})
        t: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                t[e] = t.get(e, _ZERO) + c1 * c2
        factors = None
        if self.factors is not None and other.factors is not None:
            factors = self.factors + other.factors
        return MultiPoly(t, factors)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MultiPoly.constant(1)
        for _ in range(n):
            out = out * MultiPoly(self.terms)
        return out

    def _powers(self, values, deg):
        return [[v**k for k in range(deg + 1)] for v in values]

    def evaluate(self, at) -> Fraction:
        vals = [to_fraction(v) if not isinstance(v, Fraction) else v for v in at]
        deg = max((max(e) for e in self.terms), default=0)
        pw = self._powers(vals, deg)
        total = _ZERO
        for (a, b, c), coef in self.terms.items():
            total += coef * pw[0][a] * pw[1][b] * pw[2][c]
        return total

    __call__ = evaluate

    def partial(self, i: int) -> "MultiPoly":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return MultiPoly(t)

    def gradient(self):
        return tuple(self.partial(i) for i in range(3))

    def substitute(self, px, py, pz) -> "MultiPoly":
        """p(px, py, pz) for MultiPolys px, py, pz."""
        subs = [px, py, pz]
        deg = max((max(e) for e in self.terms), default=0)
        pw = [[MultiPoly.constant(1)] for _ in range(3)]
        for i in range(3):
            for _ in range(deg):
                pw[i].append(pw[i][-1] * subs[i])
        out = MultiPoly()
        for (a, b, c), coef in self.terms.items():
            out = out + pw[0][a] * pw[1][b] * pw[2][c] * coef
        return out

    def restrict(self, base, direction, var="t") -> UniPoly:
        """q(t) = p(base + t * direction)."""
        lins = [UniPoly([to_fraction(b), to_fraction(d)], var) for b, d in zip(base, direction)]
        deg = max((max(e) for e in self.terms), default=0)
        pw = [[UniPoly([1], var)] for _ in range(3)]
        for i in range(3):
            for _ in range(deg):
                pw[i].append(pw[i][-1] * lins[i])
        out = [_ZERO] * (max(self.degree, 0) + 1)
        for (a, b, c), coef in self.terms.items():
            for k, v in enumerate((pw[0][a] * pw[1][b] * pw[2][c]).coeffs):
                out[k] += coef * v
        return UniPoly(out, var)

    def normalized(self) -> "MultiPoly":
        """Scalar multiple whose lex-largest term has coefficient 1."""
        if self.is_zero():
            return self
        lead = self.terms[max(self.terms)]
        return self * (1 / lead)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-v for v in e))):
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(VARS, e) if k
            )
            term = mono if mono and abs(c) == 1 else (f"{abs(c)}*{mono}" if mono else f"{abs(c)}")
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


X = MultiPoly.var("x")
Y = MultiPoly.var("y")
Z = MultiPoly.var("z")


def evaluate(p: MultiPoly, at) -> Fraction:
    return p.evaluate(at)


def gradient(p: MultiPoly):
    return p.gradient()


def restrict_to_line(p: MultiPoly, line: Line3) -> UniPoly:
    return p.restrict(line.base, tuple(line.dir))


_SQUARE_PROBE_SEED = 0x51F
_SQUARE_PROBE_LINES = 3


def possible_square_factor(p: MultiPoly, trials: int = _SQUARE_PROBE_LINES, seed: int = _SQUARE_PROBE_SEED) -> bool:
    """Probe p for repeated factors along random rational lines.

    A repeated factor f^2 of p makes every restriction to a line meeting the
    zero set of f non-square-free, so a square-free restriction on a random
    line is strong evidence that p is square-free.
    """
    if p.degree <= 1:
        return False
    rng = random.Random(seed)
    for _ in range(trials):
        base = [rng.randint(-1000, 1000) for _ in range(3)]
        d = [rng.randint(-1000, 1000) for _ in range(3)]
        if not any(d):
            continue
        q = p.restrict(base, d)
        if q.degree >= 1 and unipoly_gcd(q, q.derivative()).degree >= 1:
            return True
    return False


def square_free_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct factors of p, each to the first power.

    Needs ``p.factored_form``.  Without it, p is returned unchanged only when
    the random-line probe finds no sign of a repeated factor.
    """
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    if p.factors is None:
        if possible_square_factor(p):
            raise UnsupportedRepresentation(
                "polynomial has no factored form and may contain repeated factors"
            )
        return MultiPoly(p.terms, [(p, 1)])
    distinct = {}
    for f, e in p.factors:
        if e <= 0 or f.degree <= 0:
            continue
        distinct.setdefault(f.normalized(), f)
    factors = [distinct[k] for k in sorted(distinct, key=str)]
    out = MultiPoly.product(factors) if factors else MultiPoly.constant(1)
    if possible_square_factor(out):
        raise UnsupportedRepresentation("factored form has factors sharing a common component")
    return out


# --- bivariate and resultants -------------------------------------------------


class BiPoly:
    """Polynomial in ``vars[0]`` whose coefficients are UniPolys in ``vars[1]``."""

    __slots__ = ("coeffs", "vars")

    def __init__(self, coeffs: Sequence[UniPoly], vars=("x", "y")):
        cs = [c if isinstance(c, UniPoly) else UniPoly([c], vars[1]) for c in coeffs]
        cs = [UniPoly(c.coeffs, vars[1]) for c in cs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.vars = tuple(vars)

    @classmethod
    def from_terms(cls, terms: Dict[Tuple[int, int], object], vars=("x", "y")) -> "BiPoly":
        """Build from ``{(i, j): c}`` meaning c * vars[0]^i * vars[1]^j."""
        if not terms:
            return cls([], vars)
        n = max(i for i, _ in terms) + 1
        rows: List[Dict[int, Fraction]] = [dict() for _ in range(n)]
        for (i, j), c in terms.items():
            rows[i][j] = rows[i].get(j, _ZERO) + to_fraction(c)
        coeffs = []
        for row in rows:
            m = max(row, default=-1) + 1
            coeffs.append(UniPoly([row.get(j, 0) for j in range(m)], vars[1]))
        return cls(coeffs, vars)

    def terms(self) -> Dict[Tuple[int, int], Fraction]:
        return {(i, j): c for i, u in enumerate(self.coeffs) for j, c in enumerate(u.coeffs) if c != 0}

    def degree_in(self, var: str) -> int:
        if var == self.vars[0]:
            return len(self.coeffs) - 1
        if var == self.vars[1]:
            return max((u.degree for u in self.coeffs), default=-1)
        raise ValueError(f"unknown variable {var!r}")

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms()), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def swap(self) -> "BiPoly":
        return BiPoly.from_terms({(j, i): c for (i, j), c in self.terms().items()}, self.vars[::-1])

    def evaluate(self, a, b) -> Fraction:
        """Value at vars[0] = a, vars[1] = b."""
        a = to_fraction(a)
        acc = _ZERO
        for u in reversed(self.coeffs):
            acc = acc * a + u(to_fraction(b))
        return acc

    def at_main(self, a) -> UniPoly:
        """Specialise vars[0] = a, leaving a UniPoly in vars[1]."""
        acc = UniPoly([], self.vars[1])
        for u in reversed(self.coeffs):
            acc = acc * to_fraction(a) + u
        return acc

    def at_other(self, b) -> UniPoly:
        """Specialise vars[1] = b, leaving a UniPoly in vars[0]."""
        return UniPoly([u(to_fraction(b)) for u in self.coeffs], self.vars[0])

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms() == other.terms()

    def __hash__(self):
        return hash(frozenset(self.terms().items()))

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        t: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms().items():
            for (i2, j2), c2 in other.terms().items():
                t[(i1 + i2, j1 + j2)] = t.get((i1 + i2, j1 + j2), _ZERO) + c1 * c2
        return BiPoly.from_terms(t, self.vars)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        t = dict(self.terms())
        for k, c in other.terms().items():
            t[k] = t.get(k, _ZERO) - c
        return BiPoly.from_terms(t, self.vars)

    def __repr__(self):
        return f"BiPoly({self.terms()!r}, vars={self.vars})"


def bareiss_det(matrix: List[List[UniPoly]]) -> UniPoly:
    """Fraction-free determinant of a square matrix over Q[var]."""
    n = len(matrix)
    if n == 0:
        return UniPoly([1])
    var = matrix[0][0].var
    m = [list(row) for row in matrix]
    sign = 1
    prev = UniPoly([1], var)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if pivot is None:
                return UniPoly([], var)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = UniPoly([], var)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: BiPoly, g: BiPoly) -> List[List[UniPoly]]:
    """Sylvester matrix in the main variable, coefficients in descending order."""
    l, m = len(f.coeffs) - 1, len(g.coeffs) - 1
    n = l + m
    other = f.vars[1]
    zero = UniPoly([], other)
    rows = []
    for shift, src, width in [(i, f, l) for i in range(m)] + [(i, g, m) for i in range(l)]:
        row = [zero] * n
        desc = src.coeffs[::-1]
        for k in range(width + 1):
            row[shift + k] = desc[k]
        rows.append(row)
    return rows


def sylvester_resultant(f: BiPoly, g: BiPoly, eliminate: str) -> UniPoly:
    """Res(f, g; eliminate) as a polynomial in the remaining variable."""
    if set(f.vars) != set(g.vars):
        raise ValueError("resultant needs both polynomials in the same two variables")
    if eliminate not in f.vars:
        raise ValueError(f"{eliminate!r} is not a variable of the inputs")
    if f.vars[0] != eliminate:
        f = f.swap()
    if g.vars[0] != eliminate:
        g = g.swap()
    if f.degree_in(eliminate) <= 0 or g.degree_in(eliminate) <= 0:
        raise DegreeZero(f"both polynomials need positive degree in {eliminate!r}")
    return bareiss_det(sylvester_matrix(f, g))
