"""Deterministic configuration generators addressed by short recipe strings.

Grammar (colon separated, seeds written ``seedN``)::

    grid:K                  3K^2 axis-parallel lines through {0..K-1}^3
    bush:L:seedS            L concurrent lines, every direction triple spanning
    random:L:seedS[:B]      L distinct lines through lattice points of [-B, B]^3
    pencil:L                L concurrent coplanar lines (no joints); alias coplanar_pencil
    mixed:A+B+...           union of line configurations
    curve_bush:L:B:seedS    L curves of degree <= B meeting only at the origin
    curve_grid:K            the grid lines as degree-1 curves
    planar_grid:K           K^2 lattice points of the plane and its 2K axis lines

For point sets ``random:S:seedN[:B]`` draws S distinct lattice points.
"""
from __future__ import annotations

import random as _random
from dataclasses import dataclass
from itertools import combinations
from typing import List, Tuple, Union

from .curves import ParamCurve, curve_pair_intersections, curve_self_crossings
from .errors import ParameterOutOfRange
from .geometry import (
    Direction3,
    Point2,
    Point3,
    canonicalize_line,
    canonicalize_line2,
    line_through,
    point2,
    point3,
    triple_spans,
)
from .joints import LineConfig
from .poly import UniPoly

CURVE_KINDS = ("curve_bush", "curve_grid")
LINE_KINDS = ("grid", "bush", "random", "pencil", "mixed")
_ALIASES = {"coplanar_pencil": "pencil"}
_REDRAW_LIMIT = 10_000


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: Tuple[Tuple[str, object], ...]
    text: str = ""

    def get(self, name, default=None):
        return dict(self.params).get(name, default)

    def __str__(self):
        return self.text or self.kind

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        text = text.strip()
        kind, _, rest = text.partition(":")
        kind = _ALIASES.get(kind, kind)
        if kind == "mixed":
            parts = tuple(cls.parse(p) for p in rest.split("+") if p)
            if not parts or any(p.kind not in LINE_KINDS for p in parts):
                raise ValueError(f"mixed needs '+'-separated line specs, got {rest!r}")
            return cls(kind, (("parts", parts),), text)
        fields = rest.split(":") if rest else []
        layouts = {
            "grid": ("k",),
            "pencil": ("L",),
            "curve_grid": ("k",),
            "planar_grid": ("k",),
            "bush": ("L", "seed"),
            "random": ("L", "seed", "bound"),
            "curve_bush": ("L", "b", "seed"),
        }
        if kind not in layouts:
            raise ValueError(f"unknown generator {kind!r}")
        names = layouts[kind]
        required = len(names) - (1 if kind == "random" else 0)
        if not required <= len(fields) <= len(names):
            raise ValueError(f"{kind} expects {':'.join(names)}, got {rest!r}")
        params = []
        for name, raw in zip(names, fields):
            if name == "seed":
                if not raw.startswith("seed"):
                    raise ValueError(f"seed field must look like seedN, got {raw!r}")
                raw = raw[4:]
            try:
                params.append((name, int(raw)))
            except ValueError:
                raise ValueError(f"{kind}: {name} must be an integer, got {raw!r}") from None
        return cls(kind, tuple(params), text)


def _positive(spec: GeneratorSpec, *names):
    for n in names:
        v = spec.get(n)
        if v is not None and v < 1:
            raise ParameterOutOfRange(f"{spec.kind}: {n} must be >= 1, got {v}")


def generate(spec: Union[str, GeneratorSpec]) -> Union[LineConfig, List[ParamCurve]]:
    if isinstance(spec, str):
        spec = GeneratorSpec.parse(spec)
    _positive(spec, "k", "L", "b", "bound")
    kind = spec.kind
    if kind == "grid":
        lines = grid_lines(spec.get("k"))
    elif kind == "bush":
        lines = bush_lines(spec.get("L"), spec.get("seed"))
    elif kind == "random":
        lines = random_lines(spec.get("L"), spec.get("seed"), spec.get("bound", 2))
    elif kind == "pencil":
        lines = pencil_lines(spec.get("L"))
    elif kind == "mixed":
        lines = [ln.with_id(None) for part in spec.get("parts") for ln in generate(part).lines]
    elif kind == "planar_grid":
        raise ValueError("planar_grid describes points and lines together; use planar_grid()")
    elif kind == "curve_bush":
        return curve_bush(spec.get("L"), spec.get("b"), spec.get("seed"))
    else:
        return [ParamCurve.from_line(ln) for ln in LineConfig.from_lines(grid_lines(spec.get("k"))).lines]
    return LineConfig.from_lines(lines, provenance=str(spec))


def grid_lines(k: int):
    out = []
    for a in range(k):
        for b in range(k):
            out.append(canonicalize_line((0, a, b), (1, 0, 0)))
            out.append(canonicalize_line((a, 0, b), (0, 1, 0)))
            out.append(canonicalize_line((a, b, 0), (0, 0, 1)))
    return out


def _spanning_directions(L: int, seed: int, bound: int) -> List[Direction3]:
    rng = _random.Random(seed)
    dirs: List[Direction3] = []
    for _ in range(_REDRAW_LIMIT * max(L, 1)):
        if len(dirs) == L:
            break
        v = [rng.randint(-bound, bound) for _ in range(3)]
        if not any(v):
            continue
        d = Direction3.of(*v)
        if d in dirs or any(not triple_spans(a, b, d) for a, b in combinations(dirs, 2)):
            continue
        dirs.append(d)
    if len(dirs) < L:
        raise ParameterOutOfRange(f"could not draw {L} directions in general position")
    return dirs


def bush_lines(L: int, seed: int):
    """L lines through the origin with every triple of directions spanning."""
    origin = (0, 0, 0)
    return [canonicalize_line(origin, d) for d in _spanning_directions(L, seed, max(8, 2 * L))]


def random_lines(L: int, seed: int, bound: int = 2):
    """L distinct lines, each through two random lattice points of [-bound, bound]^3."""
    n = (2 * bound + 1) ** 3
    if L > n * (n - 1) // 2:
        raise ParameterOutOfRange(f"{L} distinct lines cannot fit in [-{bound}, {bound}]^3")
    rng = _random.Random(seed)
    seen = set()
    out = []
    for _ in range(_REDRAW_LIMIT * L):
        if len(out) == L:
            return out
        p = [rng.randint(-bound, bound) for _ in range(3)]
        q = [rng.randint(-bound, bound) for _ in range(3)]
        if p == q:
            continue
        ln = line_through(p, q)
        if ln not in seen:
            seen.add(ln)
            out.append(ln)
    raise ParameterOutOfRange(f"only {len(out)} distinct lines fit in [-{bound}, {bound}]^3")


def planar_grid(k: int) -> Tuple[List[Point2], list]:
    """The k x k lattice points of the plane with the 2k axis-parallel lines through them."""
    if k < 1:
        raise ParameterOutOfRange("planar_grid needs k >= 1")
    points = [point2(i, j) for i in range(k) for j in range(k)]
    lines = [canonicalize_line2((i, 0), (0, 1), id=f"x={i}") for i in range(k)]
    lines += [canonicalize_line2((0, j), (1, 0), id=f"y={j}") for j in range(k)]
    return points, lines


def pencil_lines(L: int):
    return [canonicalize_line((0, 0, 0), (1, i, 0)) for i in range(L)]


def curve_bush(L: int, b: int, seed: int) -> List[ParamCurve]:
    """L curves through the origin at t = 0 with spanning tangents and no other meetings.

    Each curve is d*t plus random integer higher-order terms up to degree b; a
    draw is rejected unless its intersections with every earlier curve are
    exactly the origin pair and are certified complete.
    """
    rng = _random.Random(seed)
    dirs = _spanning_directions(L, rng.randrange(1 << 30), max(8, 2 * L))
    origin = Point3(*(point3(0, 0, 0)))
    curves: List[ParamCurve] = []
    for i, d in enumerate(dirs):
        for _ in range(_REDRAW_LIMIT):
            coords = []
            for comp in d:
                coeffs = [0, comp] + [rng.randint(-3, 3) for _ in range(2, b + 1)]
                coords.append(UniPoly(coeffs))
            if all(c.degree <= 0 for c in coords):
                continue
            cand = ParamCurve(*coords, id=i, degree_bound=b)
            if _isolated(cand, curves, origin):
                curves.append(cand)
                break
        else:
            raise ParameterOutOfRange(f"could not draw curve {i} meeting the others only at the origin")
    return curves


def _isolated(cand: ParamCurve, curves: List[ParamCurve], origin: Point3) -> bool:
    params, complete = cand.parameters_at(origin)
    if params != [0] or not complete:
        return False
    selfx = curve_self_crossings(cand)
    if selfx.pairs or not selfx.complete:
        return False
    for other in curves:
        res = curve_pair_intersections(cand, other)
        if not res.complete or res.pairs != ((0, 0),):
            return False
    return True


def random_points(S: int, seed: int, bound: int = 1000) -> List[Point3]:
    """S distinct lattice points of [-bound, bound]^3."""
    if S < 1 or bound < 1:
        raise ParameterOutOfRange("need S >= 1 and bound >= 1")
    if S > (2 * bound + 1) ** 3:
        raise ParameterOutOfRange(f"{S} distinct points do not fit in [-{bound}, {bound}]^3")
    rng = _random.Random(seed)
    seen = set()
    out = []
    while len(out) < S:
        p = point3(*(rng.randint(-bound, bound) for _ in range(3)))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def generate_points(spec: Union[str, GeneratorSpec]) -> List[Point3]:
    """Point sets: ``random:S:seedN[:B]`` or ``grid:K`` (the K^3 lattice cube)."""
    if isinstance(spec, str):
        spec = GeneratorSpec.parse(spec)
    _positive(spec, "k", "L", "bound")
    if spec.kind == "random":
        return random_points(spec.get("L"), spec.get("seed"), spec.get("bound", 1000))
    if spec.kind == "grid":
        k = spec.get("k")
        return [point3(a, b, c) for a in range(k) for b in range(k) for c in range(k)]
    raise ValueError(f"{spec.kind} does not describe a point set")
