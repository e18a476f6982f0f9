"""JSON reading and writing for line, curve and point configurations.

Rationals are strings (``"3"``, ``"-1/2"``) so nothing passes through a float;
direction vectors are JSON integers.  :func:`dumps` is canonical (sorted keys,
two-space indent, trailing newline), so a canonical file survives a
parse/serialize round trip byte for byte.
"""
from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Union

from .curves import ParamCurve
from .errors import InputFormatError
from .geometry import Point3, canonicalize_line, point3
from .joints import LineConfig
from .poly import UniPoly

FORMAT_VERSION = 1
KINDS = ("lines", "curves", "points")
_RATIONAL = re.compile(r"\s*[+-]?\d+(/\d*[1-9]\d*)?\s*")


def rational(v: Fraction) -> str:
    return str(Fraction(v))


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


# --- encoding ------------------------------------------------------------------


def encode_lines(config: LineConfig) -> Dict[str, Any]:
    return {
        "kind": "lines",
        "version": FORMAT_VERSION,
        "lines": [
            {"id": ln.id, "point": [rational(c) for c in ln.base], "dir": list(ln.dir)}
            for ln in config.lines
        ],
    }


def encode_curves(curves: Sequence[ParamCurve]) -> Dict[str, Any]:
    return {
        "kind": "curves",
        "version": FORMAT_VERSION,
        "curves": [
            {
                "id": c.id,
                "x": [rational(v) for v in c.px.coeffs],
                "y": [rational(v) for v in c.py.coeffs],
                "z": [rational(v) for v in c.pz.coeffs],
            }
            for c in curves
        ],
    }


def encode_points(points: Sequence[Point3]) -> Dict[str, Any]:
    return {
        "kind": "points",
        "version": FORMAT_VERSION,
        "points": [[rational(c) for c in p] for p in points],
    }


def encode(obj) -> Dict[str, Any]:
    if isinstance(obj, LineConfig):
        return encode_lines(obj)
    obj = list(obj)
    if obj and isinstance(obj[0], ParamCurve):
        return encode_curves(obj)
    return encode_points(obj)


def serialize(obj) -> str:
    return dumps(encode(obj))


# --- decoding ------------------------------------------------------------------


def _scalar(v, path: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise InputFormatError(f"expected a rational string or integer, got {v!r}", path=path)
    if isinstance(v, int):
        return Fraction(v)
    # decimal and exponent forms are refused so files stay in "n" or "n/d" form
    if not _RATIONAL.fullmatch(v):
        raise InputFormatError(f"not a rational number: {v!r}", path=path)
    return Fraction(v.strip())


def _vector(v, n: int, path: str, integer: bool = False):
    if not isinstance(v, list) or len(v) != n:
        raise InputFormatError(f"expected a list of {n} entries", path=path)
    if integer:
        if any(isinstance(c, bool) or not isinstance(c, int) for c in v):
            raise InputFormatError("direction entries must be integers", path=path)
        return tuple(v)
    return tuple(_scalar(c, f"{path}[{i}]") for i, c in enumerate(v))


def _field(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise InputFormatError("expected an object", path=path)
    if key not in obj:
        raise InputFormatError(f"missing key {key!r}", path=path)
    return obj[key]


def _id(v, path: str):
    if v is None or (isinstance(v, (int, str)) and not isinstance(v, bool)):
        return v
    raise InputFormatError("id must be an integer or a string", path=path)


def decode(data: Dict[str, Any]) -> Union[LineConfig, List[ParamCurve], List[Point3]]:
    kind = _field(data, "kind", "$")
    if kind not in KINDS:
        raise InputFormatError(f"kind must be one of {KINDS}, got {kind!r}", path="$.kind")
    version = data.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise InputFormatError(f"unsupported format version {version!r}", path="$.version")
    items = _field(data, kind, "$")
    if not isinstance(items, list):
        raise InputFormatError("expected a list", path=f"$.{kind}")
    if kind == "points":
        return [point3(*_vector(p, 3, f"$.points[{i}]")) for i, p in enumerate(items)]
    if kind == "lines":
        lines = []
        for i, item in enumerate(items):
            path = f"$.lines[{i}]"
            pt = _vector(_field(item, "point", path), 3, path + ".point")
            dv = _vector(_field(item, "dir", path), 3, path + ".dir", integer=True)
            if not any(dv):
                raise InputFormatError("direction is zero", path=path + ".dir")
            lines.append(canonicalize_line(pt, dv, _id(item.get("id"), path + ".id")))
        try:
            return LineConfig.from_lines(lines)
        except ValueError as exc:
            raise InputFormatError(str(exc), path="$.lines") from None
    curves = []
    for i, item in enumerate(items):
        path = f"$.curves[{i}]"
        coords = []
        for axis in "xyz":
            raw = _field(item, axis, path)
            if not isinstance(raw, list):
                raise InputFormatError("expected a coefficient list", path=f"{path}.{axis}")
            coords.append(UniPoly([_scalar(c, f"{path}.{axis}[{k}]") for k, c in enumerate(raw)]))
        cid = _id(item.get("id", i), path + ".id")
        try:
            curves.append(ParamCurve(*coords, id=cid))
        except ValueError as exc:
            raise InputFormatError(str(exc), path=path) from None
    if len({c.id for c in curves}) != len(curves):
        raise InputFormatError("curve ids must be unique", path="$.curves")
    return curves


def parse(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return decode(data)


def load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def save(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(obj))
