import json
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jointcount import LineConfig, canonicalize_line, generate, point3
from jointcount import io as jio
from jointcount.errors import InputFormatError

DOCS = Path(__file__).resolve().parents[1] / "docs"
SCHEMA = json.loads((DOCS / "config.schema.json").read_text())


@pytest.mark.parametrize("name", ["grid2.json", "bush4.json", "curvebush3.json"])
def test_golden_files_validate_and_round_trip(name):
    text = (DOCS / name).read_text()
    jsonschema.validate(json.loads(text), SCHEMA)
    assert jio.serialize(jio.parse(text)) == text


@pytest.mark.parametrize("spec", ["grid:3", "bush:7:seed2", "curve_bush:3:2:seed5", "curve_grid:2"])
def test_generated_configs_round_trip(spec):
    obj = generate(spec)
    text = jio.serialize(obj)
    jsonschema.validate(json.loads(text), SCHEMA)
    back = jio.parse(text)
    assert jio.serialize(back) == text
    if isinstance(obj, LineConfig):
        assert back.lines == obj.lines


fr = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)


@given(st.lists(st.tuples(fr, fr, fr), min_size=1, max_size=20))
def test_points_round_trip(pts):
    pts = [point3(*p) for p in pts]
    text = jio.serialize(pts)
    assert jio.parse(text) == pts
    assert jio.serialize(jio.parse(text)) == text


def test_rationals_are_strings():
    cfg = LineConfig.from_lines([canonicalize_line((Fraction(1, 3), 0, 0), (0, 1, 0))])
    data = jio.encode(cfg)
    assert data["lines"][0]["point"] == ["1/3", "0", "0"]
    assert data["lines"][0]["dir"] == [0, 1, 0]


def test_digest_is_stable():
    assert jio.digest("abc") == "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"


def test_syntax_errors_report_position():
    with pytest.raises(InputFormatError) as exc:
        jio.parse('{"kind": "lines",\n}')
    assert "line 2, column 1" in str(exc.value)


@pytest.mark.parametrize("doc, where", [
    ({"kind": "planes", "planes": []}, "$.kind"),
    ({"kind": "lines", "version": 2, "lines": []}, "$.version"),
    ({"kind": "lines", "lines": [{"point": ["0", "0"], "dir": [1, 0, 0]}]}, "$.lines[0].point"),
    ({"kind": "lines", "lines": [{"point": ["0", "0", "0"], "dir": [0, 0, 0]}]}, "$.lines[0].dir"),
    ({"kind": "lines", "lines": [{"point": ["0", "0", "0.5"], "dir": [1, 0, 0]}]}, "$.lines[0].point[2]"),
    ({"kind": "lines", "lines": [{"point": [0, 0, 0], "dir": [1.5, 0, 0]}]}, "$.lines[0].dir"),
    ({"kind": "lines", "lines": [{"id": 1, "point": [0, 0, 0], "dir": [1, 0, 0]},
                                 {"id": 1, "point": [0, 1, 0], "dir": [1, 0, 0]}]}, "$.lines"),
    ({"kind": "curves", "curves": [{"x": ["1"], "y": ["2"], "z": ["3"]}]}, "$.curves[0]"),
    ({"kind": "points", "points": [["1", "x", "0"]]}, "$.points[0][1]"),
])
def test_validation_errors_carry_paths(doc, where):
    with pytest.raises(InputFormatError) as exc:
        jio.decode(doc)
    assert where in str(exc.value)


def test_save_and_load(tmp_path):
    cfg = generate("grid:2")
    path = tmp_path / "g.json"
    jio.save(cfg, str(path))
    assert jio.load(str(path)).lines == cfg.lines
