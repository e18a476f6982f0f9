import io
import json
import subprocess
import sys

import pytest

from jointcount import generate
from jointcount import io as jio
from jointcount.cli import run


def _run(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_joints_grid_report():
    code, text = _run("joints", "--gen", "grid:5")
    assert code == 0
    rep = json.loads(text)
    assert rep["tool"] == "jointcount" and rep["command"] == "joints"
    r = rep["result"]
    assert r["L"] == 75 and r["joint_count"] == 125 and r["weighted_sum"] == "125"
    assert r["ratio"].startswith("0.192450089729875")
    assert rep["input"]["digest"].startswith("sha256:")
    assert "timings" not in rep


def test_reports_are_byte_identical_across_runs():
    for argv in (["joints", "--gen", "bush:9:seed3"], ["partition", "--gen", "random:200:seed1", "--degree", "4"],
                 ["curves", "--gen", "curve_bush:4:2:seed1"]):
        assert _run(*argv) == _run(*argv)


def test_timings_are_opt_in():
    rep = json.loads(_run("joints", "--gen", "grid:2", "--timings")[1])
    assert rep["timings"]["seconds"] >= 0 and rep["timings"]["backend"] in ("cython", "python")


def test_verify_and_dyadic_class():
    code, text = _run("joints", "--gen", "bush:8:seed2", "--verify", "--n", "32", "--k", "8")
    r = json.loads(text)["result"]
    assert code == 0 and r["verification"]["oracle"] == "passed"
    assert r["dyadic_class"]["size"] == 1


def test_csv_output():
    code, text = _run("joints", "--gen", "grid:2", "--format", "csv")
    assert code == 0
    assert text.splitlines() == ["lambda,mu,count", "0,1,8"]
    code, text = _run("partition", "--gen", "random:64:seed2", "--degree", "4", "--format", "csv")
    rows = text.splitlines()
    assert rows[0] == "step,cell,parent_count,n_pos,n_neg,n_zero,ok" and rows[1].startswith("1,root,64,")


def test_input_file_and_output_file(tmp_path):
    src = tmp_path / "cfg.json"
    jio.save(generate("grid:3"), str(src))
    dst = tmp_path / "out.json"
    assert _run("joints", "--input", str(src), "--output", str(dst)) == (0, "")
    assert json.loads(dst.read_text())["result"]["joint_count"] == 27


def test_partition_report():
    code, text = _run("partition", "--gen", "random:512:seed1", "--degree", "4", "--verify")
    r = json.loads(text)["result"]
    assert code == 0 and r["J"] == 2 and r["step_degrees"] == [1, 2]
    assert r["verification"] == {"reassignment": True, "converged_steps_halve": True, "cell_bound": True}
    assert sum(r["cells"].values()) + r["audit"]["z_bucket_count"] == 512


def test_curves_incidences_rich_suite():
    r = json.loads(_run("curves", "--gen", "curve_bush:6:3:seed2")[1])["result"]
    assert r["joint_count"] == 1 and r["joints"][0]["N"] == 20
    r = json.loads(_run("incidences", "--gen", "planar_grid:10")[1])["result"]
    assert r["I"] == 200 and r["ratio"].startswith("0.")
    r = json.loads(_run("rich", "--gen", "grid:2", "--k", "3")[1])["result"]
    assert r["S"] == 8 and r["bound_terms"] == ["16/3", "4"]
    code, text = _run("suite", "--name", "oracle", "--n", "5")
    assert code == 0 and json.loads(text)["result"]["instances"] == 5


def test_generate_round_trips_through_joints(tmp_path):
    code, text = _run("generate", "--gen", "bush:5:seed1")
    assert code == 0 and jio.serialize(jio.parse(text)) == text
    code, text = _run("generate", "--gen", "random:10:seed1", "--points-only")
    assert json.loads(text)["kind"] == "points"


@pytest.mark.parametrize("argv", [
    [], ["joints"], ["joints", "--gen", "cube:3"], ["joints", "--gen", "grid:0"],
    ["rich", "--gen", "grid:2"], ["suite", "--name", "nope"], ["joints", "--bogus"],
    ["incidences", "--gen", "grid:2"], ["joints", "--gen", "grid:2", "--n", "4"],
    ["partition", "--gen", "random:10:seed1", "--degree", "1"],
    ["curves", "--gen", "curve_grid:2", "--format", "csv", "--input", "/nonexistent.json"],
])
def test_usage_and_input_errors_exit_one(argv, capsys):
    code, _ = _run(*argv)
    assert code == 1
    assert capsys.readouterr().err.startswith("error:")


def test_malformed_json_points_to_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "lines",\n}')
    assert _run("joints", "--input", str(bad))[0] == 1
    assert "line 2, column 1" in capsys.readouterr().err


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jointcount.cli", "joints", "--gen", "grid:2"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["result"]["joint_count"] == 8
