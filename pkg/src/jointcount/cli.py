"""Command-line entry point: ``jointcount <command> [flags]``.

Exit codes: 0 success, 1 usage or input errors, 2 failed verification.
Reports are canonical JSON and byte-identical across runs with the same
flags; wall-clock timings are only included with ``--timings``.
"""
from __future__ import annotations

import argparse
import csv
import io as _stdio
import sys
import time
from decimal import Decimal
from typing import Dict, List, Optional

from . import __version__, _accel
from . import io as jio
from .curves import ParamCurve, curve_bound_report, detect_curve_joints
from .errors import JointsError
from .generators import GeneratorSpec, generate, generate_points, planar_grid
from .geometry import canonicalize_line
from .joints import (
    LineConfig,
    bound_report,
    detect_joints,
    dyadic_class,
    dyadic_stats,
    proposition12_report,
    rich_points_report,
    st_report,
)
from .partition import DEFAULT_MAX_ITER, assign_cells, guth_katz_partition, step_degrees
from .suites import SUITES
from .verify import ORACLE_LINE_LIMIT, brute_force_joints, compare_joints

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _num(d: Decimal) -> str:
    return str(d.normalize()) if d == d.to_integral_value() else str(d)


def _point(p) -> List[str]:
    return [jio.rational(c) for c in p]


def _sign_key(signs) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


# --- inputs ---------------------------------------------------------------------


def _load(args, want: str):
    """Return (object, source description) for --gen or --input."""
    if bool(args.gen) == bool(args.input):
        raise UsageError("give exactly one of --gen and --input")
    if args.gen:
        spec = GeneratorSpec.parse(args.gen)
        if want == "points":
            return generate_points(spec), f"gen:{spec}"
        obj = generate(spec)
        is_curves = isinstance(obj, list)
        if is_curves != (want == "curves"):
            raise UsageError(f"generator {spec.kind!r} does not produce {want}")
        return obj, f"gen:{spec}"
    obj = jio.load(args.input)
    kind = "lines" if isinstance(obj, LineConfig) else ("curves" if obj and isinstance(obj[0], ParamCurve) else "points")
    if kind != want:
        raise UsageError(f"{args.input} holds {kind}, this command needs {want}")
    return obj, "file"


def _report(command: str, source: str, data_text: str, seeds: Dict[str, int], result: Dict) -> Dict:
    return {
        "tool": "jointcount",
        "version": __version__,
        "command": command,
        "input": {"source": source, "digest": jio.digest(data_text)},
        "seeds": seeds,
        "result": result,
    }


# --- commands -------------------------------------------------------------------


def cmd_joints(args):
    config, source = _load(args, "lines")
    joints = detect_joints(config)
    rep = bound_report(config, joints)
    stats = dyadic_stats(joints)
    result = {
        "L": config.L,
        "duplicates_removed": config.duplicates_removed,
        "joint_count": rep.joint_count,
        "weighted_sum": _num(rep.weighted_sum),
        "rhs": _num(rep.rhs),
        "ratio": _num(rep.ratio),
        "dyadic": [{"lambda": a, "mu": b, "count": c} for a, b, c in stats.rows()],
        "joints": [
            {"location": _point(j.location), "lines": list(j.incident_line_ids),
             "k": j.k_count, "N": j.multiplicity}
            for j in joints
        ],
    }
    if args.n is not None or args.k is not None:
        if args.n is None or args.k is None:
            raise UsageError("--n and --k go together")
        pr = proposition12_report(config, args.n, args.k, joints)
        result["dyadic_class"] = {"N": pr.N, "k": pr.k, "size": pr.class_size, "lhs": _num(pr.lhs),
                                  "term1": _num(pr.term1), "term2": _num(pr.term2)}
    ok = True
    if args.verify:
        if config.L > ORACLE_LINE_LIMIT:
            result["verification"] = {"oracle": "skipped", "reason": f"more than {ORACLE_LINE_LIMIT} lines"}
        else:
            diff = compare_joints(joints, brute_force_joints(config.lines))
            ok = not diff
            result["verification"] = {"oracle": "passed" if ok else "failed", "mismatches": len(diff)}
    csv_rows = [("lambda", "mu", "count")] + stats.rows()
    return _report("joints", source, jio.serialize(config), {}, result), csv_rows, ok


def cmd_partition(args):
    points, source = _load(args, "points")
    degree = args.degree if args.degree is not None else 4
    part = guth_katz_partition(points, degree, seed=args.seed, max_iter=args.max_iter)
    cells = part.cells()
    a = part.audit
    result = {
        "S": len(points),
        "degree_budget": str(part.degree_budget),
        "J": part.J,
        "step_degrees": step_degrees(part.degree_budget),
        "converged": part.converged,
        "steps": [
            {"degree": s.poly.degree, "converged": s.converged, "iterations": s.iterations,
             "sets": len(s.per_set_counts), "poly": str(s.poly)}
            for s in part.steps
        ],
        "audit": {
            "nonempty_cells": a.nonempty_cells, "max_cell_count": a.max_cell_count,
            "z_bucket_count": a.z_bucket_count, "degree_used": a.degree_used,
            "target_cells": a.target_cells, "all_converged": a.all_converged,
            "halving_ok": a.halving_ok,
            "occupancy_constant": repr(a.occupancy_constant),
            "cell_count_constant": repr(a.cell_count_constant),
        },
        "cells": {_sign_key(k): v for k, v in sorted(cells.items())},
    }
    ok = True
    if args.verify:
        again = assign_cells(points, part)
        same = again == list(part.assignments)
        claims = all(e.ok for e, s in _ledger_with_steps(part) if s.converged)
        bound = (not part.converged) or a.max_cell_count <= -(-len(points) // 2**part.J)
        ok = same and claims and bound
        result["verification"] = {"reassignment": same, "converged_steps_halve": claims,
                                  "cell_bound": bound}
    csv_rows = [("step", "cell", "parent_count", "n_pos", "n_neg", "n_zero", "ok")] + [
        (e.step, _sign_key(e.cell) or "root", e.parent_count, e.n_pos, e.n_neg, e.n_zero, int(e.ok))
        for e in part.ledger
    ]
    seeds = {"seed": args.seed, "max_iter": args.max_iter}
    return _report("partition", source, jio.serialize(points), seeds, result), csv_rows, ok


def _ledger_with_steps(part):
    for e in part.ledger:
        yield e, part.steps[e.step - 1]


def cmd_curves(args):
    curves, source = _load(args, "curves")
    found = detect_curve_joints(curves)
    rep = curve_bound_report(curves, found)
    rows: Dict[tuple, int] = {}
    for j in found.joints:
        key = (dyadic_class(j.multiplicity), dyadic_class(len(j.tangent_set.directions)))
        rows[key] = rows.get(key, 0) + 1
    result = {
        "curve_count": rep.curve_count,
        "joint_count": rep.joint_count,
        "complete": rep.complete,
        "flagged_pairs": rep.flagged_pairs,
        "weighted_sum": _num(rep.weighted_sum),
        "rhs": _num(rep.rhs),
        "ratio": _num(rep.ratio),
        "joints": [
            {"location": _point(j.location), "N": j.multiplicity,
             "directions": [list(d) for d in j.tangent_set.directions],
             "contributing": [[cid, jio.rational(t)] for cid, t in j.tangent_set.contributing]}
            for j in found.joints
        ],
    }
    ok = True
    if args.verify:
        on_curve = all(
            next(c for c in curves if c.id == cid).point_at(t) == j.location
            for j in found.joints for cid, t in j.tangent_set.contributing
        )
        check = {"parameters_on_curves": on_curve}
        if all(c.degree == 1 for c in curves):
            lines = LineConfig.from_lines([_as_line(c) for c in curves])
            expect = {x.location: x.multiplicity for x in detect_joints(lines)}
            got = {j.location: j.multiplicity for j in found.joints}
            check["matches_line_engine"] = expect == got
        ok = all(check.values())
        result["verification"] = check
    csv_rows = [("lambda", "mu", "count")] + [(a, b, c) for (a, b), c in sorted(rows.items())]
    return _report("curves", source, jio.serialize(curves), {}, result), csv_rows, ok


def _as_line(c: ParamCurve):
    return canonicalize_line(c.point_at(0), c.velocity(0), c.id)


def cmd_incidences(args):
    if args.gen and GeneratorSpec.parse(args.gen).kind == "planar_grid":
        spec = GeneratorSpec.parse(args.gen)
        points, lines = planar_grid(spec.get("k"))
        source = f"gen:{spec}"
        text = jio.dumps({"points": [_point(q) for q in points],
                          "lines": [{"point": _point(ln.base), "dir": list(ln.dir)} for ln in lines]})
    else:
        if not args.points:
            raise UsageError("incidences needs --gen planar_grid:K or lines plus --points FILE")
        config, source = _load(args, "lines")
        points = jio.load(args.points)
        lines = list(config.lines)
        text = jio.serialize(config) + jio.serialize(points)
    rep = st_report(points, lines, seed=args.seed)
    result = {"P": len(points), "L": len(lines), "I": rep.I, "bound": _num(rep.bound),
              "ratio": _num(rep.ratio), "projected": rep.projected}
    if rep.projection is not None:
        result["projection"] = {"direction": list(rep.projection.direction),
                                "dropped_axis": rep.projection.dropped_axis,
                                "rejections": rep.projection.rejections}
    return _report("incidences", source, text, {"seed": args.seed}, result), None, True


def cmd_rich(args):
    config, source = _load(args, "lines")
    if args.k is None:
        raise UsageError("rich needs --k")
    rep = rich_points_report(config.lines, args.k)
    result = {"L": config.L, "k": rep.k, "S": rep.S,
              "bound_terms": [jio.rational(t) for t in rep.bound_terms]}
    return _report("rich", source, jio.serialize(config), {}, result), None, True


def cmd_suite(args):
    if args.name not in SUITES:
        raise UsageError(f"unknown suite {args.name!r}; choose from {sorted(SUITES)}")
    kwargs = {"seed": args.seed}
    if args.n is not None:
        kwargs["n"] = args.n
    res = SUITES[args.name](**kwargs)
    return _report("suite", f"suite:{args.name}", "", {"seed": args.seed}, res.as_dict()), None, res.passed


def cmd_generate(args):
    if not args.gen:
        raise UsageError("generate needs --gen")
    obj = generate_points(args.gen) if args.points_only else generate(args.gen)
    return None, jio.serialize(obj), True


COMMANDS = {
    "joints": cmd_joints,
    "partition": cmd_partition,
    "curves": cmd_curves,
    "incidences": cmd_incidences,
    "rich": cmd_rich,
    "suite": cmd_suite,
    "generate": cmd_generate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jointcount", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"jointcount {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--gen", help="generator spec, e.g. grid:5 or bush:20:seed1")
        p.add_argument("--input", help="JSON input file")
        p.add_argument("--output", help="write the report here instead of standard output")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--degree", type=float)
        p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
        p.add_argument("--k", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--verify", action="store_true", help="run brute-force cross-checks")
        p.add_argument("--timings", action="store_true", help="add wall-clock timings to the report")
        if name == "incidences":
            p.add_argument("--points", help="JSON file of points (with --gen/--input lines)")
        if name == "suite":
            p.add_argument("--name", required=True, help=f"one of {', '.join(sorted(SUITES))}")
        if name == "generate":
            p.add_argument("--points-only", action="store_true", help="emit a point set")
    return parser


def _degree_arg(value: Optional[float]):
    if value is None:
        return None
    return int(value) if float(value).is_integer() else value


def run(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing command; try --help")
        args.degree = _degree_arg(args.degree)
        start = time.perf_counter()
        report, extra, ok = COMMANDS[args.command](args)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (JointsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if report is None:
        text = extra
    elif args.format == "csv":
        if extra is None:
            print(f"error: {args.command} has no CSV form", file=sys.stderr)
            return EXIT_USAGE
        buf = _stdio.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(extra)
        text = buf.getvalue()
    else:
        if args.timings:
            report["timings"] = {"seconds": round(elapsed, 6), "backend": _accel.BACKEND}
        text = jio.dumps(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK if ok else EXIT_VERIFY


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
