"""Exact joint counting and the polynomial-method toolkit around it.

Lines and curves in R^3 with rational data, their joints and multiplicities,
weighted joint bounds, polynomial partitioning of point sets, zero-set audits
and incidence counts.  All geometric predicates are exact.
"""

__version__ = "0.1.0"

from ._accel import BACKEND
from .curves import (
    CurveJointRecord,
    ParamCurve,
    TangentSet,
    curve_bound_report,
    curve_pair_intersections,
    curve_self_crossings,
    detect_curve_joints,
    tangent_direction,
)
from .errors import *  # noqa: F401,F403
from .generators import GeneratorSpec, generate, generate_points, random_points
from .geometry import (
    AffineMap,
    Direction3,
    IntersectionKind,
    Line3,
    Point3,
    canonicalize_line,
    count_incidences,
    line_intersection,
    line_through,
    point3,
    project_generic,
    triple_spans,
)
from .joints import (
    JointRecord,
    LineConfig,
    bound_report,
    check_lemma31,
    check_lemma32,
    detect_joints,
    dyadic_stats,
    multiplicity,
    proposition12_report,
    rich_points_report,
    st_report,
)
from .partition import (
    ZBUCKET,
    BisectionStep,
    Partition,
    PointSet,
    assign_cells,
    discrete_ham_sandwich,
    guth_katz_partition,
    veronese_lift,
)
from .poly import (
    BiPoly,
    MultiPoly,
    UniPoly,
    evaluate,
    gradient,
    rational_roots,
    restrict_to_line,
    square_free_part,
    sylvester_resultant,
)
from .zeroset import (
    common_zero_lines,
    critical_line_census,
    lines_in_zero_set,
    surface_line_incidences,
)
