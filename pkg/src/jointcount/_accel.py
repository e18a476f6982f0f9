"""Kernel backend selection.

The compiled extension is used when it was built and ``JOINTCOUNT_PURE`` is
not set; otherwise the pure-Python kernels are used.  Both expose the same
functions with identical results.
"""
import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_compiled = None
if not os.environ.get("JOINTCOUNT_PURE"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _compiled = None


def count_spanning_triples(dirs, backend=None) -> int:
    """Number of unordered triples of rows of ``dirs`` with nonzero determinant."""
    rows = [tuple(int(c) for c in d) for d in dirs]
    use = backend or BACKEND
    if use == "cython" and _compiled is not None and rows:
        if max(abs(c) for row in rows for c in row) <= _compiled.MAX_COMPONENT:
            arr = np.ascontiguousarray(rows, dtype=np.int64)
            return int(_compiled.count_spanning_triples(arr))
    return _kernels_py.count_spanning_triples(rows)


def sign_discrepancy(values, labels, halves, tol=0.0, backend=None):
    """Discrepancy of a sign pattern: sum over sets of excess beyond the half quota."""
    use = backend or BACKEND
    if use == "cython" and _compiled is not None:
        return _compiled.sign_discrepancy(
            np.ascontiguousarray(values, dtype=np.float64),
            np.ascontiguousarray(labels, dtype=np.int64),
            np.ascontiguousarray(halves, dtype=np.int64),
            float(tol),
        )
    return _kernels_py.sign_discrepancy(values, labels, halves, tol)


def sweep_discrepancy(order, signs, labels, halves, backend=None):
    """Discrepancy after each successive sign flip along ``order`` (length len(order) + 1)."""
    use = backend or BACKEND
    args = [np.ascontiguousarray(a, dtype=np.int64) for a in (order, signs, labels, halves)]
    if use == "cython" and _compiled is not None:
        return np.asarray(_compiled.sweep_discrepancy(*args))
    return _kernels_py.sweep_discrepancy(*args)
