# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Semantics match ``_kernels_py`` exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

# |component| <= 2**20 keeps every 3x3 determinant below 6 * 2**60 < 2**63.
MAX_COMPONENT = 1 << 20


def count_spanning_triples(long long[:, ::1] dirs):
    cdef Py_ssize_t n = dirs.shape[0]
    cdef Py_ssize_t i, j, k
    cdef long long cx, cy, cz, count = 0
    for i in range(n):
        for j in range(i + 1, n):
            cx = dirs[i, 1] * dirs[j, 2] - dirs[i, 2] * dirs[j, 1]
            cy = dirs[i, 2] * dirs[j, 0] - dirs[i, 0] * dirs[j, 2]
            cz = dirs[i, 0] * dirs[j, 1] - dirs[i, 1] * dirs[j, 0]
            if cx == 0 and cy == 0 and cz == 0:
                continue
            for k in range(j + 1, n):
                if cx * dirs[k, 0] + cy * dirs[k, 1] + cz * dirs[k, 2] != 0:
                    count += 1
    return count


def sign_discrepancy(double[::1] values, long long[::1] labels, long long[::1] halves, double tol):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t s = halves.shape[0]
    cdef Py_ssize_t i
    cdef long long lab, total = 0
    cdef double v
    pos = np.zeros(s, dtype=np.int64)
    neg = np.zeros(s, dtype=np.int64)
    cdef long long[::1] pv = pos
    cdef long long[::1] nv = neg
    for i in range(n):
        v = values[i]
        lab = labels[i]
        if v > tol:
            pv[lab] += 1
        elif v < -tol:
            nv[lab] += 1
    for i in range(s):
        if pv[i] > halves[i]:
            total += pv[i] - halves[i]
        if nv[i] > halves[i]:
            total += nv[i] - halves[i]
    return total, pos, neg


def sweep_discrepancy(long long[::1] order, long long[::1] signs, long long[::1] labels,
                      long long[::1] halves):
    """Discrepancy after flipping the points of ``order`` one at a time.

    ``signs`` holds each point's side (+1, -1, or 0 for points on the zero set)
    before any flip; entry k of the result is the discrepancy after k flips.
    """
    cdef Py_ssize_t n = signs.shape[0]
    cdef Py_ssize_t m = order.shape[0]
    cdef Py_ssize_t s = halves.shape[0]
    cdef Py_ssize_t i, k
    cdef long long lab, total = 0, before, after
    pos = np.zeros(s, dtype=np.int64)
    neg = np.zeros(s, dtype=np.int64)
    out = np.empty(m + 1, dtype=np.int64)
    cdef long long[::1] pv = pos
    cdef long long[::1] nv = neg
    cdef long long[::1] ov = out
    for i in range(n):
        if signs[i] > 0:
            pv[labels[i]] += 1
        elif signs[i] < 0:
            nv[labels[i]] += 1
    for i in range(s):
        total += _excess(pv[i], nv[i], halves[i])
    ov[0] = total
    for k in range(m):
        i = order[k]
        lab = labels[i]
        before = _excess(pv[lab], nv[lab], halves[lab])
        if signs[i] > 0:
            pv[lab] -= 1
            nv[lab] += 1
        elif signs[i] < 0:
            nv[lab] -= 1
            pv[lab] += 1
        after = _excess(pv[lab], nv[lab], halves[lab])
        total += after - before
        ov[k + 1] = total
    return out


cdef inline long long _excess(long long p, long long q, long long h):
    cdef long long e = 0
    if p > h:
        e += p - h
    if q > h:
        e += q - h
    return e
