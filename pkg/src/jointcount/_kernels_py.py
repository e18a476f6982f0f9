"""Pure-Python implementations of the compiled kernels."""
from itertools import combinations

import numpy as np

MAX_COMPONENT = None  # arbitrary-precision ints, no limit


def count_spanning_triples(dirs) -> int:
    vecs = [tuple(int(c) for c in row) for row in dirs]
    count = 0
    for i, j in combinations(range(len(vecs)), 2):
        a, b = vecs[i], vecs[j]
        cx = a[1] * b[2] - a[2] * b[1]
        cy = a[2] * b[0] - a[0] * b[2]
        cz = a[0] * b[1] - a[1] * b[0]
        if cx == 0 and cy == 0 and cz == 0:
            continue
        for c in vecs[j + 1:]:
            if cx * c[0] + cy * c[1] + cz * c[2] != 0:
                count += 1
    return count


def sign_discrepancy(values, labels, halves, tol):
    values = np.asarray(values, dtype=float)
    labels = np.asarray(labels, dtype=np.int64)
    halves = np.asarray(halves, dtype=np.int64)
    s = len(halves)
    pos = np.bincount(labels[values > tol], minlength=s).astype(np.int64)
    neg = np.bincount(labels[values < -tol], minlength=s).astype(np.int64)
    total = int(np.maximum(pos - halves, 0).sum() + np.maximum(neg - halves, 0).sum())
    return total, pos, neg


def sweep_discrepancy(order, signs, labels, halves):
    order = np.asarray(order, dtype=np.int64)
    signs = np.asarray(signs, dtype=np.int64)
    labels = np.asarray(labels, dtype=np.int64)
    halves = np.asarray(halves, dtype=np.int64)
    s = len(halves)
    pos0 = np.bincount(labels[signs > 0], minlength=s)
    neg0 = np.bincount(labels[signs < 0], minlength=s)
    # a flip moves one point of set labels[i] across: +1 -> -1 or -1 -> +1
    step = np.zeros((len(order), s), dtype=np.int64)
    step[np.arange(len(order)), labels[order]] = -signs[order]
    dpos = np.vstack([np.zeros((1, s), dtype=np.int64), np.cumsum(step, axis=0)])
    pos = pos0 + dpos
    neg = neg0 - dpos
    return (np.maximum(pos - halves, 0) + np.maximum(neg - halves, 0)).sum(axis=1)
