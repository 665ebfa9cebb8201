"""Hot loops of the subset search, written once and compiled when possible.

Elements of a ball are replaced by their indices and products by interned
value ids, so the kernels only see integer arrays:

* ``P[i, j]`` is the id of ``ball[i] * ball[j]``;
* a subset is an increasing index tuple; its square size is the number of
  distinct ids among ``P[s, t]`` for ``s, t`` in the subset.
"""
import numpy as np

from ._accel import USE_JIT, njit

__all__ = ["search_prefix", "square_sizes", "search_prefix_py", "search_prefix_jit"]


def search_prefix_py(P, nvals, k, bound, prefix, out, out_sq):
    """Depth-first search of all k-subsets extending ``prefix``.

    Writes every subset with square size ``<= bound`` into ``out`` (rows)
    and its square size into ``out_sq``; returns the number written, or -1
    when ``out`` is too small.  Subsets are produced in lexicographic order
    of their index tuples.

    Pruning: the square of a prefix only grows, and each later element,
    being larger than everything chosen so far, adds at least two new
    values (``x * max`` and ``x * x``).
    """
    n = P.shape[0]
    cap = out.shape[0]
    counts = np.zeros(nvals, np.int32)
    sel = np.empty(k, np.int64)
    nxt = np.empty(k + 1, np.int64)
    written = 0
    distinct = 0
    plen = prefix.shape[0]

    for d in range(plen):
        x = prefix[d]
        for j in range(d):
            y = sel[j]
            v = P[x, y]
            counts[v] += 1
            if counts[v] == 1:
                distinct += 1
            v = P[y, x]
            counts[v] += 1
            if counts[v] == 1:
                distinct += 1
        v = P[x, x]
        counts[v] += 1
        if counts[v] == 1:
            distinct += 1
        sel[d] = x
    # the first element adds one value (its square), later ones at least two
    if distinct + 2 * (k - plen) - (1 if plen == 0 else 0) > bound:
        return 0
    if plen == k:
        for j in range(k):
            out[0, j] = sel[j]
        out_sq[0] = distinct
        return 1

    depth = plen
    nxt[depth] = sel[plen - 1] + 1 if plen > 0 else 0
    while depth >= plen:
        cand = nxt[depth]
        if cand > n - (k - depth):
            depth -= 1
            if depth < plen:
                break
            # undo sel[depth]
            x = sel[depth]
            for j in range(depth):
                y = sel[j]
                v = P[x, y]
                counts[v] -= 1
                if counts[v] == 0:
                    distinct -= 1
                v = P[y, x]
                counts[v] -= 1
                if counts[v] == 0:
                    distinct -= 1
            v = P[x, x]
            counts[v] -= 1
            if counts[v] == 0:
                distinct -= 1
            nxt[depth] = x + 1
            continue
        x = cand
        for j in range(depth):
            y = sel[j]
            v = P[x, y]
            counts[v] += 1
            if counts[v] == 1:
                distinct += 1
            v = P[y, x]
            counts[v] += 1
            if counts[v] == 1:
                distinct += 1
        v = P[x, x]
        counts[v] += 1
        if counts[v] == 1:
            distinct += 1
        sel[depth] = x
        keep = distinct + 2 * (k - depth - 1) <= bound
        if keep and depth + 1 == k:
            if written == cap:
                return -1
            for j in range(k):
                out[written, j] = sel[j]
            out_sq[written] = distinct
            written += 1
            keep = False
        if keep:
            depth += 1
            nxt[depth] = x + 1
            continue
        for j in range(depth):
            y = sel[j]
            v = P[x, y]
            counts[v] -= 1
            if counts[v] == 0:
                distinct -= 1
            v = P[y, x]
            counts[v] -= 1
            if counts[v] == 0:
                distinct -= 1
        v = P[x, x]
        counts[v] -= 1
        if counts[v] == 0:
            distinct -= 1
        nxt[depth] = x + 1
    return written


def square_sizes_py(P, nvals, subsets):
    """Square size of each row of ``subsets`` (no pruning)."""
    m, k = subsets.shape
    res = np.empty(m, np.int64)
    stamp = np.zeros(nvals, np.int64)
    for r in range(m):
        tag = r + 1
        cnt = 0
        for a in range(k):
            x = subsets[r, a]
            for b in range(k):
                v = P[x, subsets[r, b]]
                if stamp[v] != tag:
                    stamp[v] = tag
                    cnt += 1
        res[r] = cnt
    return res


search_prefix_jit = njit(search_prefix_py)
square_sizes_jit = njit(square_sizes_py)

if USE_JIT:
    search_prefix = search_prefix_jit
    square_sizes = square_sizes_jit
else:
    search_prefix = search_prefix_py
    square_sizes = square_sizes_py
