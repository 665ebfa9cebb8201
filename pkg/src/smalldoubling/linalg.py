"""Exact integer row reduction used for lattice ranks."""
from __future__ import annotations

from math import gcd

__all__ = ["echelon_basis", "integer_rank"]


def _primitive(row):
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        return [x // g for x in row]
    return row


def echelon_basis(vectors, keep_content=True):
    """Row-echelon basis of the Z-span of ``vectors``.

    Pivot rows are combined with extended-Euclid steps, so the result spans
    exactly the same lattice (Hermite style, without the above-pivot
    reduction).  With ``keep_content=False`` rows are divided by their
    content as we go: the rational span, hence the rank, is unchanged but the
    lattice is not, and entries stay small.
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis = []
    col = 0
    while rows and col < ncols:
        live = [r for r in rows if r[col]]
        dead = [r for r in rows if not r[col]]
        if not live:
            col += 1
            continue
        # Euclid on column `col` until one row holds the gcd
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    dead.append(r if keep_content else _primitive(r))
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv if keep_content else _primitive(piv))
        rows = dead
        col += 1
    return basis


def integer_rank(vectors):
    """Rank of a list of integer vectors (over Q, equivalently over Z)."""
    return len(echelon_basis(vectors, keep_content=False))
