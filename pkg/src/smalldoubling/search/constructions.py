"""Explicit sets: the 4k-5 family in Z x F2 and two-progression sets in Z."""
from __future__ import annotations

import random

from ..errors import PreconditionError
from ..groups import DirectProduct, FreeGroup, IntegerLattice
from ..products import make_subset

__all__ = [
    "construction_group",
    "construction_generators",
    "construct_4k5",
    "random_two_ap",
    "sample_two_ap_params",
]


def construction_group():
    """``<a> x <b, c>`` with the free factor on letters 1 (b) and 2 (c)."""
    return DirectProduct(IntegerLattice(1), FreeGroup(2))


def construction_generators():
    """``(a, b, c)`` in :func:`construction_group`."""
    return ((1,), ()), ((0,), (1,)), ((0,), (2,))


def construct_4k5(k):
    """``S = {a, ac, ..., ac^(k-2), b}``; ``|S^2| = 4k - 5``.

    ``b`` is the smallest element of S under the lexicographic order on
    ``Z x F2``, so the partition ``S^2 = T^2 + (bT u Tb) + {b^2}`` splits at
    the minimum.
    """
    if k < 3:
        raise PreconditionError("construct_4k5 needs k >= 3")
    spec = construction_group()
    a, b, c = construction_generators()
    elems = [b]
    t = a
    for _ in range(k - 1):
        elems.append(t)
        t = spec.mul(t, c)
    return make_subset(spec, elems)


def random_two_ap(k, gap, split, ratio, seed=None):
    """``{0, r, ..., (split-1) r} u {g, g+r, ..., g+(k-split-1) r}`` in Z.

    With a seed, the whole set is translated by a seeded offset; translation
    does not change the sumset size or the progression structure.
    """
    if not 1 <= split <= k - 1:
        raise PreconditionError("split must lie in 1..k-1")
    if ratio < 1:
        raise PreconditionError("ratio must be >= 1")
    offset = 0 if seed is None else random.Random(seed).randint(-(10**6), 10**6)
    pts = [offset + i * ratio for i in range(split)]
    pts += [offset + gap + i * ratio for i in range(k - split)]
    if len(set(pts)) != k:
        raise PreconditionError("gap makes the two progressions overlap")
    return make_subset(IntegerLattice(1), [(p,) for p in pts])


def sample_two_ap_params(count, seed=0, max_gap=10**6, k_range=(11, 40), max_ratio=100):
    """Seeded parameter tuples ``(k, gap, split, ratio, seed)`` whose sets have
    ``|2S| = 3k - 3`` and no short progression cover (gap > 2k*ratio)."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        k = rng.randint(*k_range)
        ratio = rng.randint(1, max_ratio)
        lo = 2 * k * ratio + 1
        if lo > max_gap:
            raise PreconditionError("max_gap too small for the requested ratios")
        out.append((k, rng.randint(lo, max_gap), rng.randint(1, k - 1), ratio, seed * 100003 + i))
    return out
