"""Pruned exhaustive enumeration of small-doubling subsets of a ball."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

import numpy as np

from ..errors import PreconditionError
from ..groups import IntegerLattice
from ..products import FiniteSubset
from . import kernels
from .balls import BallSpec, ball

__all__ = [
    "NORMALIZATIONS",
    "EnumerationTask",
    "product_table",
    "enumerate_indices",
    "enumerate_small_doubling",
    "worker_count",
]

NORMALIZATIONS = ("none", "translate_min_to_identity", "translate_and_primitive_ratio")
_INITIAL_ROWS = 4096


@dataclass(frozen=True)
class EnumerationTask:
    """k-subsets S of a ball with ``|S^2| <= alpha*k + beta``."""

    ball: BallSpec
    k: int
    alpha: Fraction
    beta: int
    normalize: str = "none"

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.k < 1:
            raise PreconditionError("k must be >= 1")
        if self.normalize not in NORMALIZATIONS:
            raise PreconditionError(f"unknown normalization {self.normalize!r}")
        if self.normalize != "none" and not self.ball.spec.abelian:
            raise PreconditionError("normalization is only sound in abelian groups")
        if self.normalize == "translate_and_primitive_ratio" and not isinstance(
            self.ball.spec, IntegerLattice
        ):
            raise PreconditionError("primitive-ratio normalization needs an IntegerLattice")

    @property
    def bound(self):
        return floor(self.alpha * self.k + self.beta)

    def to_json(self):
        return {
            "ball": self.ball.to_json(),
            "k": self.k,
            "alpha": str(self.alpha),
            "beta": self.beta,
            "normalize": self.normalize,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            BallSpec.from_json(obj["ball"]),
            int(obj["k"]),
            Fraction(str(obj["alpha"])),
            int(obj["beta"]),
            obj.get("normalize", "none"),
        )


def product_table(spec, elems):
    """``(P, values)`` with ``P[i, j]`` the index of ``elems[i]*elems[j]`` in ``values``."""
    ids = {}
    n = len(elems)
    P = np.empty((n, n), np.int64)
    mul = spec.mul
    for i, x in enumerate(elems):
        row = P[i]
        for j, y in enumerate(elems):
            row[j] = ids.setdefault(mul(x, y), len(ids))
    return P, list(ids)


def worker_count(requested=None):
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("SMALLDOUBLING_WORKERS")
    return max(1, int(env)) if env else 1


def _run_prefix(P, nvals, k, bound, prefix):
    rows = _INITIAL_ROWS
    pre = np.asarray(prefix, np.int64)
    while True:
        out = np.empty((rows, k), np.int64)
        out_sq = np.empty(rows, np.int64)
        got = kernels.search_prefix(P, nvals, k, bound, pre, out, out_sq)
        if got >= 0:
            return out[:got], out_sq[:got]
        rows *= 2


def _run_chunk(P, nvals, k, bound, prefixes):
    outs, sqs = [], []
    for pre in prefixes:
        o, s = _run_prefix(P, nvals, k, bound, pre)
        if len(o):
            outs.append(o)
            sqs.append(s)
    if not outs:
        return np.empty((0, k), np.int64), np.empty(0, np.int64)
    return np.concatenate(outs), np.concatenate(sqs)


def _prefixes(n, k, firsts):
    if k == 1:
        return [(i,) for i in firsts]
    return [(i, j) for i in firsts for j in range(i + 1, n - k + 2)]


def _primitive(elems, idx):
    g = 0
    for i in idx:
        for x in elems[i]:
            g = gcd(g, x)
    return g == 1


def enumerate_indices(task, workers=None, elems=None):
    """Index tuples (into the sorted ball) and square sizes of every
    qualifying subset, in lexicographic order of the index tuples.

    The search tree is split into prefix subtrees of depth two; with several
    workers the subtrees are processed by a process pool and the results are
    concatenated in prefix order, so the output does not depend on the
    worker count.
    """
    spec = task.ball.spec
    if elems is None:
        elems = ball(task.ball)
    n, k, bound = len(elems), task.k, task.bound
    if k > n or bound < 2 * k - 1:
        return []
    if task.normalize == "none":
        firsts = range(n - k + 1)
    else:
        e = elems.index(spec.identity())
        firsts = [e] if e <= n - k else []
    P, values = product_table(spec, elems)
    nvals = len(values)
    prefixes = _prefixes(n, k, firsts)
    w = worker_count(workers)
    if w == 1 or len(prefixes) < 2:
        out, sq = _run_chunk(P, nvals, k, bound, prefixes)
        parts = [(out, sq)]
    else:
        nchunks = min(len(prefixes), 4 * w)
        step = -(-len(prefixes) // nchunks)
        chunks = [prefixes[i : i + step] for i in range(0, len(prefixes), step)]
        with ProcessPoolExecutor(max_workers=w) as pool:
            futs = [pool.submit(_run_chunk, P, nvals, k, bound, c) for c in chunks]
            parts = [f.result() for f in futs]
    result = []
    for out, sq in parts:
        for row, s in zip(out.tolist(), sq.tolist()):
            result.append((tuple(row), s))
    if task.normalize == "translate_and_primitive_ratio":
        result = [(idx, s) for idx, s in result if _primitive(elems, idx)]
    return result


def enumerate_small_doubling(task, workers=None, with_sizes=False):
    """Stream the qualifying subsets as :class:`FiniteSubset` objects
    (or ``(subset, square_size)`` pairs with ``with_sizes=True``)."""
    elems = ball(task.ball)
    spec = task.ball.spec
    for idx, s in enumerate_indices(task, workers, elems):
        sub = FiniteSubset(spec, tuple(elems[i] for i in idx))
        yield (sub, s) if with_sizes else sub
