"""Finite subsets, square sets with witness pairs, and doubling statistics."""
from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import CounterexampleFound, PreconditionError

__all__ = [
    "FiniteSubset",
    "SquareSet",
    "DoublingReport",
    "PartitionReport",
    "make_subset",
    "square",
    "square_size",
    "doubling_report",
    "elementwise_commutes",
    "partition_square",
]


@dataclass(frozen=True)
class FiniteSubset:
    """A duplicate-free tuple of elements, strictly increasing in the group order."""

    spec: object
    elems: tuple

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __getitem__(self, i):
        return self.elems[i]

    def to_json(self):
        return [self.spec.element_to_json(x) for x in self.elems]


@dataclass(frozen=True)
class SquareSet:
    """``S^2`` as sorted distinct values; ``witnesses[v]`` lists every ``(i, j)``
    (0-based indices into S) with ``S[i] * S[j] == values[v]``."""

    spec: object
    values: tuple
    witnesses: tuple

    def __len__(self):
        return len(self.values)

    def to_json(self):
        return {
            "values": [self.spec.element_to_json(v) for v in self.values],
            "witnesses": [[list(p) for p in w] for w in self.witnesses],
        }


@dataclass(frozen=True)
class DoublingReport:
    k: int
    square_size: int
    deficit_3k3: int
    b_excess: int
    s_excess: int

    def to_json(self):
        return {
            "k": self.k,
            "square_size": self.square_size,
            "deficit_3k3": self.deficit_3k3,
            "b_excess": self.b_excess,
            "s_excess": self.s_excess,
        }


@dataclass(frozen=True)
class PartitionReport:
    y: object
    T_square: SquareSet
    cross: tuple
    top: tuple
    is_disjoint: bool


def sort_elements(spec, elems):
    key = spec.sort_key()
    return sorted(elems, key=key) if key is not None else sorted(elems)


def make_subset(spec, raw):
    """Validate, deduplicate and sort ``raw`` into a :class:`FiniteSubset`."""
    seen = set()
    uniq = []
    for x in raw:
        spec.check(x)
        if x not in seen:
            seen.add(x)
            uniq.append(x)
    if not uniq:
        raise PreconditionError("a finite subset needs at least one element")
    return FiniteSubset(spec, tuple(sort_elements(spec, uniq)))


def _as_subset(S):
    if not isinstance(S, FiniteSubset):
        raise TypeError("expected a FiniteSubset (see make_subset)")
    return S


def square(S):
    """All ``k^2`` ordered products of S merged into sorted distinct values.

    Each row ``x_i * S`` is already sorted (left multiplication preserves the
    order), so the rows are combined with a k-way merge.
    """
    S = _as_subset(S)
    spec = S.spec
    elems = S.elems
    key = spec.sort_key()
    rows = [[(spec.mul(x, y), i, j) for j, y in enumerate(elems)] for i, x in enumerate(elems)]
    if key is None:
        merged = heapq.merge(*rows, key=lambda r: r[0])
    else:
        merged = heapq.merge(*rows, key=lambda r: key(r[0]))
    values, witnesses = [], []
    for v, i, j in merged:
        if values and values[-1] == v:
            witnesses[-1].append((i, j))
        else:
            values.append(v)
            witnesses.append([(i, j)])
    return SquareSet(spec, tuple(values), tuple(tuple(w) for w in witnesses))


def square_size(S):
    """``|S^2|`` without building witnesses."""
    spec = S.spec
    mul = spec.mul
    elems = S.elems
    return len({mul(x, y) for x in elems for y in elems})


def doubling_report(S):
    S = _as_subset(S)
    k = len(S)
    if k < 2:
        raise PreconditionError("doubling_report needs |S| >= 2")
    n = square_size(S)
    if n < 2 * k - 1:
        raise CounterexampleFound(
            "|S^2| < 2|S| - 1",
            {"check": "order_bound", "group": S.spec.to_json(), "set": S.to_json()},
        )
    return DoublingReport(k, n, n - (3 * k - 3), n - (3 * k - 3), n - (3 * k - 2))


def elementwise_commutes(spec, y, T):
    """True iff ``[y, t] = 1`` for every ``t`` in ``T``."""
    mul = spec.mul
    return all(mul(y, t) == mul(t, y) for t in T)


def partition_square(S, split_at_max=True):
    """Split ``S = T + {y}`` at its max (or min) and compare ``S^2`` with
    ``T^2``, ``yT u Ty`` and ``{y^2}``."""
    S = _as_subset(S)
    if len(S) < 2:
        raise PreconditionError("partition_square needs |S| >= 2")
    spec = S.spec
    if split_at_max:
        y, rest = S.elems[-1], S.elems[:-1]
    else:
        y, rest = S.elems[0], S.elems[1:]
    T = FiniteSubset(spec, rest)
    Tsq = square(T)
    tvals = set(Tsq.values)
    cross = {spec.mul(y, t) for t in rest} | {spec.mul(t, y) for t in rest}
    top = spec.mul(y, y)
    disjoint = not (cross & tvals) and top not in cross and top not in tvals
    if disjoint:
        assert square_size(S) == len(Tsq) + len(cross) + 1
    return PartitionReport(
        y=y,
        T_square=Tsq,
        cross=tuple(sort_elements(spec, cross)),
        top=(top,),
        is_disjoint=disjoint,
    )
