"""Additive structure of subsets of Z^m: rank, Freiman dimension, progressions.

Inputs may be a :class:`FiniteSubset` over an :class:`IntegerLattice`, or any
iterable of integers / integer tuples.  Sets living in a commutative
subgroup of some other family must be mapped to lattice coordinates by the
caller first (see :func:`embed`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import CounterexampleFound, HypothesisError, PreconditionError
from .groups import IntegerLattice
from .linalg import integer_rank
from .products import FiniteSubset, square, square_size

__all__ = [
    "APCover",
    "TwoAPCover",
    "AbelianProfile",
    "ClassificationVerdict",
    "lattice_points",
    "embed",
    "subgroup_rank",
    "freiman_dimension",
    "abelian_profile",
    "ap_cover",
    "two_ap_cover",
    "classify_abelian",
    "MODES",
]

MODES = ("3k3", "3k2", "ck")


def lattice_points(S):
    """Sorted, deduplicated tuple of integer vectors."""
    if isinstance(S, FiniteSubset):
        if not isinstance(S.spec, IntegerLattice):
            raise PreconditionError("abelian operations need an IntegerLattice subset; use embed()")
        return S.elems
    pts = set()
    dim = None
    for p in S:
        if isinstance(p, int):
            p = (p,)
        p = tuple(p)
        if dim is None:
            dim = len(p)
        elif len(p) != dim:
            raise PreconditionError("lattice points of mixed dimension")
        pts.add(p)
    return tuple(sorted(pts))


def embed(S, embedding):
    """Map a commuting set into Z^m through a caller-supplied coordinate map."""
    return lattice_points(embedding(x) for x in S)


def _subset(points):
    return FiniteSubset(IntegerLattice(len(points[0])), points)


def subgroup_rank(S):
    """Rank of the subgroup of Z^m generated by S."""
    pts = lattice_points(S)
    if not pts:
        raise PreconditionError("subgroup_rank needs a non-empty set")
    return integer_rank(pts)


def _relation_vectors(k, sq):
    rels = []
    for pairs in sq.witnesses:
        if len(pairs) < 2:
            continue
        i0, j0 = pairs[0]
        for i, j in pairs[1:]:
            v = [0] * k
            v[i0] += 1
            v[j0] += 1
            v[i] -= 1
            v[j] -= 1
            if any(v):
                rels.append(v)
    return rels


def freiman_dimension(S):
    """``(k - 1) - rank(V)`` where V is spanned by ``e_i + e_j - e_k - e_l``
    over all coincidences ``s_i + s_j = s_k + s_l``."""
    pts = lattice_points(S)
    k = len(pts)
    if k < 2:
        raise PreconditionError("freiman_dimension needs |S| >= 2")
    rels = _relation_vectors(k, square(_subset(pts)))
    return (k - 1) - integer_rank(rels)


@dataclass(frozen=True)
class AbelianProfile:
    k: int
    rank_m: int
    freiman_d: int
    square_size: int

    def to_json(self):
        return {
            "k": self.k,
            "rank_m": self.rank_m,
            "freiman_d": self.freiman_d,
            "square_size": self.square_size,
        }


def abelian_profile(S):
    """k, m(S), d(S), |S+S|, with both structural inequalities checked."""
    pts = lattice_points(S)
    k = len(pts)
    if k < 2:
        raise PreconditionError("abelian_profile needs |S| >= 2")
    sub = _subset(pts)
    sq = square(sub)
    m = integer_rank(pts)
    d = (k - 1) - integer_rank(_relation_vectors(k, sq))
    n = len(sq)
    prof = AbelianProfile(k, m, d, n)
    record = {"check": "abelian_profile", "group": sub.spec.to_json(), "set": sub.to_json()}
    if not m <= d + 1 <= k:
        raise CounterexampleFound(f"rank chain m <= d+1 <= k fails: {prof}", record)
    if 2 * n < 2 * (d + 1) * k - d * (d + 1):
        raise CounterexampleFound(f"Freiman lower bound fails: {prof}", record)
    return prof


# --------------------------------------------------------------------------
# progressions


@dataclass(frozen=True)
class APCover:
    """``{base + i*ratio : 0 <= i < length}`` covering ``members`` at ``positions``."""

    base: tuple
    ratio: tuple
    length: int
    members: tuple
    positions: tuple

    def position_map(self):
        return dict(zip(self.members, self.positions))

    def is_valid(self):
        if self.length < 1 or not any(self.ratio) and self.length > 1:
            return False
        for p, i in zip(self.members, self.positions):
            if not 0 <= i < self.length:
                return False
            if tuple(b + i * r for b, r in zip(self.base, self.ratio)) != p:
                return False
        return True

    def to_json(self):
        return {
            "base": list(self.base),
            "ratio": list(self.ratio),
            "length": self.length,
            "members": [list(p) for p in self.members],
            "positions": list(self.positions),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            tuple(obj["base"]),
            tuple(obj["ratio"]),
            obj["length"],
            tuple(tuple(p) for p in obj["members"]),
            tuple(obj["positions"]),
        )


@dataclass(frozen=True)
class TwoAPCover:
    first: APCover
    second: APCover
    shared_ratio: tuple

    @property
    def length_sum(self):
        return self.first.length + self.second.length

    def covers(self, points):
        """Both progressions valid, same ratio, and members partition ``points``."""
        if not (self.first.is_valid() and self.second.is_valid()):
            return False
        if self.first.ratio != self.shared_ratio or self.second.ratio != self.shared_ratio:
            return False
        a, b = set(self.first.members), set(self.second.members)
        return not (a & b) and (a | b) == set(points)

    def to_json(self):
        return {
            "first": self.first.to_json(),
            "second": self.second.to_json(),
            "shared_ratio": list(self.shared_ratio),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            APCover.from_json(obj["first"]),
            APCover.from_json(obj["second"]),
            tuple(obj["shared_ratio"]),
        )


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _content(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def _multiple_of(v, g):
    """Integer lambda with ``v == lambda * g``, or None (g primitive)."""
    c = next(i for i, x in enumerate(g) if x)
    lam, r = divmod(v[c], g[c])
    if r or any(a != lam * b for a, b in zip(v, g)):
        return None
    return lam


def ap_cover(S):
    """Shortest progression containing S, when S - min(S) has rank 1."""
    pts = lattice_points(S)
    if len(pts) < 2:
        raise PreconditionError("ap_cover needs |S| >= 2")
    base = pts[0]
    diffs = [_sub(p, base) for p in pts[1:]]
    g0 = _content(diffs[0])
    direction = tuple(x // g0 for x in diffs[0])
    lams = [0]
    for d in diffs:
        lam = _multiple_of(d, direction)
        if lam is None:
            return None
        lams.append(lam)
    step = 0
    for lam in lams:
        step = gcd(step, lam)
    ratio = tuple(step * x for x in direction)
    positions = tuple(lam // step for lam in lams)
    return APCover(base, ratio, positions[-1] + 1, pts, positions)


def _candidate_ratios(pts):
    diffs = {_sub(q, p) for i, p in enumerate(pts) for q in pts[i + 1 :]}
    return sorted(diffs, key=lambda v: (sum(x * x for x in v), v))


def _cover(members, lams, ratio, length):
    lo = lams[0]
    return APCover(members[0], ratio, length, tuple(members), tuple(l - lo for l in lams))


def _split_for_ratio(pts, t, required):
    c0 = next(i for i, x in enumerate(t) if x)
    classes = {}
    order = []
    for p in pts:
        lam = p[c0] // t[c0]
        label = tuple(a - lam * b for a, b in zip(p, t))
        if label not in classes:
            if len(classes) == 2:
                return None
            classes[label] = []
            order.append(label)
        classes[label].append((p, lam))
    if len(order) == 2:
        (m1, l1), (m2, l2) = (list(zip(*classes[lab])) for lab in order)
        len1 = l1[-1] - l1[0] + 1
        len2 = l2[-1] - l2[0] + 1
        if len1 + len2 > required:
            return None
        return TwoAPCover(_cover(m1, l1, t, len1), _cover(m2, l2, t, required - len1), t)
    members, lams = zip(*classes[order[0]])
    for s in range(len(members) - 1, 0, -1):
        len1 = lams[s - 1] - lams[0] + 1
        len2 = lams[-1] - lams[s] + 1
        if len1 + len2 <= required:
            return TwoAPCover(
                _cover(members[:s], lams[:s], t, len1),
                _cover(members[s:], lams[s:], t, required - len1),
                t,
            )
    return None


def two_ap_cover(S, required_length_sum):
    """Two same-ratio progressions covering S with the given total length.

    Candidate ratios are the pairwise differences of S ordered by (squared
    norm, lexicographic); for each ratio the split with the lexicographically
    smallest membership vector is taken.  Lengths may exceed the spans of
    their members only when ``required_length_sum`` leaves room for it.
    """
    pts = lattice_points(S)
    if len(pts) < 2:
        raise PreconditionError("two_ap_cover needs |S| >= 2")
    for t in _candidate_ratios(pts):
        found = _split_for_ratio(pts, t, required_length_sum)
        if found is not None:
            return found
    return None


# --------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassificationVerdict:
    mode: str
    c: int | None
    k: int
    square_size: int
    rank_m: int
    rank_bound_ok: bool
    branch: str
    witness: APCover | TwoAPCover | None = None
    notes: tuple = field(default_factory=tuple)

    @property
    def is_counterexample(self):
        return self.branch == "counterexample"

    def to_json(self):
        if self.witness is None:
            wit = None
        elif isinstance(self.witness, APCover):
            wit = {"kind": "ap", **self.witness.to_json()}
        else:
            wit = {"kind": "two_ap", **self.witness.to_json()}
        return {
            "mode": self.mode,
            "c": self.c,
            "k": self.k,
            "square_size": self.square_size,
            "rank_m": self.rank_m,
            "rank_bound_ok": self.rank_bound_ok,
            "branch": self.branch,
            "witness": wit,
            "notes": list(self.notes),
        }


def check_hypothesis(mode, k, n, c=None):
    if mode == "3k3":
        return n <= 3 * k - 3
    if mode == "3k2":
        return n == 3 * k - 2
    if mode == "ck":
        if c is None or c < 2:
            raise PreconditionError("mode 'ck' needs an integer c >= 2")
        return 2 * n < 2 * (c + 1) * k - c * (c + 1)
    raise PreconditionError(f"unknown mode {mode!r}")


def classify_abelian(S, mode, c=None):
    """Verdict of the 3k-3, 3k-2 or c-generation theorem for S in Z^m.

    Raises :class:`HypothesisError` when the mode's doubling hypothesis does
    not hold.  A failed theorem claim is reported through
    ``branch == "counterexample"``, never raised.
    """
    pts = lattice_points(S)
    k = len(pts)
    if k < 2:
        raise PreconditionError("classify_abelian needs |S| >= 2")
    n = square_size(_subset(pts))
    if not check_hypothesis(mode, k, n, c):
        raise HypothesisError(f"|S^2| = {n} violates the {mode} hypothesis for |S| = {k}")
    m = integer_rank(pts)
    if mode == "3k3":
        rank_ok, threshold, ap_max, two_sum = m <= 3, 11, 2 * k - 1, k
    elif mode == "3k2":
        rank_ok, threshold, ap_max, two_sum = (k == 4 or m <= 3), 12, 2 * k + 1, k + 1
    else:
        rank_ok, threshold, ap_max, two_sum = m <= c, None, None, None
    cval = c if mode == "ck" else None

    def verdict(branch, witness=None, *notes):
        return ClassificationVerdict(mode, cval, k, n, m, rank_ok, branch, witness, notes)

    if not rank_ok:
        return verdict("counterexample", None, f"rank {m} exceeds the bound")
    if threshold is None:
        return verdict("bounded-rank")
    ap = ap_cover(pts)
    if k >= threshold:
        if ap is not None and ap.length <= ap_max:
            return verdict("i", ap)
        two = two_ap_cover(pts, two_sum)
        if two is not None:
            return verdict("ii", two)
        return verdict("counterexample", None, "no progression cover of the required size")
    if ap is not None and ap.length <= ap_max:
        return verdict("small-case", ap, "no structural claim below the size threshold")
    return verdict(
        "small-case", two_ap_cover(pts, two_sum), "no structural claim below the size threshold"
    )


def verdict_is_consistent(points, verdict):
    """Re-check a verdict's witness against the set it claims to describe."""
    pts = lattice_points(points)
    k = len(pts)
    ap_max = {"3k3": 2 * k - 1, "3k2": 2 * k + 1}.get(verdict.mode)
    two_sum = {"3k3": k, "3k2": k + 1}.get(verdict.mode)
    w = verdict.witness
    if verdict.branch == "i":
        return (
            isinstance(w, APCover)
            and w.is_valid()
            and set(w.members) == set(pts)
            and w.length <= ap_max
        )
    if verdict.branch == "ii":
        return isinstance(w, TwoAPCover) and w.covers(pts) and w.length_sum == two_sum
    if verdict.branch == "small-case" and w is not None:
        if isinstance(w, APCover):
            return w.is_valid() and set(w.members) == set(pts)
        return w.covers(pts) and w.length_sum == two_sum
    return True
