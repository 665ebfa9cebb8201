"""Concrete bi-ordered groups with exact arithmetic.

Every group is a small frozen descriptor object.  Elements are plain,
hashable Python tuples whose layout depends on the family:

==================  =========================================================
family              element
==================  =========================================================
``lattice``         ``(x_1, ..., x_m)``
``free``            ``(l_1, ..., l_r)`` signed generator indices, reduced
``heisenberg``      ``(a, b, c)``
``bs12``            ``(p, e, n)`` meaning ``t = p / 2**e``, in lowest terms
``golden``          ``(u, v, n)`` meaning ``h = u + v*phi``
``product``         ``(left, right)``
==================  =========================================================

All representatives are canonical, so ``==`` and ``hash`` on tuples agree
with equality in the group.  Descriptor methods (``mul``, ``inv``, ``cmp``)
skip validation and are what the hot paths use; the module-level
functions validate their arguments first.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache

from .errors import FamilyMismatchError, UndecidedOrderError

__all__ = [
    "Ordering",
    "OrderedGroup",
    "IntegerLattice",
    "FreeGroup",
    "Heisenberg",
    "BaumslagSolitar12",
    "GoldenSemidirect",
    "DirectProduct",
    "group_from_json",
    "multiply",
    "invert",
    "compare",
    "power",
    "commutator",
    "conjugate",
    "identity",
]

MAX_PRODUCT_DEPTH = 4


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _sign(x):
    return (x > 0) - (x < 0)


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


class OrderedGroup:
    """Interface shared by the concrete families."""

    family = ""
    abelian = False

    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def cmp(self, a, b):
        """Return -1, 0 or 1 according to the bi-invariant order."""
        raise NotImplementedError

    def is_element(self, x):
        raise NotImplementedError

    def standard_generators(self):
        raise NotImplementedError

    def sort_key(self):
        return cmp_to_key(self.cmp)

    def to_json(self):
        raise NotImplementedError

    def element_to_json(self, x):
        raise NotImplementedError

    def element_from_json(self, obj):
        raise NotImplementedError

    def check(self, x):
        if not self.is_element(x):
            raise FamilyMismatchError(f"{x!r} is not an element of {self.to_json()}")
        return x

    # small conveniences shared by everything downstream

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.identity()
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def comm(self, a, b):
        """``[a, b] = a^-1 b^-1 a b``."""
        return self.mul(self.inv(self.mul(b, a)), self.mul(a, b))

    def conj(self, a, b):
        """``a^b = b^-1 a b``."""
        return self.mul(self.inv(b), self.mul(a, b))

    def commutes(self, a, b):
        return self.mul(a, b) == self.mul(b, a)

    def depth(self):
        return 0


# --------------------------------------------------------------------------
# Z^m


@dataclass(frozen=True)
class IntegerLattice(OrderedGroup):
    """``Z^m`` with the lexicographic order."""

    rank: int = 1

    family = "lattice"
    abelian = True

    def __post_init__(self):
        if not _is_int(self.rank) or self.rank < 1:
            raise ValueError("lattice rank must be a positive integer")

    def identity(self):
        return (0,) * self.rank

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def cmp(self, a, b):
        return (a > b) - (a < b)

    def sort_key(self):
        return None

    def is_element(self, x):
        return isinstance(x, tuple) and len(x) == self.rank and all(_is_int(c) for c in x)

    def standard_generators(self):
        gens = []
        for i in range(self.rank):
            v = [0] * self.rank
            v[i] = 1
            gens.append(tuple(v))
        return gens

    def to_json(self):
        return {"family": "lattice", "rank": self.rank}

    def element_to_json(self, x):
        return list(x)

    def element_from_json(self, obj):
        if _is_int(obj) and self.rank == 1:
            return (obj,)
        if not isinstance(obj, list):
            raise FamilyMismatchError(f"bad lattice element {obj!r}")
        return self.check(tuple(obj))


# --------------------------------------------------------------------------
# free groups with the Magnus order


def _magnus_series(word, degree):
    """Image of ``word`` under ``g_i -> 1 + X_i``, truncated at ``degree``.

    Returned as a dict from monomials (tuples of generator indices) to
    non-zero integer coefficients.
    """
    series = {(): 1}
    for letter in word:
        g = abs(letter)
        if letter > 0:
            factor = (((), 1), ((g,), 1))
        else:
            factor = tuple(((g,) * e, -1 if e & 1 else 1) for e in range(degree + 1))
        nxt = {}
        for mono, c in series.items():
            room = degree - len(mono)
            for fm, fc in factor:
                if len(fm) > room:
                    break
                key = mono + fm
                nxt[key] = nxt.get(key, 0) + c * fc
        series = {m: c for m, c in nxt.items() if c}
    return series


def _magnus_leading(word, degree):
    """Lowest non-constant term of the truncated Magnus image, or None."""
    best = None
    for mono, c in _magnus_series(word, degree).items():
        if not mono:
            continue
        if best is None or (len(mono), mono) < (len(best[0]), best[0]):
            best = (mono, c)
    return best


@dataclass(frozen=True)
class FreeGroup(OrderedGroup):
    """Free group on ``rank`` generators, ordered through the Magnus embedding.

    Comparisons start at ``magnus_initial_degree`` and double the truncation
    degree until the two series differ; reaching ``magnus_max_degree``
    without a difference raises :class:`UndecidedOrderError`.
    """

    rank: int = 2
    magnus_initial_degree: int = 4
    magnus_max_degree: int = 64

    family = "free"

    def __post_init__(self):
        if not _is_int(self.rank) or self.rank < 1:
            raise ValueError("free rank must be a positive integer")
        lo, hi = self.magnus_initial_degree, self.magnus_max_degree
        if not (_is_int(lo) and _is_int(hi)) or lo < 1 or hi < 1:
            raise ValueError("Magnus degrees must be positive integers")
        if lo > hi:
            raise ValueError("magnus_initial_degree exceeds magnus_max_degree")

    def identity(self):
        return ()

    def mul(self, a, b):
        n = min(len(a), len(b))
        j = 0
        la = len(a)
        while j < n and a[la - 1 - j] == -b[j]:
            j += 1
        return a[: la - j] + b[j:]

    def inv(self, a):
        return tuple(-x for x in reversed(a))

    def leading_term(self, word):
        """Leading monomial and coefficient of ``mu(word) - 1``."""
        if not word:
            return None
        sums = [0] * (self.rank + 1)
        for letter in word:
            sums[abs(letter)] += 1 if letter > 0 else -1
        for g in range(1, self.rank + 1):
            if sums[g]:
                return (g,), sums[g]
        degree = self.magnus_initial_degree
        while True:
            lead = _magnus_leading(word, degree)
            if lead is not None:
                return lead
            if degree >= self.magnus_max_degree:
                raise UndecidedOrderError(
                    f"words still agree up to Magnus degree {degree}: {word!r}"
                )
            degree = min(2 * degree, self.magnus_max_degree)

    def cmp(self, a, b):
        if a == b:
            return 0
        _, coeff = self.leading_term(self.mul(self.inv(a), b))
        return -1 if coeff > 0 else 1

    def is_element(self, x):
        if not isinstance(x, tuple):
            return False
        for i, l in enumerate(x):
            if not _is_int(l) or l == 0 or abs(l) > self.rank:
                return False
            if i and x[i - 1] == -l:
                return False
        return True

    def standard_generators(self):
        return [(i,) for i in range(1, self.rank + 1)]

    def to_json(self):
        return {
            "family": "free",
            "rank": self.rank,
            "magnus_initial_degree": self.magnus_initial_degree,
            "magnus_max_degree": self.magnus_max_degree,
        }

    def element_to_json(self, x):
        return list(x)

    def element_from_json(self, obj):
        if not isinstance(obj, list):
            raise FamilyMismatchError(f"bad word {obj!r}")
        word = ()
        for l in obj:
            if not _is_int(l) or l == 0 or abs(l) > self.rank:
                raise FamilyMismatchError(f"bad letter {l!r} in {obj!r}")
            word = self.mul(word, (l,))
        return word


# --------------------------------------------------------------------------
# integral Heisenberg group


@dataclass(frozen=True)
class Heisenberg(OrderedGroup):
    """Integral Heisenberg group, ``(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')``.

    Ordered lexicographically on ``(a, b)`` with ties broken by ``c``.
    """

    family = "heisenberg"

    def identity(self):
        return (0, 0, 0)

    def mul(self, x, y):
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])

    def inv(self, x):
        return (-x[0], -x[1], x[0] * x[1] - x[2])

    def cmp(self, x, y):
        return (x > y) - (x < y)

    def sort_key(self):
        return None

    def is_element(self, x):
        return isinstance(x, tuple) and len(x) == 3 and all(_is_int(c) for c in x)

    def standard_generators(self):
        # the full coordinate basis x, y, z with z = [x, y] central
        return [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def to_json(self):
        return {"family": "heisenberg"}

    def element_to_json(self, x):
        return list(x)

    def element_from_json(self, obj):
        if not isinstance(obj, list):
            raise FamilyMismatchError(f"bad Heisenberg element {obj!r}")
        return self.check(tuple(obj))


# --------------------------------------------------------------------------
# BS(1,2) as dyadic affine pairs


def _dyadic(p, e):
    """Normalise ``p / 2**e`` (``e`` may be negative)."""
    if p == 0:
        return 0, 0
    if e <= 0:
        return p << -e, 0
    tz = (p & -p).bit_length() - 1
    s = tz if tz < e else e
    return p >> s, e - s


def _dyadic_add(p, e, q, f):
    if e >= f:
        return _dyadic(p + (q << (e - f)), e)
    return _dyadic((p << (f - e)) + q, f)


@dataclass(frozen=True)
class BaumslagSolitar12(OrderedGroup):
    """``BS(1,2)`` realised as pairs ``(t, n)`` with ``t`` dyadic.

    The law ``(t,n)(t',n') = (t + 2**-n * t', n + n')`` makes conjugation by
    ``b = (0, 1)`` double ``c = (1, 0)``.  An element is positive when
    ``n > 0``, or ``n = 0`` and ``t > 0``.
    """

    family = "bs12"

    def identity(self):
        return (0, 0, 0)

    def mul(self, x, y):
        p, e, n = x
        q, f, m = y
        # 2**-n * q/2**f = q / 2**(f+n)
        p2, e2 = _dyadic_add(p, e, q, f + n) if f + n >= 0 else _dyadic_add(p, e, q << -(f + n), 0)
        return (p2, e2, n + m)

    def inv(self, x):
        p, e, n = x
        # (t,n)^-1 = (-2**n t, -n)
        p2, e2 = _dyadic(-p, e - n)
        return (p2, e2, -n)

    def cmp(self, x, y):
        if x[2] != y[2]:
            return -1 if x[2] < y[2] else 1
        # compare p/2**e with q/2**f
        p, e, _ = x
        q, f, _ = y
        if e >= f:
            lhs, rhs = p, q << (e - f)
        else:
            lhs, rhs = p << (f - e), q
        return (lhs > rhs) - (lhs < rhs)

    def sort_key(self):
        return lambda x: (x[2], Fraction(x[0], 1 << x[1]))

    def is_element(self, x):
        if not (isinstance(x, tuple) and len(x) == 3 and all(_is_int(c) for c in x)):
            return False
        p, e, _ = x
        if e < 0:
            return False
        if p == 0:
            return e == 0
        return e == 0 or p & 1 == 1

    def t_value(self, x):
        return Fraction(x[0], 1 << x[1])

    def from_pair(self, t, n):
        t = Fraction(t)
        den = t.denominator
        e = den.bit_length() - 1
        if den != 1 << e:
            raise FamilyMismatchError(f"{t} is not a dyadic rational")
        return (t.numerator, e, n)

    def standard_generators(self):
        # c, b with c^b = c^2
        return [(1, 0, 0), (0, 0, 1)]

    def to_json(self):
        return {"family": "bs12"}

    def element_to_json(self, x):
        return [[x[0], 1 << x[1]], x[2]]

    def element_from_json(self, obj):
        if not (isinstance(obj, list) and len(obj) == 2 and _is_int(obj[1])):
            raise FamilyMismatchError(f"bad BS(1,2) element {obj!r}")
        t, n = obj
        if _is_int(t):
            t = Fraction(t)
        elif isinstance(t, list) and len(t) == 2 and all(_is_int(v) for v in t) and t[1] > 0:
            t = Fraction(t[0], t[1])
        elif isinstance(t, str):
            t = Fraction(t)
        else:
            raise FamilyMismatchError(f"bad dyadic coordinate {t!r}")
        return self.from_pair(t, n)


# --------------------------------------------------------------------------
# Z[phi] semidirect Z


def golden_sign(u, v):
    """Sign of ``u + v*phi`` with ``phi = (1 + sqrt 5) / 2``, in exact integers."""
    # u + v*phi = ((2u + v) + v*sqrt5) / 2
    p = 2 * u + v
    if v == 0:
        return _sign(p)
    if p == 0 or (p > 0) == (v > 0):
        return _sign(p) if p else _sign(v)
    # opposite signs; p^2 == 5 v^2 is impossible for v != 0
    return _sign(p) if p * p > 5 * v * v else _sign(v)


@lru_cache(maxsize=4096)
def phi_power(n):
    """``phi**n = a + b*phi`` as ``(a, b)``, for any integer ``n``."""
    a, b = 1, 0
    if n >= 0:
        for _ in range(n):
            a, b = b, a + b
    else:
        for _ in range(-n):
            a, b = b - a, a
    return a, b


def _zphi_mul(u, v, a, b):
    # (u + v phi)(a + b phi), phi^2 = phi + 1
    return u * a + v * b, u * b + v * a + v * b


@dataclass(frozen=True)
class GoldenSemidirect(OrderedGroup):
    """``Z[phi]`` extended by the unit ``phi``: pairs ``(h, n)``.

    Law ``(h,n)(h',n') = (h + phi**-n * h', n + n')``, so conjugation by the
    shift ``b = (0, 1)`` multiplies ``h`` by ``phi`` and ``a = (1, 0)``
    satisfies ``a^(b^2) = a a^b``.  Positive elements: ``n > 0``, or
    ``n = 0`` and ``h > 0`` in the real embedding.
    """

    family = "golden"

    def identity(self):
        return (0, 0, 0)

    def mul(self, x, y):
        u, v, n = x
        s, t, m = y
        if n:
            a, b = phi_power(-n)
            s, t = _zphi_mul(s, t, a, b)
        return (u + s, v + t, n + m)

    def inv(self, x):
        u, v, n = x
        if n:
            a, b = phi_power(n)
            u, v = _zphi_mul(u, v, a, b)
        return (-u, -v, -n)

    def cmp(self, x, y):
        if x[2] != y[2]:
            return -1 if x[2] < y[2] else 1
        return golden_sign(x[0] - y[0], x[1] - y[1])

    def is_element(self, x):
        return isinstance(x, tuple) and len(x) == 3 and all(_is_int(c) for c in x)

    def standard_generators(self):
        return [(1, 0, 0), (0, 0, 1)]

    def to_json(self):
        return {"family": "golden"}

    def element_to_json(self, x):
        return list(x)

    def element_from_json(self, obj):
        if not isinstance(obj, list):
            raise FamilyMismatchError(f"bad golden element {obj!r}")
        return self.check(tuple(obj))


# --------------------------------------------------------------------------
# direct products


@dataclass(frozen=True)
class DirectProduct(OrderedGroup):
    """``left x right`` ordered lexicographically (left component first)."""

    left: OrderedGroup
    right: OrderedGroup

    family = "product"

    def __post_init__(self):
        if not isinstance(self.left, OrderedGroup) or not isinstance(self.right, OrderedGroup):
            raise TypeError("DirectProduct factors must be groups")
        if self.depth() > MAX_PRODUCT_DEPTH:
            raise ValueError(f"direct products nest at most {MAX_PRODUCT_DEPTH} deep")

    @property
    def abelian(self):
        return self.left.abelian and self.right.abelian

    def depth(self):
        return 1 + max(self.left.depth(), self.right.depth())

    def identity(self):
        return (self.left.identity(), self.right.identity())

    def mul(self, x, y):
        return (self.left.mul(x[0], y[0]), self.right.mul(x[1], y[1]))

    def inv(self, x):
        return (self.left.inv(x[0]), self.right.inv(x[1]))

    def cmp(self, x, y):
        c = self.left.cmp(x[0], y[0])
        return c if c else self.right.cmp(x[1], y[1])

    def sort_key(self):
        lk, rk = self.left.sort_key(), self.right.sort_key()
        if lk is None and rk is None:
            return None
        return cmp_to_key(self.cmp)

    def is_element(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == 2
            and self.left.is_element(x[0])
            and self.right.is_element(x[1])
        )

    def standard_generators(self):
        gens = [(g, self.right.identity()) for g in self.left.standard_generators()]
        gens += [(self.left.identity(), g) for g in self.right.standard_generators()]
        return gens

    def to_json(self):
        return {"family": "product", "left": self.left.to_json(), "right": self.right.to_json()}

    def element_to_json(self, x):
        return [self.left.element_to_json(x[0]), self.right.element_to_json(x[1])]

    def element_from_json(self, obj):
        if not (isinstance(obj, list) and len(obj) == 2):
            raise FamilyMismatchError(f"bad product element {obj!r}")
        return (self.left.element_from_json(obj[0]), self.right.element_from_json(obj[1]))


def group_from_json(obj):
    """Build a group descriptor from its JSON object form."""
    if not isinstance(obj, dict) or "family" not in obj:
        raise ValueError(f"group spec must be an object with a 'family' key: {obj!r}")
    fam = obj["family"]
    if fam == "lattice":
        return IntegerLattice(obj.get("rank", 1))
    if fam == "free":
        return FreeGroup(
            obj.get("rank", 2),
            obj.get("magnus_initial_degree", 4),
            obj.get("magnus_max_degree", 64),
        )
    if fam == "heisenberg":
        return Heisenberg()
    if fam == "bs12":
        return BaumslagSolitar12()
    if fam == "golden":
        return GoldenSemidirect()
    if fam == "product":
        return DirectProduct(group_from_json(obj["left"]), group_from_json(obj["right"]))
    raise ValueError(f"unknown group family {fam!r}")


# --------------------------------------------------------------------------
# validated module-level operations


def identity(spec):
    return spec.identity()


def multiply(spec, a, b):
    return spec.mul(spec.check(a), spec.check(b))


def invert(spec, a):
    return spec.inv(spec.check(a))


def compare(spec, a, b):
    return Ordering(spec.cmp(spec.check(a), spec.check(b)))


def power(spec, a, e):
    return spec.pow(spec.check(a), e)


def commutator(spec, a, b):
    return spec.comm(spec.check(a), spec.check(b))


def conjugate(spec, a, b):
    return spec.conj(spec.check(a), spec.check(b))
