"""Young-group recognition, group-law checks and bounded membership witnesses.

Conventions: ``x^y = y^-1 x y`` and ``[x, y] = x^-1 y^-1 x y``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import PreconditionError
from .products import FiniteSubset, make_subset, square_size

__all__ = [
    "FORM_KINDS",
    "LAWS",
    "YoungForm",
    "LawReport",
    "match_triple_form",
    "match_extension_form",
    "match_young",
    "check_young_relations",
    "validate_form",
    "young_witness",
    "law_check",
    "bounded_membership",
    "evaluate_word",
]

FORM_KINDS = (
    "TypeI",
    "TypeII",
    "TypeIII",
    "TypeIV",
    "Central3",
    "Conjugate3",
    "P5a",
    "P5b",
    "P5c",
    "P6a",
    "P6b",
    "P6c",
)
LAWS = ("Metabelian", "Class2", "Abelian")


@dataclass(frozen=True)
class YoungForm:
    """A matched normal form.

    ``witnesses`` maps symbol names to elements.  ``subset`` lists the
    indices of S the form was read from when it does not use all of S, and
    ``membership`` then gives, for each remaining index, a word in the
    subset's elements that evaluates to it (bounded evidence of generation).
    """

    kind: str
    witnesses: dict
    variant: str | None = None
    subset: tuple | None = None
    membership: dict | None = None

    def to_json(self, spec):
        out = {
            "kind": self.kind,
            "variant": self.variant,
            "witnesses": {k: spec.element_to_json(v) for k, v in sorted(self.witnesses.items())},
        }
        if self.subset is not None:
            out["subset"] = list(self.subset)
            out["membership"] = {str(i): list(w) for i, w in sorted(self.membership.items())}
        return out

    @classmethod
    def from_json(cls, spec, obj):
        wit = {k: spec.element_from_json(v) for k, v in obj["witnesses"].items()}
        subset = tuple(obj["subset"]) if "subset" in obj else None
        memb = None
        if subset is not None:
            memb = {int(i): tuple(w) for i, w in obj["membership"].items()}
        return cls(obj["kind"], wit, obj.get("variant"), subset, memb)


def _relations(spec, kind, w, variant):
    """Defining relations of ``kind`` evaluated on the witness map."""
    mul, comm, conj, one = spec.mul, spec.comm, spec.conj, spec.identity()
    if kind == "TypeI":
        a, b = w["a"], w["b"]
        ab = comm(a, b)
        return comm(ab, a) == one and comm(ab, b) == one
    if kind == "TypeII":
        a, b, c = w["a"], w["b"], w["c"]
        c2 = mul(c, c)
        return (
            c != one
            and (conj(c, b) == c2 or conj(c2, b) == c)
            and comm(a, b) == one
            and comm(a, c) == one
        )
    if kind == "TypeIII":
        a, b = w["a"], w["b"]
        return a != one and conj(a, b) == mul(a, a)
    if kind == "TypeIV":
        a, b = w["a"], w["b"]
        ab = conj(a, b)
        return a != one and conj(a, mul(b, b)) == mul(a, ab) and comm(a, ab) == one
    if kind == "Central3":
        z, p, q = w["z"], w["p"], w["q"]
        return spec.commutes(z, p) and spec.commutes(z, q) and not spec.commutes(p, q)
    if kind == "Conjugate3":
        a, b = w["a"], w["b"]
        return spec.commutes(a, conj(a, b))
    if kind in ("P5a", "P5b", "P5c"):
        x, c = w["x"], w["c"]
        if spec.cmp(c, one) <= 0:
            return False
        cx = conj(c, x)
        if kind == "P5c":
            c2 = mul(c, c)
            if variant == "c^x=c^2":
                return cx == c2
            return conj(c2, x) == c
        return conj(c, mul(x, x)) == mul(c, cx) and spec.commutes(c, cx)
    if kind in ("P6a", "P6b", "P6c"):
        a, c, y = w["a"], w["c"], w["y"]
        c2 = mul(c, c)
        if spec.cmp(c, one) <= 0 or comm(c, a) != one:
            return False
        if kind == "P6a":
            first = comm(a, y) == c if variant == "[a,y]=c" else comm(y, a) == c
            return first and comm(c, y) == one
        if kind == "P6b":
            first = comm(a, y) == c if variant == "[a,y]=c" else comm(a, y) == one
            return first and conj(c2, y) == c
        first = comm(a, y) == one if variant == "[a,y]=1" else comm(y, a) == c2
        return first and conj(c, y) == c2
    raise PreconditionError(f"unknown form kind {kind!r}")


def check_young_relations(spec, kind, witnesses, variant=None):
    """Evaluate the defining relations of ``kind`` exactly."""
    try:
        return bool(_relations(spec, kind, witnesses, variant))
    except KeyError as exc:
        raise PreconditionError(f"{kind} needs witness {exc.args[0]!r}") from None


def _form_elements(spec, form):
    """The set a form describes, or None for the abstract Type I-IV kinds."""
    w, mul, conj = form.witnesses, spec.mul, spec.conj
    kind = form.kind
    if kind == "Central3":
        return {w["z"], w["p"], w["q"]}
    if kind == "Conjugate3":
        return {w["a"], conj(w["a"], w["b"]), w["b"]}
    if kind in ("P5a", "P5b", "P5c"):
        x, c = w["x"], w["c"]
        base = spec.inv(x) if form.variant == "xinv" else x
        if kind == "P5a":
            third = mul(base, conj(c, x))
        elif kind == "P5b":
            third = mul(base, mul(c, conj(c, x)))
        else:
            third = mul(base, mul(c, c))
        return {base, mul(base, c), third}
    if kind in ("P6a", "P6b", "P6c"):
        a, c, y = w["a"], w["c"], w["y"]
        out, t = {y}, a
        for _ in range(w["length"]):
            out.add(t)
            t = mul(t, c)
        return out
    return None


def validate_form(spec, S, form):
    """Re-check a form against S: relations hold and the set equations match."""
    S = S if isinstance(S, FiniteSubset) else make_subset(spec, S)
    w = dict(form.witnesses)
    if form.kind.startswith("P6"):
        w.setdefault("length", len(S) - 1)
    try:
        if not check_young_relations(spec, form.kind, w, form.variant):
            return False
    except PreconditionError:
        return False
    if form.kind in ("P6b", "P6c") and len(S) != 4:
        return False
    if form.subset is None:
        described = _form_elements(spec, YoungForm(form.kind, w, form.variant))
        return described is None or described == set(S.elems)
    # form read from a sub-triple: check it, then the membership words
    sub = [S.elems[i] for i in form.subset]
    described = _form_elements(spec, YoungForm(form.kind, w, form.variant))
    if described is not None and described != set(sub):
        return False
    rest = set(range(len(S))) - set(form.subset)
    if set(form.membership) != rest:
        return False
    return all(evaluate_word(spec, sub, form.membership[i]) == S.elems[i] for i in rest)


def young_witness(spec, form):
    """Map a matched form to ``(young_type, witnesses)`` when the form
    determines a young presentation, else None."""
    w, mul, comm, one = form.witnesses, spec.mul, spec.comm, spec.identity()
    kind, variant = form.kind, form.variant
    if kind in ("TypeI", "TypeII", "TypeIII", "TypeIV"):
        return kind, dict(w)
    if kind in ("P5a", "P5b"):
        return "TypeIV", {"a": w["c"], "b": w["x"]}
    if kind == "P5c":
        b = w["x"] if variant == "c^x=c^2" else spec.inv(w["x"])
        return "TypeIII", {"a": w["c"], "b": b}
    if kind == "P6a":
        return "TypeI", {"a": w["a"], "b": w["y"]}
    if kind in ("P6b", "P6c"):
        a, c, y = w["a"], w["c"], w["y"]
        if comm(a, y) != one:
            a = mul(a, mul(c, c))
        return "TypeII", {"a": a, "b": y, "c": c}
    return None


# --------------------------------------------------------------------------
# matchers


def _as_subset(spec, S):
    return S if isinstance(S, FiniteSubset) else make_subset(spec, S)


def _all_commute(spec, elems):
    return all(spec.commutes(p, q) for p, q in combinations(elems, 2))


def match_triple_form(spec, S):
    """First matching form among Central3, Conjugate3, P5a, P5b, P5c."""
    S = _as_subset(spec, S)
    if len(S) != 3:
        raise PreconditionError("match_triple_form needs |S| = 3")
    if square_size(S) != 7:
        raise PreconditionError("match_triple_form needs |S^2| = 7")
    elems = S.elems
    if _all_commute(spec, elems):
        raise PreconditionError("match_triple_form needs a non-commuting pair")
    mul, inv, conj, one = spec.mul, spec.inv, spec.conj, spec.identity()
    target = set(elems)

    for i, z in enumerate(elems):
        p, q = (e for j, e in enumerate(elems) if j != i)
        if spec.commutes(z, p) and spec.commutes(z, q):
            return YoungForm("Central3", {"z": z, "p": p, "q": q})

    for a in elems:
        for b in elems:
            if a != b and {a, conj(a, b), b} == target and spec.commutes(a, conj(a, b)):
                return YoungForm("Conjugate3", {"a": a, "b": b})

    for kind in ("P5a", "P5b", "P5c"):
        variants = ("x", "xinv") if kind != "P5c" else ("c^x=c^2", "(c^2)^x=c")
        for variant in variants:
            for base in elems:
                x = inv(base) if variant == "xinv" else base
                for second in elems:
                    if second == base:
                        continue
                    c = mul(inv(base), second)
                    if spec.cmp(c, one) <= 0:
                        continue
                    form = YoungForm(kind, {"x": x, "c": c}, variant)
                    if _form_elements(spec, form) == target and check_young_relations(
                        spec, kind, form.witnesses, variant
                    ):
                        return form
    return None


def match_extension_form(spec, S):
    """``S = {a, ac, ..., ac^(k-2), y}`` with one of the P6 relation sets."""
    S = _as_subset(spec, S)
    k = len(S)
    if k < 4:
        raise PreconditionError("match_extension_form needs |S| >= 4")
    if square_size(S) != 3 * k - 2:
        raise PreconditionError("match_extension_form needs |S^2| = 3|S| - 2")
    mul, inv, comm, one = spec.mul, spec.inv, spec.comm, spec.identity()
    for idx, y in enumerate(S.elems):
        T = S.elems[:idx] + S.elems[idx + 1 :]
        a = T[0]
        c = mul(inv(a), T[1])
        if not spec.commutes(a, c):
            continue
        t, ok = a, True
        for elem in T:
            if elem != t:
                ok = False
                break
            t = mul(t, c)
        if not ok or _all_commute(spec, S.elems):
            continue
        wit = {"a": a, "c": c, "y": y}
        candidates = [("P6a", "[a,y]=c"), ("P6a", "[y,a]=c")]
        if k == 4:
            candidates += [
                ("P6b", "[a,y]=c"),
                ("P6b", "[a,y]=1"),
                ("P6c", "[a,y]=1"),
                ("P6c", "[y,a]=c^2"),
            ]
        for kind, variant in candidates:
            if check_young_relations(spec, kind, wit, variant):
                return YoungForm(kind, wit, variant)
    return None


def _membership_words(spec, sub, others, radius):
    words = {}
    for i, elem in others:
        w = bounded_membership(spec, elem, sub, radius)
        if w is None:
            return None
        words[i] = w
    return words


def match_young(spec, S, membership_radius=6):
    """Young-form certificate for a non-abelian 4-set with ``|S^2| = 10``.

    Tries the extension forms, then a non-abelian sub-triple with a P5 form
    whose span reaches the fourth element, then a class-2 generating pair.
    Returns None for abelian S or when nothing matches within the bounds.
    """
    S = _as_subset(spec, S)
    if len(S) != 4 or square_size(S) != 10:
        raise PreconditionError("match_young needs |S| = 4 and |S^2| = 10")
    elems = S.elems
    if _all_commute(spec, elems):
        return None
    form = match_extension_form(spec, S)
    if form is not None:
        return form
    for idx in combinations(range(4), 3):
        sub = [elems[i] for i in idx]
        if _all_commute(spec, sub):
            continue
        subset = FiniteSubset(spec, tuple(sub))
        if square_size(subset) != 7:
            continue
        f = match_triple_form(spec, subset)
        if f is None or f.kind not in ("P5a", "P5b", "P5c"):
            continue
        (rest,) = set(range(4)) - set(idx)
        words = _membership_words(spec, sub, [(rest, elems[rest])], membership_radius)
        if words is not None:
            return YoungForm(f.kind, f.witnesses, f.variant, idx, words)
    for i, j in combinations(range(4), 2):
        a, b = elems[i], elems[j]
        if spec.commutes(a, b) or not check_young_relations(spec, "TypeI", {"a": a, "b": b}):
            continue
        others = [(r, elems[r]) for r in range(4) if r not in (i, j)]
        words = _membership_words(spec, [a, b], others, membership_radius)
        if words is not None:
            return YoungForm("TypeI", {"a": a, "b": b}, None, (i, j), words)
    return None


# --------------------------------------------------------------------------
# words and membership


def evaluate_word(spec, gens, word):
    """Evaluate a word of signed 1-based generator indices."""
    out = spec.identity()
    for letter in word:
        g = gens[abs(letter) - 1]
        out = spec.mul(out, g if letter > 0 else spec.inv(g))
    return out


def bounded_membership(spec, x, generators, radius):
    """Breadth-first search for a word of length <= radius equal to x.

    Returns a tuple of signed 1-based generator indices, or None (which is
    not a proof of non-membership).
    """
    if radius < 1:
        raise PreconditionError("radius must be >= 1")
    gens = list(generators)
    letters = [(i + 1, g) for i, g in enumerate(gens)] + [
        (-(i + 1), spec.inv(g)) for i, g in enumerate(gens)
    ]
    one = spec.identity()
    if x == one:
        return ()
    seen = {one: ()}
    frontier = [one]
    for _ in range(radius):
        nxt = []
        for elem in frontier:
            word = seen[elem]
            for letter, g in letters:
                if word and word[-1] == -letter:
                    continue
                val = spec.mul(elem, g)
                if val in seen:
                    continue
                seen[val] = word + (letter,)
                if val == x:
                    return seen[val]
                nxt.append(val)
        frontier = nxt
    return None


# --------------------------------------------------------------------------
# laws


@dataclass(frozen=True)
class LawReport:
    law: str
    samples_checked: int
    radius: int
    holds: bool
    first_violation: tuple | None = None
    seed: int = 0
    exhaustive_length: int = 0
    exhaustive_checked: int = 0
    evidence_level: str = "sampled"
    notes: tuple = field(default_factory=tuple)

    def to_json(self, spec):
        return {
            "law": self.law,
            "samples_checked": self.samples_checked,
            "radius": self.radius,
            "holds": self.holds,
            "first_violation": None
            if self.first_violation is None
            else [spec.element_to_json(x) for x in self.first_violation],
            "seed": self.seed,
            "exhaustive_length": self.exhaustive_length,
            "exhaustive_checked": self.exhaustive_checked,
            "evidence_level": self.evidence_level,
        }


LAW_ARITY = {"Metabelian": 4, "Class2": 3, "Abelian": 2}
EXHAUSTIVE_WORK_CAP = 20000
_SAMPLE_BLOCK = 4096


def law_value(spec, law, args):
    comm = spec.comm
    if law == "Metabelian":
        x, y, z, w = args
        return comm(comm(x, y), comm(z, w))
    if law == "Class2":
        x, y, z = args
        return comm(comm(x, y), z)
    if law == "Abelian":
        x, y = args
        return comm(x, y)
    raise PreconditionError(f"unknown law {law!r}")


def _short_elements(spec, letters, length):
    out = {spec.identity(): ()}
    frontier = dict(out)
    for _ in range(length):
        nxt = {}
        for val in frontier:
            for g in letters:
                v = spec.mul(val, g)
                if v not in out and v not in nxt:
                    nxt[v] = None
        out.update(nxt)
        frontier = nxt
    return list(out)


def _commutator_table(spec, W):
    pairs = {}
    comm = spec.comm
    for x in W:
        for y in W:
            pairs.setdefault(comm(x, y), (x, y))
    return pairs


def _exhaustive(spec, law, W, pairs):
    """Check ``law`` over all tuples from W.  Inner commutator values are
    deduplicated first (``pairs`` maps each value to one pair producing
    it), which keeps the check exact at a fraction of the cost."""
    comm, one = spec.comm, spec.identity()
    if law == "Abelian":
        for c, xy in pairs.items():
            if c != one:
                return xy, len(W) ** 2
        return None, len(W) ** 2
    C = list(pairs)
    if law == "Class2":
        for c in C:
            for z in W:
                if comm(c, z) != one:
                    return pairs[c] + (z,), len(C) * len(W)
        return None, len(C) * len(W)
    for c1 in C:
        for c2 in C:
            if comm(c1, c2) != one:
                return pairs[c1] + pairs[c2], len(C) ** 2
    return None, len(C) ** 2


def law_check(spec, generators, law, radius, sample_count, seed=0, exhaustive_cap=EXHAUSTIVE_WORK_CAP):
    """Test a group law on words in ``generators``.

    Exhaustive over all words of length <= 2 (falling back to length 1 when
    that would exceed ``exhaustive_cap`` group operations), then over
    ``sample_count`` seeded random tuples of words of length <= radius.
    A violation is a proof; ``holds=True`` is evidence only.
    """
    if law not in LAWS:
        raise PreconditionError(f"unknown law {law!r}")
    if radius < 1:
        raise PreconditionError("radius must be >= 1")
    gens = list(generators)
    if not gens:
        raise PreconditionError("law_check needs at least one generator")
    letters = gens + [spec.inv(g) for g in gens]
    one = spec.identity()

    for ex_len in (2, 1):
        W = _short_elements(spec, letters, ex_len)
        if ex_len == 2 and len(W) ** 2 > exhaustive_cap:
            continue
        pairs = _commutator_table(spec, W)
        second = {"Abelian": 0, "Class2": len(pairs) * len(W), "Metabelian": len(pairs) ** 2}[law]
        if ex_len == 1 or second <= exhaustive_cap:
            break
    violation, checked = _exhaustive(spec, law, W, pairs)
    if violation is not None:
        return LawReport(law, 0, radius, False, violation, seed, ex_len, checked, "exact")

    # letters are drawn in seeded batches; the stream depends only on seed
    rng = np.random.default_rng(seed)
    arity = LAW_ARITY[law]
    nletters = len(letters)
    mul = spec.mul
    done = 0
    while done < sample_count:
        block = min(_SAMPLE_BLOCK, sample_count - done)
        lengths = rng.integers(1, radius + 1, size=(block, arity)).tolist()
        picks = rng.integers(0, nletters, size=(block, arity, radius)).tolist()
        for lens, rows in zip(lengths, picks):
            args = []
            for n, row in zip(lens, rows):
                w = letters[row[0]]
                for i in row[1:n]:
                    w = mul(w, letters[i])
                args.append(w)
            if law_value(spec, law, args) != one:
                return LawReport(law, sample_count, radius, False, tuple(args), seed, ex_len, checked, "exact")
        done += block
    return LawReport(law, sample_count, radius, True, None, seed, ex_len, checked, "sampled")
