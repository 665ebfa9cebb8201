"""Theorem-verification harness: corpus in, report with counterexamples out."""
from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from ..abelian import (
    ap_cover,
    check_hypothesis,
    classify_abelian,
    subgroup_rank,
    verdict_is_consistent,
)
from ..errors import PreconditionError
from ..groups import Heisenberg, IntegerLattice, group_from_json
from ..nonabelian import (
    law_check,
    law_value,
    match_extension_form,
    match_triple_form,
    match_young,
    validate_form,
)
from ..products import FiniteSubset, make_subset, partition_square, square_size
from .balls import BallSpec, ball
from .constructions import construct_4k5, construction_generators, random_two_ap, sample_two_ap_params
from .enumerate import EnumerationTask, enumerate_indices

__all__ = ["THEOREMS", "VerificationReport", "verify", "revalidate_counterexample"]

THEOREMS = (
    "T1_5_i",
    "T1_1",
    "T1_2",
    "T1_4",
    "T1_5_iv",
    "P5_forms",
    "P6_forms",
    "T1_6_k4",
    "T1_8_s1",
    "T1_9",
)


@dataclass
class VerificationReport:
    theorem_id: str
    corpus_size: int
    verdicts: dict
    counterexamples: list
    runtime_ms: int
    seed: int
    evidence_level: str = "exact"
    details: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def status(self):
        return "verified" if not self.counterexamples else "counterexample"

    def to_json(self, include_runtime=False):
        out = {
            "theorem_id": self.theorem_id,
            "status": self.status,
            "corpus_size": self.corpus_size,
            "verdicts": dict(sorted(self.verdicts.items())),
            "counterexamples": self.counterexamples,
            "seed": self.seed,
            "evidence_level": self.evidence_level,
            "details": self.details,
            "notes": self.notes,
        }
        if include_runtime:
            out["runtime_ms"] = self.runtime_ms
        return out


def _entry(corpus, n, notes, what="qualifying subsets"):
    """Per-corpus detail line; an empty corpus is flagged, never passed silently."""
    entry = {"corpus": corpus["name"], "subsets": n}
    if n == 0:
        entry["vacuous"] = True
        notes.append(f"corpus {corpus['name']}: no {what}; nothing checked")
    return entry


def _record(check, spec, S, **params):
    return {
        "check": check,
        "group": spec.to_json(),
        "set": [spec.element_to_json(x) for x in S],
        "params": params,
    }


def _all_commute(spec, elems):
    return all(spec.commutes(p, q) for i, p in enumerate(elems) for q in elems[i + 1 :])


def _k_range(corpus):
    if "k" in corpus:
        return [int(corpus["k"])]
    return list(range(int(corpus["k_min"]), int(corpus["k_max"]) + 1))


def _stream(corpus, k, alpha, beta, workers, exact=None):
    """``(subset, square_size)`` pairs for one corpus entry and one k."""
    bs = BallSpec.from_json(corpus["ball"])
    task = EnumerationTask(bs, k, Fraction(alpha), beta, corpus.get("normalize", "none"))
    elems = ball(bs)
    for idx, s in enumerate_indices(task, workers, elems):
        if exact is None or s == exact:
            yield FiniteSubset(bs.spec, tuple(elems[i] for i in idx)), s


# --------------------------------------------------------------------------
# pipelines; each returns (corpus_size, verdicts, counterexamples, details, notes)


def _order_bound(params, seed, workers):
    verdicts, cex, details, notes = Counter(), [], [], []
    total = 0
    for corpus in params["corpora"]:
        n = 0
        for k in _k_range(corpus):
            for S, s in _stream(corpus, k, 0, k * k, workers):
                n += 1
                spec = S.spec
                if s < 2 * k - 1:
                    cex.append(_record("order_bound", spec, S))
                    continue
                if s == 2 * k - 1:
                    verdicts["equality_cases"] += 1
                if isinstance(spec, IntegerLattice):
                    ap = ap_cover(S)
                    is_ap = ap is not None and ap.length == k
                    if is_ap != (s == 2 * k - 1):
                        cex.append(_record("order_bound_equality", spec, S))
        verdicts["subsets"] += n
        details.append(_entry(corpus, n, notes))
        total += n
    return total, verdicts, cex, details, notes


def _abelian_mode(mode, params, seed, workers):
    verdicts, cex, details, notes = Counter(), [], [], []
    c = params.get("c")
    total = 0
    for corpus in params["corpora"]:
        n = 0
        for k in _k_range(corpus):
            if mode == "3k3":
                alpha, beta, exact = 3, -3, None
            elif mode == "3k2":
                alpha, beta, exact = 3, -2, 3 * k - 2
            else:
                alpha, beta, exact = c + 1, -(c * (c + 1)) // 2 - 1, None
            for S, s in _stream(corpus, k, alpha, beta, workers, exact):
                if k < 2:
                    continue
                n += 1
                spec = S.spec
                if not _all_commute(spec, S.elems):
                    if mode == "3k3":
                        cex.append(_record("abelian_claim", spec, S, mode=mode))
                    else:
                        verdicts["non-abelian-skipped"] += 1
                    continue
                if not isinstance(spec, IntegerLattice):
                    verdicts["abelian-nonlattice"] += 1
                    continue
                v = classify_abelian(S, mode, c)
                verdicts[v.branch] += 1
                if v.is_counterexample or not verdict_is_consistent(S, v):
                    cex.append(_record("classification", spec, S, mode=mode, c=c))
        details.append(_entry(corpus, n, notes))
        total += n
    rnd = params.get("random_two_ap")
    if rnd and mode == "3k3":
        rcount = Counter()
        for k, gap, split, ratio, s in sample_two_ap_params(
            rnd["count"], rnd.get("seed", seed), rnd.get("max_gap", 10**6)
        ):
            S = random_two_ap(k, gap, split, ratio, s)
            v = classify_abelian(S, "3k3")
            rcount[v.branch] += 1
            if v.is_counterexample or not verdict_is_consistent(S, v):
                cex.append(_record("classification", S.spec, S, mode="3k3", c=None))
        details.append({"corpus": "random_two_ap", "subsets": rnd["count"], "branches": dict(rcount)})
        for b, cnt in rcount.items():
            verdicts["random:" + b] += cnt
        total += rnd["count"]
    return total, verdicts, cex, details, notes


def _generation_counts(params, seed, workers):
    verdicts, cex, details, notes = Counter(), [], [], []
    bmax = int(params.get("b_max", 2))
    total = 0
    for corpus in params["corpora"]:
        n = 0
        for k in _k_range(corpus):
            for S, s in _stream(corpus, k, 3, -3 + bmax, workers):
                n += 1
                spec = S.spec
                commute = _all_commute(spec, S.elems)
                lattice = isinstance(spec, IntegerLattice)
                b = s - (3 * k - 3)
                if b <= 0:
                    clause = "ii" if b < 0 else "iii"
                    bound = 2 if b < 0 else 3
                    if not commute or (lattice and subgroup_rank(S) > bound):
                        cex.append(_record("generation", spec, S, clause=clause))
                    verdicts[clause] += 1
                    continue
                if not commute:
                    verdicts["iv:evidence-only"] += 1
                    continue
                if not lattice:
                    verdicts["iv:abelian-nonlattice"] += 1
                    continue
                m = subgroup_rank(S)
                if m <= b + 2 or (k == 4 and b == 1 and m <= b + 3):
                    verdicts["iv"] += 1
                else:
                    cex.append(_record("generation", spec, S, clause="iv"))
        details.append(_entry(corpus, n, notes))
        total += n
    notes.append("non-abelian sets with b >= 1 are counted as evidence only")
    return total, verdicts, cex, details, notes


def _non_commuting(spec, elems):
    return not _all_commute(spec, elems)


def _triple_forms(params, seed, workers):
    verdicts, cex, details, notes = Counter(), [], [], []
    total = 0
    for corpus in params["corpora"]:
        n = 0
        for S, s in _stream(corpus, 3, 0, 7, workers, exact=7):
            spec = S.spec
            if not _non_commuting(spec, S.elems):
                continue
            n += 1
            form = match_triple_form(spec, S)
            if form is None or not validate_form(spec, S, form):
                cex.append(_record("triple_form", spec, S))
                continue
            verdicts[form.kind] += 1
        details.append(_entry(corpus, n, notes))
        total += n
    return total, verdicts, cex, details, notes


def _extension_forms(params, seed, workers):
    verdicts, cex, details, notes = Counter(), [], [], []
    total = 0
    for corpus in params["corpora"]:
        n = 0
        for k in _k_range(corpus):
            for S, s in _stream(corpus, k, 3, -2, workers, exact=3 * k - 2):
                spec = S.spec
                elems = S.elems
                if _all_commute(spec, elems):
                    verdicts["abelian"] += 1
                    continue
                applies = any(
                    _all_commute(spec, elems[:i] + elems[i + 1 :]) for i in range(len(elems))
                )
                if not applies:
                    verdicts["not-applicable"] += 1
                    continue
                n += 1
                form = match_extension_form(spec, S)
                if form is None or not validate_form(spec, S, form):
                    cex.append(_record("extension_form", spec, S))
                    continue
                verdicts[form.kind] += 1
        details.append(_entry(corpus, n, notes))
        total += n
    return total, verdicts, cex, details, notes


def _law_params(params):
    law = params.get("law", {})
    return int(law.get("radius", 5)), int(law.get("samples", 10_000))


def _cardinality_four(params, seed, workers):
    verdicts, cex, details = Counter(), [], []
    notes = []
    radius, samples = _law_params(params)
    total = 0
    for corpus in params["corpora"]:
        n = 0
        for S, s in _stream(corpus, 4, 3, -2, workers, exact=10):
            n += 1
            spec = S.spec
            if _all_commute(spec, S.elems):
                verdicts["abelian"] += 1
            else:
                form = match_young(spec, S)
                if form is None or not validate_form(spec, S, form):
                    cex.append(_record("young_k4", spec, S))
                else:
                    verdicts[form.kind] += 1
            rep = law_check(spec, S.elems, "Metabelian", radius, samples, seed)
            if not rep.holds:
                cex.append(_law_record(spec, S, rep))
        details.append(_entry(corpus, n, notes))
        total += n
    notes.append(f"metabelian law sampled: radius {radius}, {samples} samples")
    return total, verdicts, cex, details, notes


def _law_record(spec, S, rep):
    rec = _record("law", spec, S, law=rep.law)
    rec["params"]["violation"] = [spec.element_to_json(x) for x in rep.first_violation]
    return rec


def _s_equals_one(params, seed, workers):
    verdicts, cex, details, notes = Counter(), [], [], []
    radius, samples = _law_params(params)
    k = int(params.get("k", 8))
    target = 3 * k - 1
    limit = int(params.get("sample", 1000))
    class2_cap = int(params.get("class2_exhaustive_cap", 10**6))
    total = 0
    for corpus in params["corpora"]:
        found = [S for S, _ in _stream(corpus, k, 3, -1, workers, exact=target)]
        chosen = found
        if len(found) > limit:
            pick = sorted(random.Random(seed).sample(range(len(found)), limit))
            chosen = [found[i] for i in pick]
        entry = {"corpus": corpus["name"], "filtered": len(found), "checked": len(chosen)}
        if not found:
            entry["vacuous"] = True
            notes.append(f"corpus {corpus['name']}: no {k}-subset with |S^2| = {target}; nothing checked")
        entry["non_abelian"] = sum(1 for S in chosen if not _all_commute(S.spec, S.elems))
        for S in chosen:
            spec = S.spec
            rep = law_check(spec, S.elems, "Metabelian", radius, samples, seed)
            if not rep.holds:
                cex.append(_law_record(spec, S, rep))
            verdicts["metabelian"] += 1
            if isinstance(spec, Heisenberg):
                rep2 = law_check(spec, S.elems, "Class2", radius, samples, seed, exhaustive_cap=class2_cap)
                if not rep2.holds:
                    cex.append(_law_record(spec, S, rep2))
                verdicts[f"class2:exhaustive_length_{rep2.exhaustive_length}"] += 1
        details.append(entry)
        total += len(chosen)
    return total, verdicts, cex, details, notes


def _construction(params, seed, workers):
    verdicts, cex, details = Counter(), [], []
    k_min, k_max = int(params.get("k_min", 3)), int(params.get("k_max", 20))
    radius, samples = _law_params(params)
    for k in range(k_min, k_max + 1):
        S = construct_4k5(k)
        spec = S.spec
        s = square_size(S)
        part = partition_square(S, split_at_max=False)
        ok = (
            s == 4 * k - 5
            and part.is_disjoint
            and len(part.T_square) == 2 * k - 3
            and len(part.cross) == 2 * k - 3
        )
        details.append({"k": k, "square_size": s, "T_square": len(part.T_square), "cross": len(part.cross)})
        if ok:
            verdicts["exact"] += 1
        else:
            cex.append(_record("construction", spec, S, k=k))
    spec = S.spec
    rep = law_check(spec, construction_generators(), "Metabelian", radius, samples, seed)
    verdicts["ambient_metabelian_violation"] = int(not rep.holds)
    notes = []
    if rep.holds:
        notes.append("no metabelian-law violation found in the ambient group")
    else:
        details.append(
            {"metabelian_violation": [spec.element_to_json(x) for x in rep.first_violation]}
        )
    return k_max - k_min + 1, verdicts, cex, details, notes


PIPELINES = {
    "T1_5_i": _order_bound,
    "T1_1": lambda p, s, w: _abelian_mode("3k3", p, s, w),
    "T1_2": lambda p, s, w: _abelian_mode("3k2", p, s, w),
    "T1_4": lambda p, s, w: _abelian_mode("ck", p, s, w),
    "T1_5_iv": _generation_counts,
    "P5_forms": _triple_forms,
    "P6_forms": _extension_forms,
    "T1_6_k4": _cardinality_four,
    "T1_8_s1": _s_equals_one,
    "T1_9": _construction,
}

SAMPLED = {"T1_6_k4", "T1_8_s1"}


def verify(theorem_id, params, workers=None):
    """Run one theorem's pipeline over the corpus described by ``params``."""
    if theorem_id not in PIPELINES:
        raise PreconditionError(f"unknown theorem id {theorem_id!r}")
    seed = int(params.get("seed", 0))
    t0 = time.perf_counter()
    size, verdicts, cex, details, notes = PIPELINES[theorem_id](params, seed, workers)
    ms = int(round(1000 * (time.perf_counter() - t0)))
    level = "sampled" if theorem_id in SAMPLED else "exact"
    return VerificationReport(
        theorem_id, size, dict(verdicts), cex, ms, seed, level, details, notes
    )


# --------------------------------------------------------------------------
# counterexample re-validation


def revalidate_counterexample(record):
    """True iff ``record`` still demonstrates a failed claim when recomputed
    from its own contents."""
    spec = group_from_json(record["group"])
    S = make_subset(spec, [spec.element_from_json(x) for x in record["set"]])
    k = len(S)
    check = record["check"]
    params = record.get("params", {})
    elems = S.elems
    if check == "order_bound":
        return square_size(S) < 2 * k - 1
    if check == "order_bound_equality":
        ap = ap_cover(S)
        return (ap is not None and ap.length == k) != (square_size(S) == 2 * k - 1)
    if check == "abelian_claim":
        return square_size(S) <= 3 * k - 3 and not _all_commute(spec, elems)
    if check == "classification":
        mode, c = params["mode"], params.get("c")
        if not check_hypothesis(mode, k, square_size(S), c):
            return False
        v = classify_abelian(S, mode, c)
        return v.is_counterexample or not verdict_is_consistent(S, v)
    if check == "generation":
        b = square_size(S) - (3 * k - 3)
        commute = _all_commute(spec, elems)
        if b <= 0:
            return not commute or subgroup_rank(S) > (2 if b < 0 else 3)
        return commute and not (subgroup_rank(S) <= b + 2 or (k == 4 and b == 1 and subgroup_rank(S) <= 4))
    if check == "triple_form":
        if k != 3 or square_size(S) != 7 or _all_commute(spec, elems):
            return False
        return match_triple_form(spec, S) is None
    if check == "extension_form":
        if square_size(S) != 3 * k - 2 or _all_commute(spec, elems):
            return False
        return match_extension_form(spec, S) is None
    if check == "young_k4":
        if k != 4 or square_size(S) != 10 or _all_commute(spec, elems):
            return False
        return match_young(spec, S) is None
    if check == "law":
        args = [spec.element_from_json(x) for x in params["violation"]]
        return law_value(spec, params["law"], args) != spec.identity()
    if check == "construction":
        k = params["k"]
        return square_size(construct_4k5(k)) != 4 * k - 5
    raise PreconditionError(f"unknown check {check!r}")
