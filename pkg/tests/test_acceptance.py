"""Acceptance criteria, one test each, zero tolerance.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion (see conftest.py).
"""
import itertools
import time

import pytest
from oracles import brute_enumerate, freiman_dimension_by_search, is_ap, sumset

from smalldoubling import (
    BaumslagSolitar12,
    DirectProduct,
    FreeGroup,
    GoldenSemidirect,
    Heisenberg,
    IntegerLattice,
    partition_square,
    square_size,
)
from smalldoubling.abelian import (
    abelian_profile,
    ap_cover,
    classify_abelian,
    freiman_dimension,
    verdict_is_consistent,
)
from smalldoubling.nonabelian import check_young_relations, law_check, law_value
from smalldoubling.report import build_certificate, dumps, shipped_corpus, shipped_theorem_corpus
from smalldoubling.search import (
    BallSpec,
    EnumerationTask,
    ball,
    construct_4k5,
    enumerate_indices,
    enumerate_small_doubling,
    random_two_ap,
    sample_two_ap_params,
    verify,
)

Z = IntegerLattice(1)
H, BS, GOLD, F2 = Heisenberg(), BaumslagSolitar12(), GoldenSemidirect(), FreeGroup(2)


def _params(tid):
    return shipped_theorem_corpus(tid)["params"]


def _corpus(tid, name):
    return next(c for c in _params(tid)["corpora"] if c["name"] == name)


@pytest.mark.criterion(1, title="4k-5 construction, k = 3..20")
def test_c01_construction_exactness():
    t0 = time.perf_counter()
    for k in range(3, 21):
        S = construct_4k5(k)
        assert len(S) == k
        assert square_size(S) == 4 * k - 5
        p = partition_square(S, split_at_max=False)
        assert p.is_disjoint
        assert len(p.T_square) == 2 * k - 3 and len(p.cross) == 2 * k - 3
        assert len(p.T_square) + len(p.cross) + 1 == 4 * k - 5
    rep = verify("T1_9", _params("T1_9"))
    assert rep.status == "verified" and rep.verdicts["exact"] == 18
    assert time.perf_counter() - t0 < 5.0


@pytest.mark.criterion(2, title="|S^2| >= 2|S|-1 in all six families")
def test_c02_order_bound():
    params = _params("T1_5_i")
    families = set()
    for c in params["corpora"]:
        bs = BallSpec.from_json(c["ball"])
        assert len(ball(bs)) <= 15
        assert (c["k_min"], c["k_max"]) == (2, 5)
        fam = bs.spec.to_json()["family"]
        families.add(fam if fam != "lattice" else "lattice")
    assert families == {"lattice", "free", "heisenberg", "bs12", "golden", "product"}
    rep = verify("T1_5_i", params)
    assert rep.counterexamples == [] and rep.corpus_size > 0
    # equality cases in Z are exactly the progressions (independent brute force)
    elems = ball(BallSpec.from_json(_corpus("T1_5_i", "Z_r7")["ball"]))
    for k in range(2, 6):
        for idx, n in brute_enumerate(Z.mul, elems, k, k * k):
            assert n >= 2 * k - 1
            pts = [elems[i][0] for i in idx]
            equal = n == 2 * k - 1
            assert equal == is_ap(pts)
            assert equal == (ap_cover(pts).length == k)


@pytest.mark.criterion(3, title="Freiman inequality and m <= d+1 <= |S|")
def test_c03_freiman_chain():
    box = [(x, y) for x in range(5) for y in range(5)]
    cases = [c for n in range(3, 7) for c in itertools.combinations(box, n)]
    cases += [tuple((x,) for x in c) for n in range(2, 8) for c in itertools.combinations(range(13), n)]
    for pts in cases:
        p = abelian_profile(pts)
        k, d = len(pts), p.freiman_d
        assert p.square_size == len(sumset(pts))
        assert p.rank_m <= d + 1 <= k
        assert 2 * p.square_size >= 2 * (d + 1) * k - d * (d + 1)


@pytest.mark.criterion(4, title="Freiman dimension agrees with isomorphism search")
def test_c04_freiman_dimension_oracle():
    for n in range(2, 6):
        for S in itertools.combinations(range(10), n):
            assert freiman_dimension(S) == freiman_dimension_by_search(S), S


@pytest.mark.criterion(5, title="3k-3 classification for |S| = 11")
def test_c05_three_k_minus_three():
    t0 = time.perf_counter()
    c = _corpus("T1_1", "Z_r44_k11")
    task = EnumerationTask(BallSpec.from_json(c["ball"]), 11, 3, -3, c["normalize"])
    n = 0
    for S in enumerate_small_doubling(task):
        pts = [x[0] for x in S]
        assert pts[0] == 0 and pts[-1] <= 44
        assert len(sumset(S.elems)) <= 30
        v = classify_abelian(pts, "3k3")
        assert v.branch in ("i", "ii") and verdict_is_consistent(pts, v)
        if v.branch == "i":
            assert v.witness.length <= 21
        else:
            assert v.witness.length_sum == 11
        n += 1
    assert n > 0
    rnd = _params("T1_1")["random_two_ap"]
    assert rnd["count"] == 1000 and rnd["max_gap"] == 10**6
    params = sample_two_ap_params(rnd["count"], rnd["seed"], rnd["max_gap"])
    for k, gap, split, ratio, seed in params:
        pts = [x[0] for x in random_two_ap(k, gap, split, ratio, seed)]
        v = classify_abelian(pts, "3k3")
        assert v.branch == "ii" and verdict_is_consistent(pts, v)
    assert time.perf_counter() - t0 < 300


@pytest.mark.criterion(6, title="triple forms on radius-3 balls")
def test_c06_triple_forms():
    params = _params("P5_forms")
    fams = {BallSpec.from_json(c["ball"]).spec.to_json()["family"] for c in params["corpora"]}
    assert fams == {"heisenberg", "bs12", "golden"}
    assert all(c["ball"]["radius"] == 3 and not c["ball"]["positive"] for c in params["corpora"])
    rep = verify("P5_forms", params)
    assert rep.counterexamples == []
    assert all(d["subsets"] > 0 for d in rep.details)
    assert sum(rep.verdicts.values()) == rep.corpus_size


@pytest.mark.criterion(7, title="|S| = 4, |S^2| = 10: abelian or young, metabelian")
def test_c07_cardinality_four():
    params = _params("T1_6_k4")
    assert params["law"] == {"radius": 5, "samples": 10_000} and params["seed"] == 0
    names = {c["name"] for c in params["corpora"]}
    assert {"H_r2", "BS_r2"} <= names
    rep = verify("T1_6_k4", params)
    assert rep.counterexamples == []
    assert sum(rep.verdicts.values()) == rep.corpus_size > 0
    for d in rep.details:
        if d["subsets"] == 0:
            assert d.get("vacuous")


@pytest.mark.criterion(8, title="young relations and group laws")
def test_c08_young_models_and_laws():
    ZBS = DirectProduct(Z, BS)
    models = [
        (H, "TypeI", {"a": (1, 0, 0), "b": (0, 1, 0)}),
        (ZBS, "TypeII", {"a": ((1,), BS.identity()), "b": ((0,), (0, 0, 1)), "c": ((0,), (1, 0, 0))}),
        (BS, "TypeIII", {"a": (1, 0, 0), "b": (0, 0, 1)}),
        (GOLD, "TypeIV", {"a": (1, 0, 0), "b": (0, 0, 1)}),
    ]
    for spec, kind, w in models:
        assert check_young_relations(spec, kind, w)
        gens = sorted(set(w.values()))
        rep = law_check(spec, gens, "Metabelian", 6, 10_000, seed=0)
        assert rep.holds and rep.samples_checked == 10_000
    rep = law_check(H, [(1, 0, 0), (0, 1, 0)], "Class2", 6, 10_000, seed=0)
    assert rep.holds and rep.exhaustive_length >= 2
    rep = law_check(F2, [(1,), (2,)], "Metabelian", 6, 10_000, seed=0)
    assert not rep.holds
    assert law_value(F2, "Metabelian", rep.first_violation) != F2.identity()


@pytest.mark.criterion(9, title="pruned enumeration = brute force; worker-count independence")
def test_c09_enumeration_correctness():
    names = [
        "enum_Z_r5_k4",
        "enum_Z2_pos_r3_k4",
        "enum_H_pos_r2_k3",
        "enum_BS_pos_r2_k4",
        "enum_F2_pos_r2_k3",
        "enum_Golden_pos_r2_k4",
    ]
    for name in names:
        task = EnumerationTask.from_json(shipped_corpus(name)["task"])
        elems = ball(task.ball)
        assert len(elems) <= 12 and task.k <= 4
        got = enumerate_indices(task)
        assert got == brute_enumerate(task.ball.spec.mul, elems, task.k, task.bound)
        assert got, name
    for tid in ("T1_5_i", "P5_forms"):
        inp = {"theorem": tid, "params": _params(tid)}
        reports = {w: dumps(build_certificate("verify", None, inp, workers=w)[0]) for w in (1, 2, 8)}
        assert reports[1] == reports[2] == reports[8]


@pytest.mark.criterion(10, title="s = 1, |S| = 8: metabelian, class 2 in Heisenberg")
def test_c10_s_equals_one():
    params = _params("T1_8_s1")
    assert params["k"] == 8 and params["sample"] == 1000
    fams = {BallSpec.from_json(c["ball"]).spec.to_json()["family"] for c in params["corpora"]}
    assert {"lattice", "heisenberg"} <= fams
    assert any(c["name"] == "H_r2" for c in params["corpora"])
    rep = verify("T1_8_s1", params)
    assert rep.counterexamples == []
    heis_checked = 0
    for c, d in zip(params["corpora"], rep.details):
        if d["filtered"] == 0:
            assert d["vacuous"] and any(c["name"] in n for n in rep.notes)
        if BallSpec.from_json(c["ball"]).spec == H:
            heis_checked += d["checked"]
    assert rep.verdicts["metabelian"] == rep.corpus_size > 0
    assert rep.verdicts.get("class2:exhaustive_length_2", 0) == heis_checked > 0
