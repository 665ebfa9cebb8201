import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smalldoubling import (
    BaumslagSolitar12,
    DirectProduct,
    FreeGroup,
    GoldenSemidirect,
    Heisenberg,
    IntegerLattice,
    PreconditionError,
    make_subset,
    square_size,
)
from smalldoubling.nonabelian import (
    YoungForm,
    bounded_membership,
    check_young_relations,
    evaluate_word,
    law_check,
    law_value,
    match_extension_form,
    match_triple_form,
    match_young,
    validate_form,
    young_witness,
)
from smalldoubling.search import BallSpec, ball

Z, Z3 = IntegerLattice(1), IntegerLattice(3)
H, BS, GOLD, F2 = Heisenberg(), BaumslagSolitar12(), GoldenSemidirect(), FreeGroup(2)
ZBS = DirectProduct(Z, BS)


def _law_oracle(spec, law, args):
    """Commutator laws written out with explicit inverses."""
    inv, mul = spec.inv, spec.mul

    def comm(x, y):
        return mul(mul(inv(x), inv(y)), mul(x, y))

    if law == "Abelian":
        return comm(*args)
    if law == "Class2":
        return comm(comm(args[0], args[1]), args[2])
    return comm(comm(args[0], args[1]), comm(args[2], args[3]))


# ---- triple forms --------------------------------------------------------


def test_triple_p5c_in_bs():
    x, c = (0, 0, 1), (1, 0, 0)
    xc = BS.mul(x, c)
    S = make_subset(BS, [x, xc, BS.mul(xc, c)])
    form = match_triple_form(BS, S)
    assert form.kind == "P5c" and form.variant == "c^x=c^2"
    assert form.witnesses == {"x": x, "c": c}
    assert validate_form(BS, S, form)


def test_triple_conjugate_in_heisenberg():
    a, b = (1, 0, 0), (0, 1, 0)
    S = make_subset(H, [a, H.conj(a, b), b])
    assert square_size(S) == 7
    form = match_triple_form(H, S)
    assert form.kind == "Conjugate3"
    assert validate_form(H, S, form)


def test_triple_central_in_heisenberg():
    S = make_subset(H, [(0, 0, 1), (1, 0, 0), (0, 1, 0)])
    form = match_triple_form(H, S)
    assert form.kind == "Central3" and form.witnesses["z"] == (0, 0, 1)


def test_triple_preconditions():
    with pytest.raises(PreconditionError):
        match_triple_form(H, make_subset(H, [(1, 0, 0), (0, 1, 0)]))
    with pytest.raises(PreconditionError):  # abelian
        match_triple_form(H, make_subset(H, [(0, 0, 1), (0, 0, 2), (0, 0, 3)]))


# ---- extension forms -----------------------------------------------------


def test_extension_p6a_in_heisenberg():
    a, c, y = (1, 0, 0), (0, 0, 1), (0, 1, 0)
    ac = H.mul(a, c)
    S = make_subset(H, [a, ac, H.mul(ac, c), y])
    assert square_size(S) == 10
    form = match_extension_form(H, S)
    assert form.kind == "P6a"
    assert validate_form(H, S, form)


def test_extension_p6c_in_z_times_bs():
    a = ((1,), BS.identity())
    c = ((0,), (1, 0, 0))
    y = ((0,), (0, 0, 1))
    ac = ZBS.mul(a, c)
    S = make_subset(ZBS, [a, ac, ZBS.mul(ac, c), y])
    assert square_size(S) == 10
    form = match_extension_form(ZBS, S)
    assert form.kind == "P6c" and form.variant == "[a,y]=1"
    assert validate_form(ZBS, S, form)
    kind, w = young_witness(ZBS, form)
    assert kind == "TypeII" and check_young_relations(ZBS, kind, w)


def test_extension_absent_on_abelian_sets():
    S = make_subset(Z3, [(0, 0, 0), (1, 0, 0), (3, 0, 0), (7, 1, 0)])
    assert square_size(S) == 3 * 4 - 2
    assert match_extension_form(Z3, S) is None


def test_match_young_abelian_is_none():
    S = make_subset(Z, [(0,), (1,), (3,), (7,)])
    assert match_young(Z, S) is None


# ---- young relations -----------------------------------------------------


def test_young_relations_in_models():
    assert check_young_relations(H, "TypeI", {"a": (1, 0, 0), "b": (0, 1, 0)})
    assert check_young_relations(BS, "TypeIII", {"a": (1, 0, 0), "b": (0, 0, 1)})
    assert check_young_relations(GOLD, "TypeIV", {"a": (1, 0, 0), "b": (0, 0, 1)})
    w = {"a": ((1,), BS.identity()), "b": ((0,), (0, 0, 1)), "c": ((0,), (1, 0, 0))}
    assert check_young_relations(ZBS, "TypeII", w)
    assert not check_young_relations(F2, "TypeI", {"a": (1,), "b": (2,)})
    with pytest.raises(PreconditionError):
        check_young_relations(H, "TypeI", {"a": (1, 0, 0)})


def test_form_json_round_trip():
    x, c = (0, 0, 1), (1, 0, 0)
    form = YoungForm("P5c", {"x": x, "c": c}, "c^x=c^2")
    assert YoungForm.from_json(BS, form.to_json(BS)) == form


def test_tampered_form_rejected():
    x, c = (0, 0, 1), (1, 0, 0)
    xc = BS.mul(x, c)
    S = make_subset(BS, [x, xc, BS.mul(xc, c)])
    bad = YoungForm("P5c", {"x": x, "c": BS.mul(c, c)}, "c^x=c^2")
    assert not validate_form(BS, S, bad)


# ---- exhaustive matching on a small ball -----------------------------------


def _triples(spec, radius):
    elems = ball(BallSpec.standard(spec, radius))
    for T in itertools.combinations(elems, 3):
        S = make_subset(spec, T)
        if square_size(S) != 7:
            continue
        if all(spec.commutes(p, q) for p, q in itertools.combinations(T, 2)):
            continue
        yield S


@pytest.mark.parametrize("spec", [H, BS, GOLD], ids=["heisenberg", "bs12", "golden"])
def test_every_small_triple_matches(spec):
    n = 0
    for S in _triples(spec, 2):
        form = match_triple_form(spec, S)
        assert form is not None and validate_form(spec, S, form)
        n += 1
    assert n > 0


# ---- membership ----------------------------------------------------------


def test_membership_examples():
    w = bounded_membership(Z, (5,), [(2,), (3,)], 3)
    assert w is not None and evaluate_word(Z, [(2,), (3,)], w) == (5,)
    w = bounded_membership(H, (0, 0, 1), [(1, 0, 0), (0, 1, 0)], 4)
    assert evaluate_word(H, [(1, 0, 0), (0, 1, 0)], w) == (0, 0, 1)
    assert bounded_membership(F2, (1, 2, 1), [(1,)], 10) is None
    assert bounded_membership(Z, (0,), [(2,)], 1) == ()
    with pytest.raises(PreconditionError):
        bounded_membership(Z, (1,), [(1,)], 0)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=4))
def test_membership_finds_short_words(word):
    gens = [(1, 0, 0), (0, 1, 0)]
    x = evaluate_word(H, gens, tuple(word))
    w = bounded_membership(H, x, gens, 4)
    assert w is not None and len(w) <= len(word)
    assert evaluate_word(H, gens, w) == x


# ---- laws ----------------------------------------------------------------


def test_law_value_matches_oracle():
    a, b = (1,), (2,)
    args = [a, b, F2.mul(a, b), b]
    for law, n in (("Abelian", 2), ("Class2", 3), ("Metabelian", 4)):
        assert law_value(F2, law, args[:n]) == _law_oracle(F2, law, args[:n])


def test_free_group_violates_metabelian():
    rep = law_check(F2, [(1,), (2,)], "Metabelian", 4, 1000, seed=0)
    assert not rep.holds and rep.evidence_level == "exact"
    assert _law_oracle(F2, "Metabelian", rep.first_violation) != ()


def test_heisenberg_class2_holds():
    rep = law_check(H, [(1, 0, 0), (0, 1, 0)], "Class2", 4, 500, seed=1)
    assert rep.holds and rep.exhaustive_length == 2 and rep.first_violation is None


def test_heisenberg_not_abelian():
    rep = law_check(H, [(1, 0, 0), (0, 1, 0)], "Abelian", 3, 10)
    assert not rep.holds
    assert _law_oracle(H, "Abelian", rep.first_violation) != H.identity()


def test_law_check_seeded_and_reproducible():
    gens = [(1, 0, 0), (0, 0, 1)]
    r1 = law_check(BS, gens, "Metabelian", 6, 300, seed=7)
    r2 = law_check(BS, gens, "Metabelian", 6, 300, seed=7)
    assert r1 == r2 and r1.holds and r1.samples_checked == 300


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=1, max_size=3))
def test_commuting_generators_hold_exhaustively(gens):
    Z2 = IntegerLattice(2)
    rep = law_check(Z2, gens, "Abelian", 3, 5)
    assert rep.holds and rep.exhaustive_length >= 2
