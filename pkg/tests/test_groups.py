from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smalldoubling import (
    BaumslagSolitar12,
    DirectProduct,
    FamilyMismatchError,
    FreeGroup,
    GoldenSemidirect,
    Heisenberg,
    IntegerLattice,
    Ordering,
    UndecidedOrderError,
    commutator,
    compare,
    group_from_json,
    invert,
    multiply,
    power,
)
from smalldoubling.groups import golden_sign, phi_power

Z, Z2 = IntegerLattice(1), IntegerLattice(2)
F2 = FreeGroup(2)
H = Heisenberg()
BS = BaumslagSolitar12()
GOLD = GoldenSemidirect()
ZBS = DirectProduct(Z, BS)
ZF2 = DirectProduct(Z, F2)

small = st.integers(-6, 6)


def free_words(rank=2, max_len=6):
    letters = st.sampled_from([i for g in range(1, rank + 1) for i in (g, -g)])
    return st.lists(letters, max_size=max_len).map(_reduce)


def _reduce(letters):
    w = ()
    for x in letters:
        w = F2.mul(w, (x,))
    return w


def bs_elems():
    return st.tuples(small, st.integers(0, 3), st.integers(-3, 3)).map(
        lambda t: BS.from_pair(Fraction(t[0], 2 ** t[1]), t[2])
    )


FAMILIES = {
    "lattice": (Z2, st.tuples(small, small)),
    "free": (F2, free_words()),
    "heisenberg": (H, st.tuples(small, small, small)),
    "bs12": (BS, bs_elems()),
    "golden": (GOLD, st.tuples(small, small, st.integers(-3, 3))),
    "product": (ZBS, st.tuples(st.tuples(small), bs_elems())),
}


# ---- spec examples -------------------------------------------------------


def test_heisenberg_multiply_examples():
    assert multiply(H, (1, 0, 0), (0, 1, 0)) == (1, 1, 1)
    assert multiply(H, (0, 1, 0), (1, 0, 0)) == (1, 1, 0)


def test_bs_conjugation_doubles():
    c, b = (1, 0, 0), (0, 0, 1)
    assert BS.mul(BS.mul(BS.inv(b), c), b) == BS.from_pair(2, 0)


def test_golden_type_iv_relation():
    a, b = (1, 0, 0), (0, 0, 1)
    a_b = GOLD.conj(a, b)
    a_b2 = GOLD.conj(a, GOLD.mul(b, b))
    assert a_b2 == GOLD.mul(a, a_b) == (1, 1, 0)
    assert GOLD.commutes(a, a_b)


def test_invert_examples():
    assert invert(Z2, (2, -3)) == (-2, 3)
    assert invert(F2, (1, -2)) == (2, -1)
    x = BS.from_pair(1, 1)
    assert invert(BS, x) == BS.from_pair(Fraction(-2), -1)
    assert multiply(BS, x, invert(BS, x)) == BS.identity()


def test_compare_examples():
    assert compare(Z2, (0, 5), (1, -100)) is Ordering.LT
    assert compare(F2, (1,), (1, 2)) is Ordering.LT
    assert compare(GOLD, (-1, 1, 0), GOLD.identity()) is Ordering.GT


def test_power_examples():
    assert power(Z2, (1, 2), 3) == (3, 6)
    assert power(F2, (1,), 2) == (1, 1)
    assert power(BS, (1, 0, 0), 5) == (5, 0, 0)
    assert power(H, (1, 1, 0), 0) == H.identity()


def test_commutator_examples():
    assert commutator(H, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert commutator(Z2, (3, 1), (-2, 7)) == (0, 0)
    assert commutator(BS, (1, 0, 0), (0, 0, 1)) == (1, 0, 0)


def test_family_mismatch():
    with pytest.raises(FamilyMismatchError):
        multiply(H, (1, 0), (0, 1, 0))
    with pytest.raises(FamilyMismatchError):
        multiply(F2, (1, -1), ())


def test_magnus_cap_is_a_hard_error():
    tiny = FreeGroup(2, magnus_initial_degree=1, magnus_max_degree=1)
    # [g1, g2] agrees with the identity up to degree 1
    with pytest.raises(UndecidedOrderError):
        tiny.cmp(tiny.comm((1,), (2,)), ())


def test_golden_sign_exact():
    for u in range(-30, 31):
        for v in range(-30, 31):
            real = u + v * (1 + 5**0.5) / 2
            if abs(real) > 1e-9:
                assert golden_sign(u, v) == (1 if real > 0 else -1)
    assert golden_sign(0, 0) == 0


def test_phi_powers_are_units():
    for n in range(-10, 11):
        a, b = phi_power(n)
        c, d = phi_power(-n)
        # (a + b phi)(c + d phi) = 1 with phi^2 = phi + 1
        assert (a * c + b * d, a * d + b * c + b * d) == (1, 0)


def test_group_json_round_trip():
    for spec in (Z2, F2, H, BS, GOLD, ZBS, ZF2):
        assert group_from_json(spec.to_json()) == spec
    with pytest.raises(ValueError):
        group_from_json({"family": "klein"})


def test_product_depth_limit():
    g = Z
    for _ in range(4):
        g = DirectProduct(g, Z)
    with pytest.raises(ValueError):
        DirectProduct(g, Z)


# ---- properties ----------------------------------------------------------


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_group_axioms(name):
    spec, elems = FAMILIES[name]

    @given(elems, elems, elems)
    def check(a, b, c):
        e = spec.identity()
        assert spec.mul(spec.mul(a, b), c) == spec.mul(a, spec.mul(b, c))
        assert spec.mul(a, e) == a == spec.mul(e, a)
        assert spec.mul(a, spec.inv(a)) == e
        assert spec.element_from_json(spec.element_to_json(a)) == a

    check()


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_order_total_and_bi_invariant(name):
    spec, elems = FAMILIES[name]

    @given(elems, elems, elems, elems, elems)
    def check(a, b, c, x, y):
        ab, ba = spec.cmp(a, b), spec.cmp(b, a)
        assert ab == -ba
        assert (ab == 0) == (a == b)
        if spec.cmp(a, b) <= 0 and spec.cmp(b, c) <= 0:
            assert spec.cmp(a, c) <= 0
        if ab <= 0:
            assert spec.cmp(spec.mul(spec.mul(x, a), y), spec.mul(spec.mul(x, b), y)) <= 0

    check()


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_torsion_free(name):
    spec, elems = FAMILIES[name]

    @given(elems, st.integers(1, 6))
    def check(a, e):
        if a != spec.identity():
            assert spec.pow(a, e) != spec.identity()
            assert spec.pow(a, -e) == spec.inv(spec.pow(a, e))

    check()


def _magnus_oracle(word, degree):
    """Series of the word under g -> 1 + X_g as {monomial tuple: coeff}."""
    series = {(): 1}
    for letter in word:
        g = abs(letter)
        if letter > 0:
            factor = {(): 1, (g,): 1}
        else:
            factor = {(g,) * i: (-1) ** i for i in range(degree + 1)}
        nxt = {}
        for m1, c1 in series.items():
            for m2, c2 in factor.items():
                m = m1 + m2
                if len(m) <= degree:
                    nxt[m] = nxt.get(m, 0) + c1 * c2
        series = {m: c for m, c in nxt.items() if c}
    return series


def _oracle_cmp(a, b, degree=12):
    sa, sb = _magnus_oracle(a, degree), _magnus_oracle(b, degree)
    monos = sorted(set(sa) | set(sb), key=lambda m: (len(m), m))
    for m in monos:
        d = sa.get(m, 0) - sb.get(m, 0)
        if d:
            return 1 if d > 0 else -1
    return 0


@given(free_words(max_len=5), free_words(max_len=5))
def test_magnus_order_matches_oracle(a, b):
    assert F2.cmp(a, b) == _oracle_cmp(a, b)
    assert (F2.cmp(a, b) == 0) == (a == b)


def test_defining_relations():
    a, b, z = H.standard_generators()
    assert H.comm(a, b) == z
    assert H.commutes(z, a) and H.commutes(z, b)
    c, t = BS.standard_generators()
    assert BS.conj(c, t) == BS.mul(c, c)
    # Z x BS(1,2): a central, c^b = c^2
    za, zc, zb = ((1,), BS.identity()), ((0,), c), ((0,), t)
    assert ZBS.commutes(za, zc) and ZBS.commutes(za, zb)
    assert ZBS.conj(zc, zb) == ZBS.mul(zc, zc)
