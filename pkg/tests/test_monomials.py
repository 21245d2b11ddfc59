import pytest
from hypothesis import given, settings, strategies as st

from morseres.errors import RingMismatchError
from morseres.monomials import (
    Monomial,
    MonomialIdeal,
    VariableSet,
    degree_vectors,
    divides,
    lcm_of,
    level_masks,
    mask_divides,
    mask_lcm,
)

RING = VariableSet("abcdefg")


def m(text):
    return RING.parse(text)


def test_lcm_empty_is_one():
    assert lcm_of([], ring=RING) == RING.one()
    with pytest.raises(ValueError):
        lcm_of([])


def test_lcm_examples():
    assert lcm_of([m("ab"), m("bcd")]) == m("abcd")
    assert lcm_of([m("a^2"), m("ab")]) == m("a^2b")


def test_divides_examples():
    assert divides(RING.one(), m("a^3bc"))
    assert divides(m("ab"), lcm_of([m("bcd"), m("aef")]))
    assert not divides(m("a^2"), m("a"))


def test_product_examples():
    assert m("ab") * RING.one() == m("ab")
    assert m("ab") * m("ab") == m("a^2b^2")


def test_ring_mismatch_raises():
    other = VariableSet("xy")
    with pytest.raises(RingMismatchError):
        m("a").lcm(other.parse("x"))
    with pytest.raises(RingMismatchError):
        m("a").divides(other.parse("x"))
    with pytest.raises(RingMismatchError):
        m("a") * other.parse("x")


def test_parse_greedy_multicharacter_names():
    ring = VariableSet(["y_{2}", "y_{12}", "y_{123}"])
    mono = ring.parse("y_{123}y_{12}^2y_{2}")
    assert mono.exponents == (1, 2, 1)
    assert ring.parse(str(mono)) == mono


def test_parse_rejects_unknown():
    with pytest.raises(ValueError):
        RING.parse("abz")


def test_str_round_trip():
    mono = m("a^2bde^3")
    assert str(mono) == "a^2bde^3"
    assert RING.parse(str(mono)) == mono
    assert str(RING.one()) == "1"


def test_variable_set_rejects_duplicates():
    with pytest.raises(ValueError):
        VariableSet(["a", "a"])


exponents = st.lists(st.integers(min_value=0, max_value=3), min_size=7, max_size=7)


def as_mono(exps):
    return Monomial(RING, exps)


@settings(max_examples=60, deadline=None)
@given(exponents, exponents, exponents)
def test_lcm_laws(e1, e2, e3):
    a, b, c = as_mono(e1), as_mono(e2), as_mono(e3)
    assert a.lcm(a) == a
    assert a.lcm(b) == b.lcm(a)
    assert a.lcm(b).lcm(c) == a.lcm(b.lcm(c))
    assert a.divides(a.lcm(b))


@settings(max_examples=60, deadline=None)
@given(exponents, exponents)
def test_divides_antisymmetry(e1, e2):
    a, b = as_mono(e1), as_mono(e2)
    if a.divides(b) and b.divides(a):
        assert a == b


@settings(max_examples=60, deadline=None)
@given(exponents, exponents)
def test_product_squarefree_needs_disjoint_supports(e1, e2):
    a, b = as_mono(e1), as_mono(e2)
    if (a * b).is_squarefree:
        assert a.is_squarefree and b.is_squarefree
        assert not (a.support & b.support)


def test_degree_vectors_match_pair_order():
    vecs = degree_vectors(3, 2)
    assert vecs == (
        (2, 0, 0),
        (1, 1, 0),
        (1, 0, 1),
        (0, 2, 0),
        (0, 1, 1),
        (0, 0, 2),
    )
    assert len(degree_vectors(4, 2)) == 10
    assert degree_vectors(4, 1) == ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def test_ideal_minimalize_divisibility():
    ideal = MonomialIdeal(RING, [m("ab"), m("abc"), m("cd")])
    assert not ideal.is_minimal
    assert ideal.minimalize().generators == (m("ab"), m("cd"))


def test_ideal_minimalize_keeps_first_duplicate():
    ideal = MonomialIdeal(RING, [m("ab"), m("ab"), m("c")])
    assert ideal.minimalize().generators == (m("ab"), m("c"))


def test_ideal_power_order():
    ideal = MonomialIdeal(RING, [m("a"), m("b"), m("c")])
    sq = ideal.power(2)
    assert [str(g) for g in sq.generators] == ["a^2", "ab", "ac", "b^2", "bc", "c^2"]


def test_ideal_json_round_trip(tmp_path):
    ideal = MonomialIdeal(RING, [m("ab"), m("bcd"), m("aef"), m("cg")])
    path = tmp_path / "ideal.json"
    ideal.save(path)
    loaded = MonomialIdeal.load(path)
    assert loaded == ideal
    assert loaded.to_dict()["schema"] == 1
    assert loaded.to_dict()["generators"] == ["ab", "bcd", "aef", "cg"]


def test_level_masks_agree_with_monomials():
    ms = [m("a^2b"), m("bc"), m("ac^2d")]
    height, packed = level_masks(ms)
    assert height == 2
    for i, a in enumerate(ms):
        for j, b in enumerate(ms):
            assert mask_divides(packed[i], packed[j]) == a.divides(b)
            joined = mask_lcm(packed[i], packed[j])
            exps = tuple(
                sum(lv >> v & 1 for lv in joined) for v in range(len(RING))
            )
            assert exps == a.lcm(b).exponents
