from itertools import combinations

import pytest

from morseres.complexes import LabeledComplex, SimplicialComplex, l2, n2_pairs, taylor
from morseres.extremal import power_generators, single_relation
from morseres.monomials import MonomialIdeal, VariableSet


def test_n2_pairs_order():
    assert n2_pairs(3) == ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3))
    assert len(n2_pairs(5)) == 15


def test_taylor_f_vectors():
    assert taylor(4).f_vector() == (1, 4, 6, 4, 1)
    assert taylor(1).facets == (taylor(1).mask([1]),)
    assert sum(1 for _ in taylor(3).faces(include_empty=True)) == 8
    for q in range(1, 7):
        assert sum(taylor(q).f_vector()) == 2**q


def test_l2_facets():
    cx = l2(4)
    facets = {cx.members(f) for f in cx.facets}
    block = tuple((i, j) for i in range(1, 5) for j in range(i + 1, 5))
    assert block in facets
    assert len(facets) == 5
    sizes = sorted(len(f) for f in facets)
    assert sizes == [4, 4, 4, 4, 6]


def test_l2_small_q():
    cx2 = l2(2)
    assert {cx2.members(f) for f in cx2.facets} == {
        ((1, 1), (1, 2)),
        ((1, 2), (2, 2)),
    }
    assert cx2.is_face([(1, 2)])
    cx1 = l2(1)
    assert [cx1.members(f) for f in cx1.facets] == [((1, 1),)]


def test_is_face_examples():
    cx = l2(4)
    assert cx.is_face([(1, 2), (1, 3), (2, 3)])
    assert not cx.is_face([(1, 1), (2, 3)])
    assert cx.is_face([])


def test_l2_face_counts_against_brute_force():
    # independent enumeration: subsets of the vertex list contained in a
    # literal facet list
    verts = n2_pairs(3)
    facets = [
        {(1, 2), (1, 3), (2, 3)},
        {(1, 1), (1, 2), (1, 3)},
        {(1, 2), (2, 2), (2, 3)},
        {(1, 3), (2, 3), (3, 3)},
    ]
    brute = set()
    for k in range(1, len(verts) + 1):
        for combo in combinations(verts, k):
            if any(set(combo) <= f for f in facets):
                brute.add(frozenset(combo))
    assert len(brute) == 19
    cx = l2(3)
    mine = {frozenset(cx.members(f)) for f in cx.faces()}
    assert mine == brute
    assert cx.f_vector() == (1, 6, 9, 4)


def test_l2_4_f_vector_and_face_count():
    cx = l2(4)
    assert cx.f_vector() == (1, 10, 27, 32, 19, 6, 1)
    assert sum(1 for _ in cx.faces()) == 95


def test_l2_5_vertex_count():
    assert l2(5).f_vector()[1] == 15


def test_l2_dimension_and_star_block_overlap():
    for q in range(3, 7):
        cx = l2(q)
        assert cx.dim == q * (q - 1) // 2 - 1
        block = cx.mask([(i, j) for i in range(1, q + 1) for j in range(i + 1, q + 1)])
        for i in range(1, q + 1):
            star = cx.mask([(min(i, j), max(i, j)) for j in range(1, q + 1)])
            overlap = cx.members(star & block)
            assert set(overlap) == {(min(i, j), max(i, j)) for j in range(1, q + 1) if j != i}


def test_facet_antichain_normalization():
    cx = SimplicialComplex("abc", ["ab", "a", "abc", "bc"])
    assert [cx.members(f) for f in cx.facets] == [("a", "b", "c")]


def test_faces_deterministic_and_deduplicated():
    cx = l2(3)
    listed = list(cx.faces())
    assert listed == sorted(set(listed), key=lambda x: (x.bit_count(), x))
    assert list(cx.faces(card=2)) == [f for f in listed if f.bit_count() == 2]


def test_label_union_property():
    square = power_generators(3, single_relation(3), 2)
    cx = l2(3)
    labels = LabeledComplex(cx, square)
    faces = list(cx.faces(include_empty=True))
    for a in faces:
        for b in faces:
            if cx.is_face(a | b):
                assert labels.label(a | b) == labels.label(a).lcm(labels.label(b))


def test_labeled_complex_needs_one_generator_per_vertex():
    ring = VariableSet("ab")
    with pytest.raises(ValueError):
        LabeledComplex(l2(3), MonomialIdeal(ring, [ring.parse("a")]))
