import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from satake.errors import WeightError
from satake.rootdata import build_root_datum, dominant_weights
from satake.weyl import affine_weyl_group


def group(label, lattice="coweight"):
    return affine_weyl_group(build_root_datum(label, lattice))


def subword_ideal(g, y):
    """Everything below y by the subword property of one reduced word."""
    word, omega = g.reduced_word(y)
    out = set()
    for mask in product((0, 1), repeat=len(word)):
        out.add(g.from_word([s for s, m in zip(word, mask) if m], omega))
    return out


def test_identity_and_involutions():
    g = group("A2")
    for s in g.simple:
        assert g.multiply(s, s) == g.identity
        assert s.length == 1
        assert g.multiply(s, g.identity) == s


def test_a1_translation_by_coroot():
    g = group("A1", "coroot")
    t = g.translation((2,))
    assert g.from_word([0, 1]) == t
    assert t.length == 2


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_dominant_translation_length(label):
    g = group(label)
    for lam in dominant_weights(g.datum, 8):
        assert g.translation(lam).length == g.datum.weight_h(lam)


def test_max_coset_rep_examples():
    assert group("A2").max_coset_rep((0, 0)) == group("A2").longest_finite()
    assert group("A1", "coroot").max_coset_rep((2,)).length == 3
    assert group("A2").max_coset_rep((1, 1)).length == 7
    with pytest.raises(WeightError):
        group("A2").max_coset_rep((1, -1))


@pytest.mark.parametrize("label", ["A1", "A2", "C2", "G2"])
def test_max_coset_rep_lengths(label):
    g = group(label)
    n = g.finite_length[g.w0]
    for lam in dominant_weights(g.datum, 6):
        assert g.max_coset_rep(lam).length == g.datum.weight_h(lam) + n


def test_a1_bruhat_is_graded_by_length():
    g = group("A1", "coroot")
    elems = g.elements_up_to(8)
    for x in elems:
        for y in elems:
            if y.length == x.length + 1:
                assert g.bruhat_leq(x, y)


@pytest.mark.parametrize("label,top", [("A1", 7), ("A2", 5), ("B2", 5)])
def test_bruhat_matches_subwords(label, top):
    g = group(label)
    elems = g.elements_up_to(top)
    for y in elems:
        below = subword_ideal(g, y)
        assert set(g.lower_ideal(y)) == below
        for x in elems:
            assert g.bruhat_leq(x, y) == (x in below)


def test_distinct_components_incomparable():
    g = group("A2")
    omegas = g.length_zero_elements()
    assert len(omegas) == 3
    a, b = omegas[1], omegas[2]
    x = g.multiply(g.simple[1], a)
    y = g.multiply(g.multiply(g.simple[0], g.simple[2]), b)
    assert not g.bruhat_leq(x, y) and not g.bruhat_leq(y, x)


@pytest.mark.parametrize("label", ["A1", "A2", "C2"])
def test_dominance_implies_bruhat(label):
    g = group(label)
    weights = dominant_weights(g.datum, 6)
    sysv = g.system
    for lam in weights:
        for mu in weights:
            if sysv.dominance_leq(mu, lam) and sysv.component(mu) == sysv.component(lam):
                assert g.bruhat_leq(g.max_coset_rep(mu), g.max_coset_rep(lam))


def test_serialization_round_trip():
    g = group("G2")
    for x in g.elements_up_to(4):
        assert g.deserialize(g.serialize(x)) == x


words = st.lists(st.integers(0, 2), max_size=10)


@given(words, words, words)
def test_associativity_and_subadditivity(a, b, c):
    g = group("A2")
    x, y, z = g.from_word(a), g.from_word(b), g.from_word(c)
    assert g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z))
    assert g.multiply(x, y).length <= x.length + y.length
    assert g.multiply(x, g.inverse(x)) == g.identity


@given(st.sampled_from(["A2", "C2", "G2"]), st.lists(st.integers(0, 2), max_size=10))
def test_length_changes_by_one(label, word):
    g = group(label)
    x = g.from_word(word)
    for s in g.simple:
        assert abs(g.multiply(x, s).length - x.length) == 1
        assert abs(g.multiply(s, x).length - x.length) == 1


@given(st.lists(st.integers(0, 2), max_size=10))
def test_reduced_word_and_exchange(word):
    g = group("A2")
    x = g.from_word(word)
    red, omega = g.reduced_word(x)
    assert len(red) == x.length and g.from_word(red, omega) == x
    for i in g.left_descents(x):
        # exchange: dropping one letter of a reduced word gives s_i x
        target = g.multiply(g.simple[i], x)
        assert any(g.from_word(red[:k] + red[k + 1:], omega) == target for k in range(len(red)))
