import json
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from satake.errors import ResourceBudgetError, WeightError
from satake.linalg import determinant
from satake.repbuild import (build_irrep, char_product, character, freudenthal_multiplicity,
                             klimyk_decompose, positive_definite, tensor_decompose, weyl_dimension)
from satake.rootdata import build_root_datum, dominant_weights

A1, A2 = build_root_datum("A1"), build_root_datum("A2")


def sl3_tableaux_character(a, b):
    """Weights of SSYT of shape (a+b, b) in {1,2,3}: independent sl3 oracle."""
    out = {}
    rows = [a + b, b]
    top_rows = list(combinations_with_replacement((1, 2, 3), rows[0]))
    bottom_rows = list(combinations_with_replacement((1, 2, 3), rows[1]))
    for top in top_rows:
        for bot in bottom_rows:
            if all(bot[i] > top[i] for i in range(len(bot))):
                cells = top + bot
                n = [cells.count(k) for k in (1, 2, 3)]
                wt = (n[0] - n[1], n[1] - n[2])
                out[wt] = out.get(wt, 0) + 1
    return out


def test_freudenthal_examples():
    assert freudenthal_multiplicity(A2, (1, 1), (1, 1)) == 1
    assert freudenthal_multiplicity(A2, (1, 1), (0, 0)) == 2
    assert freudenthal_multiplicity(A1, (4,), (2,)) == 1
    assert freudenthal_multiplicity(A2, (1, 1), (3, 0)) == 0


def test_weyl_dimension_examples():
    assert weyl_dimension(A2, (0, 0)) == 1
    assert [weyl_dimension(A1, (n,)) for n in range(5)] == [1, 2, 3, 4, 5]
    assert weyl_dimension(A2, (1, 1)) == 8
    assert weyl_dimension(build_root_datum("G2"), (1, 0)) in (7, 14)
    g2 = build_root_datum("G2")
    assert sorted([weyl_dimension(g2, (1, 0)), weyl_dimension(g2, (0, 1))]) == [7, 14]


def test_character_examples():
    assert character(A2, (0, 0)) == {(0, 0): 1}
    assert character(A1, (2,)) == {(2,): 1, (0,): 1, (-2,): 1}
    ch = character(A2, (1, 1))
    assert ch[(0, 0)] == 2 and sum(1 for m in ch.values() if m == 1) == 6


@pytest.mark.parametrize("lam", [(a, b) for a in range(4) for b in range(4)])
def test_a2_characters_match_tableaux(lam):
    assert character(A2, lam) == sl3_tableaux_character(*lam)


def test_tensor_examples():
    assert tensor_decompose(A1, (1,), (1,)) == {(0,): 1, (2,): 1}
    assert tensor_decompose(A2, (2, 1), (0, 0)) == {(2, 1): 1}
    assert tensor_decompose(A2, (1, 1), (1, 1)) == {(0, 0): 1, (0, 3): 1, (1, 1): 2, (2, 2): 1, (3, 0): 1}


def test_tensor_budget():
    with pytest.raises(ResourceBudgetError):
        tensor_decompose(A2, (3, 3), (3, 3), budget=100)


def test_build_small_modules():
    v = build_irrep(A1, (1,))
    assert v.dim == 2 and v.e[0].dense() == [[0, 1], [0, 0]]
    triv = build_irrep(A1, (0,))
    assert triv.dim == 1 and all(op.is_zero() for op in triv.e + triv.f + triv.h)
    adj = build_irrep(A2, (1, 1))
    assert adj.dim == 8 and len(adj.weight_space((0, 0))) == 2


def test_budget_and_dominance_errors():
    with pytest.raises(ResourceBudgetError):
        build_irrep(A2, (6, 6), budget=50)
    with pytest.raises(WeightError):
        build_irrep(A2, (1, -1))


SMALL = [("A1", (3,)), ("A2", (2, 1)), ("B2", (1, 1)), ("C2", (2, 0)), ("G2", (1, 0)), ("G2", (0, 1)),
         ("A3", (1, 0, 1))]


@pytest.mark.parametrize("label,lam", SMALL)
def test_module_invariants(label, lam):
    d = build_root_datum(label)
    v = build_irrep(d, lam)
    v.check_relations()
    assert v.is_irreducible()
    assert v.dim == weyl_dimension(d, lam)
    for mu, idx in v.weight_spaces.items():
        assert len(idx) == freudenthal_multiplicity(d, lam, mu)
    grams = v.gram_matrices()
    for mu, gram in grams.items():
        assert gram == [list(r) for r in zip(*gram)]
        assert positive_definite(gram)
        assert determinant(gram) > 0


@pytest.mark.parametrize("label,lam", SMALL)
def test_weight_support(label, lam):
    d = build_root_datum(label)
    sysv = d.dual_system
    support = set(build_irrep(d, lam).weight_spaces)
    predicted = set()
    for mu in dominant_weights(d, d.weight_h(lam)):
        if sysv.dominance_leq(mu, lam) and sysv.in_root_lattice(tuple(a - b for a, b in zip(lam, mu))):
            predicted.update(sysv.orbit(mu))
    assert support == predicted


def test_json_export():
    v = build_irrep(A2, (1, 0))
    blob = json.loads(v.dumps())
    assert blob["format"] == "satake-irrep/1" and blob["dim"] == 3
    assert set(blob["generators"]) == {"e1", "e2", "f1", "f2", "h1", "h2"}
    # rebuild e1 from the export and compare
    e1 = {(i, j): Fraction(a) for i, j, a in blob["generators"]["e1"]}
    assert e1 == {k: c for k, c in v.e[0].flat().items()}


def test_lowest_vector_divided_powers():
    assert build_irrep(A1, (2,)).extremal_lowest_vector() == {2: Fraction(1, 2)}


dom2 = st.tuples(st.integers(0, 3), st.integers(0, 3))


@given(st.sampled_from(["A2", "B2", "C2", "G2"]), dom2, dom2)
def test_peeling_matches_klimyk(label, lam, mu):
    d = build_root_datum(label)
    if weyl_dimension(d, lam) * weyl_dimension(d, mu) > 3000:
        return
    dec = tensor_decompose(d, lam, mu)
    assert dec == klimyk_decompose(d, lam, mu)
    assert sum(m * weyl_dimension(d, nu) for nu, m in dec.items()) == weyl_dimension(d, lam) * weyl_dimension(d, mu)


@given(st.sampled_from(["A2", "B2", "G2"]), dom2, dom2)
def test_character_ring_homomorphism(label, lam, mu):
    d = build_root_datum(label)
    if weyl_dimension(d, lam) * weyl_dimension(d, mu) > 2000:
        return
    rhs = {}
    for nu, m in tensor_decompose(d, lam, mu).items():
        for wt, c in character(d, nu).items():
            rhs[wt] = rhs.get(wt, 0) + m * c
    assert char_product(character(d, lam), character(d, mu)) == rhs


@given(st.sampled_from(["A2", "B2", "C2", "G2"]), dom2)
def test_character_invariance_and_dimension(label, lam):
    d = build_root_datum(label)
    ch = character(d, lam)
    sysv = d.dual_system
    assert sum(ch.values()) == weyl_dimension(d, lam)
    for wt, m in ch.items():
        for i in range(2):
            assert ch[sysv.reflect(i, wt)] == m
