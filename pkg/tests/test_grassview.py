from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from satake.errors import WeightError
from satake.grassview import (closure_leq, ic_stalk_poincare, kl_convention, kl_to_stalk,
                              lusztig_q_analog, minuscule_weight, q_kostant_partition,
                              stratum_info, verify_qkl_theorem)
from satake.polys import IntPoly
from satake.repbuild import freudenthal_multiplicity
from satake.rootdata import build_root_datum, dominant_weights

A1, A2 = build_root_datum("A1"), build_root_datum("A2")


def brute_partition(datum, beta, max_parts=12):
    roots = datum.dual_system.positive_roots
    out = {}
    for k in range(0, max_parts + 1):
        for combo in combinations_with_replacement(roots, k):
            s = tuple(sum(c) for c in zip(*combo)) if combo else (0,) * datum.rank
            if s == tuple(beta):
                out[k] = out.get(k, 0) + 1
    return IntPoly(out)


def test_stratum_examples():
    s = stratum_info(A2, (0, 0))
    assert s.dim == 0 and not any(s.component)
    assert stratum_info(build_root_datum("A1", "coroot"), (2,)).dim == 2
    assert stratum_info(A2, (1, 1)).dim == 4
    with pytest.raises(WeightError):
        stratum_info(A2, (1, -1))


def test_closure_order():
    assert closure_leq(A2, (0, 0), (1, 1))
    assert not closure_leq(A2, (1, 0), (1, 1))     # different component
    assert closure_leq(A2, (0, 1), (2, 0))


def test_minuscule_examples():
    assert minuscule_weight(A2, (0, 0)) == (0, 0)
    assert minuscule_weight(A1, (Fraction(1, 2),)) == (1,)
    assert minuscule_weight(A2, (Fraction(2, 3), Fraction(1, 3))) == (1, 0)
    assert minuscule_weight(A2, (Fraction(1, 3), Fraction(2, 3))) == (0, 1)
    assert minuscule_weight(A2, (4, 0)) == (1, 0)     # representative weight accepted


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "C2", "G2"])
def test_minuscule_is_dominance_minimal(label):
    d = build_root_datum(label)
    sysv = d.dual_system
    for tag in d.component_group:
        mu = minuscule_weight(d, tag)
        for lam in dominant_weights(d, 12, component=tag):
            assert sysv.dominance_leq(mu, lam)


def test_stalk_examples():
    assert ic_stalk_poincare(A2, (2, 1), (2, 1)).poly == IntPoly.monomial(6)
    a1 = build_root_datum("A1", "coroot")
    for lam in range(0, 9, 2):
        for mu in range(0, lam + 1, 2):
            assert ic_stalk_poincare(a1, (lam,), (mu,)).poly == IntPoly.monomial(lam)
    s = ic_stalk_poincare(A2, (1, 1), (0, 0))
    assert s.poly == IntPoly({4: 1, 2: 1}) and s.convention == "reversed"
    out = ic_stalk_poincare(A2, (1, 1), (1, 0))
    assert not out.in_closure and out.poly.is_zero()


def test_calibration_selects_reversed():
    assert kl_convention() == "reversed"
    p = IntPoly({0: 1, 1: 1})
    assert kl_to_stalk(p, 4, "literal") == IntPoly({4: 1, 6: 1})
    assert kl_to_stalk(p, 4, "reversed") == IntPoly({4: 1, 2: 1})


def test_q_kostant_examples():
    assert q_kostant_partition(A2, (0, 0)) == 1
    assert q_kostant_partition(A2, (1, 1)) == IntPoly({1: 1, 2: 1})
    assert q_kostant_partition(A2, (-1, 0)).is_zero()


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_q_kostant_against_enumeration(label):
    d = build_root_datum(label)
    for a in range(4):
        for b in range(4):
            assert q_kostant_partition(d, (a, b)) == brute_partition(d, (a, b))


def test_lusztig_examples():
    assert lusztig_q_analog(A2, (2, 1), (2, 1)) == 1
    assert lusztig_q_analog(A2, (1, 1), (0, 0)) == IntPoly({1: 1, 2: 1})
    for lam in range(9):
        for mu in range(lam % 2, lam + 1, 2):
            assert lusztig_q_analog(A1, (lam,), (mu,)) == IntPoly.monomial((lam - mu) // 2)


def test_verify_examples():
    r = verify_qkl_theorem(A1, (4,), (2,))
    assert r.passed and r.brylinski == IntPoly.monomial(2)
    r = verify_qkl_theorem(A2, (1, 1), (0, 0))
    assert r.passed and r.brylinski == r.lusztig == r.kl_derived == IntPoly({2: 1, 4: 1})
    r = verify_qkl_theorem(A2, (2, 2), (2, 2))
    assert r.passed and r.brylinski == 1


def test_report_schema():
    blob = verify_qkl_theorem(A2, (1, 1), (0, 0)).to_json()
    assert {"datum", "lambda", "mu", "convention_tag", "polynomials", "verdicts"} <= set(blob)
    assert blob["polynomials"]["brylinski"] == {"2": 1, "4": 1}
    assert blob["verdicts"]["overall"] == "PASS"


@pytest.mark.parametrize("label,top", [("B2", 8), ("C2", 8), ("G2", 10), ("A3", 6)])
def test_three_routes_beyond_a2(label, top):
    d = build_root_datum(label)
    for lam in dominant_weights(d, top):
        for mu in dominant_weights(d, top):
            if closure_leq(d, mu, lam):
                r = verify_qkl_theorem(d, lam, mu)
                assert r.passed, r.to_json()


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "C2", "G2"])
def test_component_parity_coupling(label):
    d = build_root_datum(label)
    parity = {}
    for lam in dominant_weights(d, 14):
        parity.setdefault(d.component(lam), set()).add(d.weight_h(lam) % 2)
    assert all(len(v) == 1 for v in parity.values())


@pytest.mark.parametrize("label", ["A2", "C2", "G2"])
def test_closure_is_graded(label):
    d = build_root_datum(label)
    ws = dominant_weights(d, 12)
    for lam in ws:
        for mu in ws:
            if mu != lam and closure_leq(d, mu, lam):
                assert d.weight_h(mu) < d.weight_h(lam)


@given(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_lusztig_specializes_to_freudenthal(lam, mu):
    p = lusztig_q_analog(A2, lam, mu)
    assert p(1) == freudenthal_multiplicity(A2, lam, mu)
    assert p.is_zero() or p.nonnegative()
