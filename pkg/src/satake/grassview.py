"""Combinatorial shadow of the affine Grassmannian and the q-multiplicity verifier.

Strata ``O_lam`` are indexed by dominant coweights, have complex dimension
``lam(h)``, and closure order equal to dominance inside one connected component.
The q-analogue of weight multiplicity is computed three independent ways:

1. the principal-nilpotent filtration on V_lam(mu) (module :mod:`principal`);
2. Lusztig's alternating sum of the q-Kostant partition function;
3. affine KL polynomials at maximal double-coset representatives.

Route 3 needs a variable convention (see :func:`kl_convention`).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import WeightError
from .klhecke import kl_engine
from .polys import IntPoly, ONE, ZERO
from .principal import brylinski_poincare
from .repbuild import build_irrep, character, freudenthal_multiplicity
from .rootdata import RootDatum, RootSystem, Vec, build_root_datum, dominant_weights
from .weyl import affine_weyl_group


def _dominant(datum: RootDatum, lam) -> Vec:
    lam = datum.check_weight(lam)
    if not datum.dual_system.is_dominant(lam):
        raise WeightError(f"{lam} is not dominant")
    return lam


# --------------------------------------------------------------------------
# strata

@dataclass(frozen=True)
class StratumInfo:
    datum: RootDatum
    lam: Vec
    dim: int
    component: Tuple[Fraction, ...]

    def closure_contains(self, mu: Sequence[int]) -> bool:
        return closure_leq(self.datum, mu, self.lam)

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "dim": self.dim,
                "component": [str(c) for c in self.component]}


def stratum_info(datum: RootDatum, lam: Sequence[int]) -> StratumInfo:
    lam = _dominant(datum, lam)
    return StratumInfo(datum, lam, datum.weight_h(lam), datum.component(lam))


def closure_leq(datum: RootDatum, mu: Sequence[int], lam: Sequence[int]) -> bool:
    """O_mu lies in the closure of O_lam."""
    sysv = datum.dual_system
    return (sysv.component(mu) == sysv.component(lam)) and sysv.dominance_leq(mu, lam)


def coset_tag(datum: RootDatum, coset) -> Tuple[Fraction, ...]:
    """Accept either a fractional tag or an integer representative weight."""
    coset = tuple(coset)
    if all(isinstance(c, int) for c in coset):
        return datum.dual_system.component(coset)
    tag = tuple(Fraction(c) for c in coset)
    if tag not in datum.component_group:
        raise WeightError(f"{coset} is not a component of {datum.label} ({datum.lattice} lattice)")
    return tag


def minuscule_weight(datum: RootDatum, coset) -> Vec:
    """The dominance-minimal dominant weight mu_C of a coset, certified."""
    tag = coset_tag(datum, coset)
    sysv = datum.dual_system
    window = max(sysv.height_h(w) for w in sysv.fundamental_weights) + 2 * sysv.height_h(sysv.rho)
    cands = dominant_weights(datum.with_lattice("coweight"), window, component=tag)
    if not cands:
        raise WeightError(f"no dominant weight found in coset {tag}")
    minimal = [m for m in cands if all(sysv.dominance_leq(m, o) for o in cands)]
    if len(minimal) != 1:
        raise AssertionError(f"coset {tag} has no unique minimal dominant weight in the window")
    mu = minimal[0]
    # beyond the window: any dominant lam in the coset has lam(h) > window >= mu(h)
    # and lam - mu lies in the root lattice with nonnegative coordinates because
    # mu's root coordinates are bounded by those of every fundamental weight.
    if set(character(datum, mu)) != set(sysv.orbit(mu)):
        raise AssertionError(f"{mu} is not minuscule")
    return mu


# --------------------------------------------------------------------------
# q-Kostant partition function and Lusztig's q-analogue

@lru_cache(maxsize=None)
def _partition_table(system: RootSystem, i: int, beta: Vec) -> IntPoly:
    roots = system.positive_roots
    if all(b == 0 for b in beta):
        return ONE
    if i == len(roots) or any(b < 0 for b in beta):
        return ZERO
    alpha = roots[i]
    out = ZERO
    k = 0
    cur = beta
    while all(c >= 0 for c in cur):
        out = out + _partition_table(system, i + 1, cur).shift(k)
        k += 1
        cur = tuple(c - a for c, a in zip(cur, alpha))
    return out


def q_kostant_partition(datum: RootDatum, beta: Sequence[int]) -> IntPoly:
    """sum_k q^k #{ways to write beta as a sum of k positive roots of G^vee}.

    ``beta`` is in simple-root coordinates of G^vee.
    """
    beta = tuple(int(b) for b in beta)
    if len(beta) != datum.rank:
        raise WeightError(f"expected {datum.rank} coordinates, got {beta}")
    return _partition_table(datum.dual_system, 0, beta)


def lusztig_q_analog(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> IntPoly:
    """m_lam^mu(q) = sum_w sign(w) P_q(w(lam + rho) - (mu + rho))."""
    sysv = datum.dual_system
    lam = _dominant(datum, lam)
    mu = _dominant(datum, mu)
    rho = sysv.rho
    lr = tuple(a + b for a, b in zip(lam, rho))
    mr = tuple(a + b for a, b in zip(mu, rho))
    out = ZERO
    order, words, _ = sysv._weyl_bfs()
    for w in order:
        img = tuple(sum(w[i][j] * lr[j] for j in range(sysv.rank)) for i in range(sysv.rank))
        diff = sysv.root_coords(tuple(a - b for a, b in zip(img, mr)))
        if any(c.denominator != 1 for c in diff):
            continue
        sign = -1 if len(words[w]) % 2 else 1
        out = out + q_kostant_partition(datum, tuple(int(c) for c in diff)) * sign
    return out


# --------------------------------------------------------------------------
# KL convention calibration

CONVENTIONS = ("literal", "reversed")


def kl_to_stalk(P: IntPoly, lam_h: int, convention: str) -> IntPoly:
    """q^lam(h) * P(q^2) ("literal") or q^lam(h) * P(q^-2) ("reversed")."""
    if convention == "literal":
        return P.substitute_power(2).shift(lam_h)
    if convention == "reversed":
        return P.substitute_power(-2).shift(lam_h)
    raise ValueError(f"unknown convention {convention!r}")


_CONVENTION: Optional[str] = None
_CONV_LOCK = threading.Lock()


def kl_convention() -> str:
    """Calibrate once on (A2, theta, 0) against the filtration value q^2 + q^4."""
    global _CONVENTION
    with _CONV_LOCK:
        if _CONVENTION is None:
            _CONVENTION = calibrate()
        return _CONVENTION


def calibrate() -> str:
    datum = build_root_datum("A2")
    theta, zero = (1, 1), (0, 0)
    target = brylinski_poincare(build_irrep(datum, theta), zero).poincare
    g = affine_weyl_group(datum)
    P = kl_engine(datum).P(g.max_coset_rep(zero), g.max_coset_rep(theta))
    lam_h, mu_h = datum.weight_h(theta), datum.weight_h(zero)
    matches = [c for c in CONVENTIONS
               if kl_to_stalk(P, lam_h, c).shift(-mu_h) == target]
    if len(matches) != 1:
        raise AssertionError(f"calibration ambiguous or failed: {matches} for P = {P}")
    return matches[0]


@dataclass(frozen=True)
class StalkPoly:
    poly: IntPoly
    in_closure: bool
    convention: str
    kl: IntPoly

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "in_closure": self.in_closure,
                "convention_tag": self.convention, "kl": self.kl.to_json()}


def ic_stalk_poincare(datum: RootDatum, lam: Sequence[int], mu: Sequence[int],
                      convention: Optional[str] = None) -> StalkPoly:
    """Stalk polynomial q^lam(h) P_{mu,lam}(q^2) under the calibrated convention."""
    lam = _dominant(datum, lam)
    mu = _dominant(datum, mu)
    conv = convention or kl_convention()
    if not closure_leq(datum, mu, lam):
        return StalkPoly(ZERO, False, conv, ZERO)
    g = affine_weyl_group(datum)
    P = kl_engine(datum).P(g.max_coset_rep(mu), g.max_coset_rep(lam))
    return StalkPoly(kl_to_stalk(P, datum.weight_h(lam), conv), True, conv, P)


# --------------------------------------------------------------------------
# the three-route verifier

@dataclass
class QklReport:
    datum: str
    lam: Vec
    mu: Vec
    brylinski: IntPoly
    lusztig: IntPoly
    kl_derived: IntPoly
    kl_raw: IntPoly
    convention: str
    multiplicity: int
    in_closure: bool = True

    @property
    def verdicts(self) -> Dict[str, bool]:
        return {
            "brylinski=lusztig": self.brylinski == self.lusztig,
            "brylinski=kl": self.brylinski == self.kl_derived,
            "lusztig=kl": self.lusztig == self.kl_derived,
            "q=1 multiplicity": (self.brylinski(1) == self.lusztig(1) == self.kl_derived(1)
                                 == self.multiplicity),
            "nonnegative": all(p.nonnegative() for p in (self.brylinski, self.lusztig, self.kl_raw)),
        }

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        return {
            "datum": self.datum,
            "lambda": list(self.lam),
            "mu": list(self.mu),
            "convention_tag": self.convention,
            "polynomials": {
                "brylinski": self.brylinski.to_json(),
                "lusztig": self.lusztig.to_json(),
                "kl_derived": self.kl_derived.to_json(),
                "kl": self.kl_raw.to_json(),
            },
            "multiplicity": self.multiplicity,
            "verdicts": {**self.verdicts, "overall": "PASS" if self.passed else "FAIL"},
        }


def verify_qkl_theorem(datum: RootDatum, lam: Sequence[int], mu: Sequence[int],
                       budget: int = 400) -> QklReport:
    lam = _dominant(datum, lam)
    mu = _dominant(datum, mu)
    conv = kl_convention()
    irrep = build_irrep(datum, lam, budget)
    bry = brylinski_poincare(irrep, mu).poincare
    lus = lusztig_q_analog(datum, lam, mu).substitute_power(2)
    stalk = ic_stalk_poincare(datum, lam, mu, conv)
    kl_derived = stalk.poly.shift(-datum.weight_h(mu)) if stalk.in_closure else ZERO
    return QklReport(datum.label, lam, mu, bry, lus, kl_derived, stalk.kl, conv,
                     freudenthal_multiplicity(datum, lam, mu), stalk.in_closure)
