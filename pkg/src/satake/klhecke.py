"""Kazhdan-Lusztig polynomials and the affine Hecke algebra.

Normalization: ``(T_s - t)(T_s + t^-1) = 0`` and the canonical basis is

    c_w = sum_{x <= w} t^(l(x) - l(w)) P_{x,w}(t^2) T_x,

so ``c_s = T_s + t^-1`` and ``c_s c_s = (t + t^-1) c_s``.  KL polynomials are
in the variable ``q = t^2``.  Length-zero elements ``omega`` satisfy
``T_x T_omega = T_{x omega}``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ResourceBudgetError, WeightError
from .polys import IntPoly, ONE, ZERO
from .rootdata import RootDatum
from .weyl import AffineElt, AffineWeylGroup, affine_weyl_group

T_MINUS_TINV = IntPoly({1: 1, -1: -1})


class KLEngine:
    """Memoized KL recursion on one (extended) affine Weyl group.

    ``store`` (optional) seeds the memo from ``store.items(group)`` and is
    notified of every new polynomial via ``store.record(group, x, y, poly)``;
    see :mod:`satake.cache`.
    """

    def __init__(self, group: AffineWeylGroup, store=None):
        self.group = group
        self.memo: Dict[Tuple[AffineElt, AffineElt], IntPoly] = {}
        self._mu: Dict[AffineElt, List[Tuple[AffineElt, int]]] = {}
        self._lock = threading.Lock()
        self.store = store
        if store is not None:
            for xk, yk, poly in store.items(group):
                self.memo[(group.deserialize(xk), group.deserialize(yk))] = poly

    def defined(self, x: AffineElt, y: AffineElt) -> bool:
        """True when P_{x,y} is a genuine KL polynomial (x <= y)."""
        return self.group.bruhat_leq(x, y)

    def P(self, x: AffineElt, y: AffineElt) -> IntPoly:
        got = self.memo.get((x, y))
        if got is not None:
            return got
        g = self.group
        if not g.bruhat_leq(x, y):
            return ZERO
        if x == y:
            res = ONE
        else:
            si = g.left_descents(y)[0]
            s = g.simple[si]
            sx = g.multiply(s, x)
            if g.length(sx) > g.length(x):
                res = self.P(sx, y)
            else:
                v = g.multiply(s, y)
                res = self.P(sx, v) + self.P(x, v).shift(1)
                ly = g.length(y)
                for z, m in self.mu_list(v):
                    if g.length(g.multiply(s, z)) < g.length(z) and g.bruhat_leq(x, z):
                        res = res - self.P(x, z).shift((ly - g.length(z)) // 2) * m
        self._put(x, y, res)
        return res

    def _put(self, x, y, res):
        with self._lock:
            if (x, y) not in self.memo:
                self.memo[(x, y)] = res
                if self.store is not None:
                    self.store.record(self.group, x, y, res)

    def mu(self, z: AffineElt, v: AffineElt) -> int:
        """Top coefficient mu(z, v) (coefficient of q^((l(v)-l(z)-1)/2))."""
        d = self.group.length(v) - self.group.length(z)
        if d <= 0 or d % 2 == 0:
            return 0
        return self.P(z, v).coeff((d - 1) // 2)

    def mu_list(self, v: AffineElt) -> List[Tuple[AffineElt, int]]:
        got = self._mu.get(v)
        if got is None:
            g = self.group
            got = []
            for z in sorted(g.lower_ideal(v), key=g.sort_key):
                if z != v:
                    m = self.mu(z, v)
                    if m:
                        got.append((z, m))
            self._mu[v] = got
        return got

    def column(self, y: AffineElt) -> Dict[AffineElt, IntPoly]:
        """All P_{x,y}, x <= y."""
        g = self.group
        return {x: self.P(x, y) for x in sorted(g.lower_ideal(y), key=g.sort_key)}


_ENGINES: Dict[RootDatum, KLEngine] = {}
_ENGINES_LOCK = threading.Lock()


def kl_engine(datum: RootDatum, store=None) -> KLEngine:
    """Shared engine per datum; the first caller may attach a cache store."""
    with _ENGINES_LOCK:
        eng = _ENGINES.get(datum)
        if eng is None or (store is not None and eng.store is not store):
            eng = _ENGINES[datum] = KLEngine(affine_weyl_group(datum), store)
        return eng


def reset_engines() -> None:
    with _ENGINES_LOCK:
        _ENGINES.clear()


def kl_polynomial(x: AffineElt, y: AffineElt, engine: Optional[KLEngine] = None) -> IntPoly:
    """P_{x,y}; the zero polynomial when x is not below y (incl. other components)."""
    if x.group is not y.group:
        raise ValueError("elements from different root data")
    eng = engine or kl_engine(x.group.datum)
    return eng.P(x, y)


# --------------------------------------------------------------------------
# Hecke algebra

@dataclass
class HeckeExpr:
    """Finite combination ``sum coeff[x] * B_x`` with B = T (standard) or c (canonical)."""

    group: AffineWeylGroup
    basis: str
    coeff: Dict[AffineElt, IntPoly] = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in ("T", "c"):
            raise ValueError("basis must be 'T' or 'c'")
        self.coeff = {x: p for x, p in self.coeff.items() if p}

    def items(self):
        g = self.group
        return sorted(self.coeff.items(), key=lambda kv: g.sort_key(kv[0]))

    def __eq__(self, other):
        return (isinstance(other, HeckeExpr) and self.basis == other.basis
                and self.coeff == other.coeff)

    def __add__(self, other: "HeckeExpr") -> "HeckeExpr":
        assert self.basis == other.basis
        out = dict(self.coeff)
        for x, p in other.coeff.items():
            out[x] = out.get(x, ZERO) + p
        return HeckeExpr(self.group, self.basis, out)

    def scale(self, p: IntPoly) -> "HeckeExpr":
        return HeckeExpr(self.group, self.basis, {x: c * p for x, c in self.coeff.items()})

    def __len__(self):
        return len(self.coeff)


class HeckeAlgebra:
    def __init__(self, engine: KLEngine, max_terms: int = 200_000):
        self.engine = engine
        self.group = engine.group
        self.max_terms = max_terms
        self._c_in_T: Dict[AffineElt, Dict[AffineElt, IntPoly]] = {}

    # basic elements
    def T(self, x: AffineElt) -> HeckeExpr:
        return HeckeExpr(self.group, "T", {x: ONE})

    def c(self, x: AffineElt) -> HeckeExpr:
        return HeckeExpr(self.group, "c", {x: ONE})

    def canonical_in_T(self, x: AffineElt) -> Dict[AffineElt, IntPoly]:
        got = self._c_in_T.get(x)
        if got is None:
            g = self.group
            lx = g.length(x)
            got = {}
            for z, p in self.engine.column(x).items():
                got[z] = p.substitute_power(2).shift(g.length(z) - lx)
            self._c_in_T[x] = got
        return got

    def to_T(self, h: HeckeExpr) -> HeckeExpr:
        if h.basis == "T":
            return h
        out: Dict[AffineElt, IntPoly] = {}
        for x, a in h.coeff.items():
            for z, p in self.canonical_in_T(x).items():
                out[z] = out.get(z, ZERO) + a * p
        return HeckeExpr(self.group, "T", out)

    def to_c(self, h: HeckeExpr) -> HeckeExpr:
        """Triangular re-expansion of a T-basis element in the canonical basis."""
        if h.basis == "c":
            return h
        g = self.group
        rem = {x: p for x, p in h.coeff.items() if p}
        out: Dict[AffineElt, IntPoly] = {}
        while rem:
            x = max(rem, key=g.sort_key)
            a = rem[x]
            out[x] = a
            for z, p in self.canonical_in_T(x).items():
                v = rem.get(z, ZERO) - a * p
                if v:
                    rem[z] = v
                else:
                    rem.pop(z, None)
        return HeckeExpr(g, "c", out)

    # multiplication in the T basis
    def _right_T_s(self, expr: Dict[AffineElt, IntPoly], i: int) -> Dict[AffineElt, IntPoly]:
        g = self.group
        s = g.simple[i]
        out: Dict[AffineElt, IntPoly] = {}
        for z, a in expr.items():
            zs = g.multiply(z, s)
            out[zs] = out.get(zs, ZERO) + a
            if g.length(zs) < g.length(z):
                out[z] = out.get(z, ZERO) + a * T_MINUS_TINV
        return {z: a for z, a in out.items() if a}

    def _right_T_omega(self, expr, omega):
        g = self.group
        return {g.multiply(z, omega): a for z, a in expr.items()}

    def _right_T(self, expr, y: AffineElt):
        word, omega = self.group.reduced_word(y)
        for i in word:
            expr = self._right_T_s(expr, i)
            self._check(expr)
        return self._right_T_omega(expr, omega)

    def _check(self, expr):
        if len(expr) > self.max_terms:
            raise ResourceBudgetError(
                f"Hecke expression exceeded {self.max_terms} terms; raise the budget or shrink the weights")

    def multiply(self, a: HeckeExpr, b: HeckeExpr) -> HeckeExpr:
        """Product, returned in the basis of ``a``."""
        basis = a.basis
        A = self.to_T(a).coeff
        B = self.to_T(b)
        g = self.group
        # R[y] = A * T_y built along right descents through the lower ideal
        R: Dict[AffineElt, Dict[AffineElt, IntPoly]] = {}

        def right_times(y):
            got = R.get(y)
            if got is not None:
                return got
            d = g.right_descents(y)
            if not d:
                got = self._right_T_omega(A, y)
            else:
                ys = g.multiply(y, g.simple[d[0]])
                got = self._right_T_s(right_times(ys), d[0])
                self._check(got)
            R[y] = got
            return got

        out: Dict[AffineElt, IntPoly] = {}
        for y, coef in sorted(B.coeff.items(), key=lambda kv: g.sort_key(kv[0])):
            for z, p in right_times(y).items():
                out[z] = out.get(z, ZERO) + p * coef
        prod = HeckeExpr(g, "T", out)
        return self.to_c(prod) if basis == "c" else prod

    def bar(self, h: HeckeExpr) -> HeckeExpr:
        """Bar involution on a T-basis element: t -> t^-1, T_x -> T_{x^-1}^{-1}."""
        h = self.to_T(h)
        out = HeckeExpr(self.group, "T", {})
        for x, a in h.coeff.items():
            out = out + self._T_inv_inverse(x).scale(a.bar())
        return out

    def _T_inv_inverse(self, x: AffineElt) -> HeckeExpr:
        # T_{x^-1}^{-1} = T_omega^{-1}... written as the product of T_s^{-1}
        # along the reduced word of x, with T_s^{-1} = T_s - (t - t^-1).
        g = self.group
        word, omega = g.reduced_word(x)
        expr = {g.identity: ONE}
        for i in word:
            shifted = self._right_T_s(expr, i)
            for z, a in expr.items():
                shifted[z] = shifted.get(z, ZERO) - a * T_MINUS_TINV
            expr = {z: a for z, a in shifted.items() if a}
        return HeckeExpr(g, "T", self._right_T_omega(expr, omega))


def hecke_product_canonical(x: AffineElt, y: AffineElt, algebra: Optional[HeckeAlgebra] = None) -> HeckeExpr:
    """c_x * c_y expanded in the canonical basis."""
    alg = algebra or HeckeAlgebra(kl_engine(x.group.datum))
    return alg.multiply(alg.c(x), alg.c(y))


def weyl_poincare(group: AffineWeylGroup) -> IntPoly:
    """pi_W(t) = sum_{w in W} t^(2 l(w) - l(w_0)); c_{w_0}^2 = pi_W c_{w_0}."""
    n = group.finite_length[group.w0]
    return IntPoly([(2 * l - n, 1) for l in group.finite_length])


@dataclass
class SatakeReport:
    datum: str
    lam: Tuple[int, ...]
    mu: Tuple[int, ...]
    hecke_constants: Dict[Tuple[int, ...], IntPoly]
    tensor_multiplicities: Dict[Tuple[int, ...], int]
    normalization: IntPoly
    complete: bool = True
    notes: List[str] = field(default_factory=list)

    @property
    def parameter_free(self) -> bool:
        return all(p.is_constant() and p.nonnegative() for p in self.hecke_constants.values())

    @property
    def agree(self) -> bool:
        return ({nu: p.coeff(0) for nu, p in self.hecke_constants.items()}
                == self.tensor_multiplicities)

    @property
    def verdict(self) -> str:
        if not self.complete:
            return "INCOMPLETE"
        return "PASS" if (self.parameter_free and self.agree) else "FAIL"

    def to_json(self) -> dict:
        return {
            "datum": self.datum,
            "lambda": list(self.lam),
            "mu": list(self.mu),
            "normalization": self.normalization.to_json(),
            "hecke_constants": {_wkey(nu): p.to_json() for nu, p in sorted(self.hecke_constants.items())},
            "tensor_multiplicities": {_wkey(nu): m for nu, m in sorted(self.tensor_multiplicities.items())},
            "verdicts": {"parameter_free": self.parameter_free, "agree": self.agree,
                         "overall": self.verdict},
            "notes": list(self.notes),
        }


def _wkey(v) -> str:
    return ",".join(str(a) for a in v)


def coset_weight(group: AffineWeylGroup, x: AffineElt) -> Optional[Tuple[int, ...]]:
    """nu with x == w(nu), or None if x is not a maximal double-coset element."""
    nu, _ = group.system.dominant_rep(x.lam)
    try:
        return nu if group.max_coset_rep(nu) == x else None
    except WeightError:
        return None


def spherical_product(lam, mu, datum: RootDatum, algebra: Optional[HeckeAlgebra] = None):
    """(c_{w(lam)} c_{w(mu)} / pi_W) in the canonical basis, plus pi_W.

    Exact division by pi_W is asserted; a remainder raises ArithmeticError.
    """
    alg = algebra or HeckeAlgebra(kl_engine(datum))
    g = alg.group
    prod = hecke_product_canonical(g.max_coset_rep(lam), g.max_coset_rep(mu), alg)
    pi = weyl_poincare(g)
    return {x: p.divmod_exact(pi) for x, p in prod.coeff.items()}, pi


def satake_structure_check(datum: RootDatum, lam: Sequence[int], mu: Sequence[int],
                           max_terms: int = 200_000) -> SatakeReport:
    """Compare Hecke structure constants at w(lam), w(mu) with tensor multiplicities."""
    from .repbuild import tensor_decompose

    lam = datum.check_weight(lam)
    mu = datum.check_weight(mu)
    alg = HeckeAlgebra(kl_engine(datum), max_terms=max_terms)
    g = alg.group
    notes: List[str] = []
    try:
        quotient, pi = spherical_product(lam, mu, datum, alg)
    except ResourceBudgetError as exc:
        return SatakeReport(datum.label, lam, mu, {}, {}, weyl_poincare(g), complete=False,
                            notes=[str(exc)])
    consts: Dict[Tuple[int, ...], IntPoly] = {}
    for x, p in quotient.items():
        nu = coset_weight(g, x)
        if nu is None:
            notes.append(f"canonical-basis term {g.serialize(x)} is not of the form c_w(nu)")
            nu = ("?",) + tuple(x.lam)
        consts[nu] = p
    tensor = tensor_decompose(datum, lam, mu)
    return SatakeReport(datum.label, lam, mu, consts, dict(tensor), pi, notes=notes)
