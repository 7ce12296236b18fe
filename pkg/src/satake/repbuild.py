"""Irreducible representations of G^vee with exact rational matrices.

The module ``V_lam`` is built inside the Verma module level by level.  At a
weight ``nu`` the spanning set is ``f_i b`` for basis vectors ``b`` one level
up, ordered lexicographically by monomial.  A vector of weight below ``lam``
vanishes in the irreducible quotient exactly when every ``e_j`` kills it, so
the map ``v -> (e_1 v, ..., e_r v)`` is injective on ``V_lam(nu)``; its kernel
on the spanning set is the radical of the Shapovalov form at that level.  The
basis is a greedy independent subset of the spanning monomials.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Mapping, Sequence, Tuple

from .errors import ResourceBudgetError, WeightError
from .linalg import Echelon, SparseOp, SVec, determinant, rank, vadd, vscale
from .rootdata import RootDatum, RootSystem, Vec

DEFAULT_BUDGET = 400


def _require_dominant(system: RootSystem, lam: Sequence[int]) -> Vec:
    lam = tuple(lam)
    if len(lam) != system.rank:
        raise WeightError(f"expected {system.rank} coordinates, got {lam}")
    if not system.is_dominant(lam):
        raise WeightError(f"{lam} is not dominant")
    return lam


# --------------------------------------------------------------------------
# characters

def weyl_dimension(datum: RootDatum, lam: Sequence[int]) -> int:
    sysv = datum.dual_system
    lam = _require_dominant(sysv, lam)
    num = den = 1
    for cv in sysv.positive_coroots:
        num *= sysv.pair(lam, cv) + sysv.pair(sysv.rho, cv)
        den *= sysv.pair(sysv.rho, cv)
    assert num % den == 0
    return num // den


def dominant_below(system: RootSystem, lam: Sequence[int]) -> List[Vec]:
    """Dominant mu <= lam, in decreasing order of height above mu."""
    lam = tuple(lam)
    x = system.root_coords(lam)
    bounds = [int(c) if c >= 0 else -1 for c in x]
    out = []
    for k in product(*(range(b + 1) for b in bounds)):
        mu = tuple(a - b for a, b in zip(lam, system.weight_of_root(k)))
        if system.is_dominant(mu):
            out.append((sum(k), mu))
    out.sort()
    return [mu for _, mu in out]


@lru_cache(maxsize=None)
def _dominant_multiplicities(system: RootSystem, lam: Vec) -> Dict[Vec, int]:
    """Freudenthal recursion over the dominant weights of V_lam."""
    rho = system.rho
    roots_w = [system.weight_of_root(k) for k in system.positive_roots]
    roots_c = system.positive_roots
    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_lr = system.weight_form(lr, lr)
    mult: Dict[Vec, int] = {}

    def m(nu):
        dom, _ = system.dominant_rep(nu)
        return mult.get(dom, 0) if system.dominance_leq(dom, lam) else 0

    for mu in dominant_below(system, lam):
        if mu == lam:
            mult[mu] = 1
            continue
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = norm_lr - system.weight_form(mr, mr)
        total = Fraction(0)
        mu_rc = system.root_coords(mu)
        for aw, ac in zip(roots_w, roots_c):
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, aw))
                dom, _ = system.dominant_rep(nu)
                if not system.dominance_leq(dom, lam):
                    break
                mnu = mult.get(dom, 0)
                if mnu:
                    nu_rc = tuple(a + k * b for a, b in zip(mu_rc, ac))
                    total += system.form(nu_rc, ac) * mnu
                k += 1
        val = 2 * total / denom
        assert val.denominator == 1 and val >= 0, (lam, mu, val)
        mult[mu] = int(val)
    return {mu: c for mu, c in mult.items() if c}


def freudenthal_multiplicity(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> int:
    sysv = datum.dual_system
    lam = _require_dominant(sysv, lam)
    dom, _ = sysv.dominant_rep(tuple(mu))
    if not sysv.dominance_leq(dom, lam):
        return 0
    return _dominant_multiplicities(sysv, lam).get(dom, 0)


def character(datum: RootDatum, lam: Sequence[int]) -> Dict[Vec, int]:
    """Weight -> multiplicity for V_lam (W-invariant, sorted keys)."""
    sysv = datum.dual_system
    lam = _require_dominant(sysv, lam)
    out: Dict[Vec, int] = {}
    for mu, c in _dominant_multiplicities(sysv, lam).items():
        for nu in sysv.orbit(mu):
            out[nu] = c
    return dict(sorted(out.items()))


def char_product(a: Mapping[Vec, int], b: Mapping[Vec, int]) -> Dict[Vec, int]:
    out: Dict[Vec, int] = {}
    for u, cu in a.items():
        for v, cv in b.items():
            w = tuple(x + y for x, y in zip(u, v))
            out[w] = out.get(w, 0) + cu * cv
    return {k: v for k, v in sorted(out.items()) if v}


def tensor_decompose(datum: RootDatum, lam, mu, budget: int = 1_000_000) -> Dict[Vec, int]:
    """Multiplicities of V_nu in V_lam (x) V_mu by highest-weight peeling."""
    sysv = datum.dual_system
    lam = _require_dominant(sysv, lam)
    mu = _require_dominant(sysv, mu)
    if weyl_dimension(datum, lam) * weyl_dimension(datum, mu) > budget:
        raise ResourceBudgetError(f"tensor product dimension exceeds budget {budget}")
    rem = char_product(character(datum, lam), character(datum, mu))
    out: Dict[Vec, int] = {}
    while rem:
        top = max((nu for nu in rem if sysv.is_dominant(nu)), key=lambda v: (sysv.height_h(v), v))
        c = rem[top]
        if c < 0:
            raise AssertionError(f"negative multiplicity {c} at {top}")
        out[top] = c
        for nu, m in character(datum, top).items():
            v = rem.get(nu, 0) - c * m
            if v:
                rem[nu] = v
            else:
                rem.pop(nu, None)
    return dict(sorted(out.items()))


def klimyk_decompose(datum: RootDatum, lam, mu) -> Dict[Vec, int]:
    """Independent route: Racah-Speiser/Klimyk reflection of lam + weights(V_mu)."""
    sysv = datum.dual_system
    rho = sysv.rho
    out: Dict[Vec, int] = {}
    for nu, m in character(datum, mu).items():
        v = tuple(a + b + c for a, b, c in zip(lam, nu, rho))
        dom, word = sysv.dominant_rep(v)
        if any(x == 0 for x in dom):
            continue
        key = tuple(a - b for a, b in zip(dom, rho))
        out[key] = out.get(key, 0) + (-1) ** len(word) * m
    return {k: v for k, v in sorted(out.items()) if v}


# --------------------------------------------------------------------------
# explicit modules

@dataclass
class Irrep:
    datum: RootDatum
    highest_weight: Vec
    weights: List[Vec]
    labels: List[Tuple[int, ...]]
    depth: List[int]
    e: List[SparseOp]
    f: List[SparseOp]
    h: List[SparseOp]
    weight_spaces: Dict[Vec, List[int]] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def system(self) -> RootSystem:
        return self.datum.dual_system

    def weight_space(self, mu: Sequence[int]) -> List[int]:
        return self.weight_spaces.get(tuple(mu), [])

    def lowest_index(self) -> int:
        return max(range(self.dim), key=lambda i: self.depth[i])

    def h_degree(self, i: int) -> int:
        """mu(h) for the weight of basis vector i."""
        return self.system.height_h(self.weights[i])

    def extremal_lowest_vector(self) -> SVec:
        """Lowest weight vector f^(m_1)_{i_1} ... f^(m_N)_{i_N} v_lam in divided powers.

        Applied along a reduced word of w_0; every step maps an extremal vector
        of Shapovalov norm 1 to another one, so the result has norm 1.
        """
        sysv = self.system
        word = sysv.lowest_to_highest_word()
        v: SVec = {0: Fraction(1)}
        wt = self.highest_weight
        for i in reversed(word):
            m = wt[i]
            fact = 1
            for k in range(1, m + 1):
                v = self.f[i].apply(v)
                fact *= k
            v = vscale(v, Fraction(1, fact))
            wt = sysv.reflect(i, wt)
        return v

    def check_relations(self) -> None:
        """Chevalley-Serre relations, exactly."""
        c = self.system.cartan
        r = self.system.rank
        n = self.dim
        for i in range(r):
            for j in range(r):
                hi_ej = self.h[i].bracket(self.e[j])
                assert hi_ej == self.e[j].scale(c[i][j]), ("[h,e]", i, j)
                hi_fj = self.h[i].bracket(self.f[j])
                assert hi_fj == self.f[j].scale(-c[i][j]), ("[h,f]", i, j)
                ef = self.e[i].bracket(self.f[j])
                assert ef == (self.h[i] if i == j else SparseOp.zero(n, n)), ("[e,f]", i, j)
                assert self.h[i].bracket(self.h[j]).is_zero()
                if i != j:
                    for gens in (self.e, self.f):
                        x = gens[j]
                        for _ in range(1 - c[i][j]):
                            x = gens[i].bracket(x)
                        assert x.is_zero(), ("serre", i, j)

    def is_irreducible(self) -> bool:
        """Highest weight space is a line and every lower vector has a nonzero e-image."""
        if len(self.weight_space(self.highest_weight)) != 1:
            return False
        for mu, idx in self.weight_spaces.items():
            if mu == self.highest_weight:
                continue
            images = []
            for b in idx:
                img = {}
                for j, ej in enumerate(self.e):
                    for k, a in ej.apply({b: Fraction(1)}).items():
                        img[(j, k)] = a
                images.append(img)
            if rank(images) != len(idx):
                return False
        return True

    def gram_matrices(self) -> Dict[Vec, List[List[Fraction]]]:
        """Shapovalov form on each weight space, sigma(f_i) = e_i, <v_lam, v_lam> = 1."""
        form: Dict[Tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
        order = sorted(range(self.dim), key=lambda i: self.depth[i])

        def inner(a: int, vec: SVec) -> Fraction:
            return sum((c * form[(a, k)] for k, c in vec.items()), Fraction(0))

        out = {}
        for mu in sorted(self.weight_spaces, key=lambda m: self.depth[self.weight_spaces[m][0]]):
            idx = self.weight_spaces[mu]
            for a in idx:
                for b in idx:
                    if (a, b) in form:
                        continue
                    i = self.labels[a][0]
                    parent = self._parent[a]
                    form[(a, b)] = inner(parent, self.e[i].apply({b: Fraction(1)}))
            out[mu] = [[form[(a, b)] for b in idx] for a in idx]
        return out

    _parent: List[int] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        def op(m: SparseOp):
            return [[i, j, str(a)] for j in sorted(m.cols) for i, a in sorted(m.cols[j].items())]

        return {
            "format": "satake-irrep/1",
            "datum": self.datum.label,
            "lattice": self.datum.lattice,
            "highest_weight": list(self.highest_weight),
            "dim": self.dim,
            "weights": [list(w) for w in self.weights],
            "generators": {
                **{f"e{i + 1}": op(m) for i, m in enumerate(self.e)},
                **{f"f{i + 1}": op(m) for i, m in enumerate(self.f)},
                **{f"h{i + 1}": op(m) for i, m in enumerate(self.h)},
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


_IRREPS: Dict[Tuple[RootDatum, Vec], Irrep] = {}
_IRREPS_LOCK = threading.Lock()


def build_irrep(datum: RootDatum, lam: Sequence[int], budget: int = DEFAULT_BUDGET) -> Irrep:
    sysv = datum.dual_system
    lam = _require_dominant(sysv, lam)
    key = (datum, lam)
    got = _IRREPS.get(key)
    if got is not None:
        return got
    dim = weyl_dimension(datum, lam)
    if dim > budget:
        raise ResourceBudgetError(f"dim V_{lam} = {dim} exceeds budget {budget}")
    irrep = _construct(datum, sysv, lam)
    if irrep.dim != dim:
        raise AssertionError(f"constructed dimension {irrep.dim} != Weyl dimension {dim}")
    with _IRREPS_LOCK:
        _IRREPS[key] = irrep
    return irrep


def built_irreps() -> List[Irrep]:
    """Every module constructed so far in this process."""
    with _IRREPS_LOCK:
        return list(_IRREPS.values())


def _construct(datum: RootDatum, sysv: RootSystem, lam: Vec) -> Irrep:
    r = sysv.rank
    alpha = [sysv.weight_of_root(tuple(int(i == j) for j in range(r))) for i in range(r)]
    weights: List[Vec] = [lam]
    labels: List[Tuple[int, ...]] = [()]
    depth: List[int] = [0]
    parent: List[int] = [-1]
    e_cols: List[Dict[int, SVec]] = [dict() for _ in range(r)]
    f_cols: List[Dict[int, SVec]] = [dict() for _ in range(r)]
    prev = [0]
    d = 0
    while prev:
        d += 1
        # group candidate monomials f_i b by weight
        cands: Dict[Vec, List[Tuple[Tuple[int, ...], int, int]]] = {}
        for b in prev:
            for i in range(r):
                nu = tuple(x - y for x, y in zip(weights[b], alpha[i]))
                cands.setdefault(nu, []).append(((i,) + labels[b], i, b))
        new: List[int] = []
        for nu in sorted(cands):
            lst = sorted(cands[nu])
            ech = Echelon()
            chosen: List[int] = []
            images: List[Dict[int, SVec]] = []
            for lab, i, b in lst:
                wt_b = weights[b]
                img: Dict[int, SVec] = {}
                for j in range(r):
                    v = f_apply(f_cols[i], e_cols[j].get(b, {}))
                    if i == j and wt_b[i]:
                        v = vadd(v, {b: Fraction(wt_b[i])})
                    if v:
                        img[j] = v
                images.append(img)
                flat = {(j, k): a for j, v in img.items() for k, a in v.items()}
                if ech.add(flat):
                    idx = len(weights)
                    weights.append(nu)
                    labels.append(lab)
                    depth.append(d)
                    parent.append(b)
                    chosen.append(idx)
                    new.append(idx)
                    for j, v in img.items():
                        e_cols[j][idx] = v
                    f_cols[i][b] = {idx: Fraction(1)}
                else:
                    combo = ech.express(flat)
                    f_cols[i][b] = {chosen[k]: c for k, c in combo.items() if c}
        prev = new
    n = len(weights)
    e = [SparseOp(e_cols[i], n, n) for i in range(r)]
    f = [SparseOp(f_cols[i], n, n) for i in range(r)]
    h = [SparseOp({k: {k: Fraction(weights[k][i])} for k in range(n) if weights[k][i]}, n, n)
         for i in range(r)]
    spaces: Dict[Vec, List[int]] = {}
    for k, w in enumerate(weights):
        spaces.setdefault(w, []).append(k)
    irrep = Irrep(datum, lam, weights, labels, depth, e, f, h, spaces)
    irrep._parent = parent
    return irrep


def f_apply(fcol: Dict[int, SVec], v: SVec) -> SVec:
    out: SVec = {}
    for k, c in v.items():
        col = fcol.get(k)
        if col:
            out = vadd(out, col, c)
    return out


def positive_definite(gram: List[List[Fraction]]) -> bool:
    """Leading principal minors all positive (and symmetric)."""
    n = len(gram)
    if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
        return False
    return all(determinant([row[:k] for row in gram[:k]]) > 0 for k in range(1, n + 1))
