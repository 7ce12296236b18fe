"""Principal nilpotent, the principal sl2 triple, and the centralizer algebra.

Everything lives in the dual Lie algebra g^vee:

* ``n = sum_i e_i``;
* ``h`` = sum of positive coroots (acts on a weight vector of weight mu by mu(h));
* ``f = sum_i c_i f_i`` where ``h = sum_i c_i h_i``, so that [n, f] = h.

The centralizer ``a = Z(n)`` sits inside the positive nilradical.  Its basis
elements are stored as combinations of root vectors ``e_beta``, each of which
is a fixed nested bracket of simple generators, so they can be evaluated in any
module built by :mod:`satake.repbuild`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import VerificationError, WeightError
from .linalg import Echelon, SparseOp, SVec, independent_subset, nullspace, rank, vadd, vscale
from .polys import IntPoly
from .repbuild import Irrep, build_irrep
from .rootdata import RootDatum, RootSystem, Vec


# --------------------------------------------------------------------------
# root vectors and the adjoint representation

def root_words(system: RootSystem) -> Dict[Vec, Tuple[int, ...]]:
    """For each positive root a word w with e_beta = [e_w0, [e_w1, ... e_wk]]."""
    words: Dict[Vec, Tuple[int, ...]] = {}
    for beta in system.positive_roots:  # ordered by height
        if sum(beta) == 1:
            words[beta] = (beta.index(1),)
            continue
        for i in range(system.rank):
            rest = list(beta)
            rest[i] -= 1
            rest = tuple(rest)
            if rest in words:
                words[beta] = (i,) + words[rest]
                break
    return words


def _nested(gens: Sequence[SparseOp], word: Tuple[int, ...]) -> SparseOp:
    x = gens[word[-1]]
    for i in reversed(word[:-1]):
        x = gens[i].bracket(x)
    return x


class RootVectors:
    """e_beta, f_beta, h_i realized as matrices on a fixed module, with cache."""

    def __init__(self, irrep: Irrep):
        self.irrep = irrep
        self.system = irrep.system
        self.words = root_words(self.system)
        self._e: Dict[Vec, SparseOp] = {}
        self._f: Dict[Vec, SparseOp] = {}

    def e(self, beta: Vec) -> SparseOp:
        got = self._e.get(beta)
        if got is None:
            got = self._e[beta] = _nested(self.irrep.e, self.words[beta])
        return got

    def f(self, beta: Vec) -> SparseOp:
        got = self._f.get(beta)
        if got is None:
            got = self._f[beta] = _nested(self.irrep.f, self.words[beta])
        return got

    def combo(self, coeffs: Mapping[Vec, Fraction]) -> SparseOp:
        n = self.irrep.dim
        out = SparseOp.zero(n, n)
        for beta, c in coeffs.items():
            if c:
                out = out + self.e(beta).scale(c)
        return out


_RV: Dict[Tuple[RootDatum, Vec], RootVectors] = {}
_RV_LOCK = threading.Lock()


def root_vectors(irrep: Irrep) -> RootVectors:
    key = (irrep.datum, irrep.highest_weight)
    with _RV_LOCK:
        got = _RV.get(key)
        if got is None or got.irrep is not irrep:
            got = _RV[key] = RootVectors(irrep)
        return got


@dataclass
class AdjointModel:
    """g^vee with basis [e_beta (by height)] + [h_i] + [f_beta], realized faithfully."""

    system: RootSystem
    labels: List[Tuple[str, object]]
    matrices: List[SparseOp]
    ech: Echelon = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def coords(self, m: SparseOp) -> SVec:
        got = self.ech.express(m.flat())
        if got is None:
            raise VerificationError("matrix is not in the span of g^vee")
        return got

    def ad(self, x: SparseOp) -> SparseOp:
        cols = {j: self.coords(x.bracket(b)) for j, b in enumerate(self.matrices)}
        return SparseOp(cols, self.dim, self.dim)

    def degree(self, j: int) -> int:
        kind, data = self.labels[j]
        if kind == "h":
            return 0
        ht = 2 * sum(data)
        return ht if kind == "e" else -ht


_ADJ: Dict[RootDatum, AdjointModel] = {}


def adjoint_model(datum: RootDatum) -> AdjointModel:
    got = _ADJ.get(datum)
    if got is not None:
        return got
    sysv = datum.dual_system
    faithful = build_irrep(datum, sysv.weight_of_root(sysv.highest_root), budget=10_000)
    rv = root_vectors(faithful)
    labels: List[Tuple[str, object]] = []
    mats: List[SparseOp] = []
    for beta in sysv.positive_roots:
        labels.append(("e", beta))
        mats.append(rv.e(beta))
    for i in range(sysv.rank):
        labels.append(("h", i))
        mats.append(faithful.h[i])
    for beta in sysv.positive_roots:
        labels.append(("f", beta))
        mats.append(rv.f(beta))
    ech = Echelon()
    for m in mats:
        if not ech.add(m.flat()):
            raise VerificationError("adjoint basis is not linearly independent")
    got = AdjointModel(sysv, labels, mats, ech)
    _ADJ[datum] = got
    return got


# --------------------------------------------------------------------------
# principal sl2 triple

@dataclass
class PrincipalTriple:
    datum: RootDatum
    h_coeffs: Vec          # h = sum c_i h_i
    f_coeffs: Vec          # f = sum c_i f_i

    def in_module(self, irrep: Irrep) -> Tuple[SparseOp, SparseOp, SparseOp]:
        n_dim = irrep.dim
        n = SparseOp.zero(n_dim, n_dim)
        h = SparseOp.zero(n_dim, n_dim)
        f = SparseOp.zero(n_dim, n_dim)
        for i in range(irrep.system.rank):
            n = n + irrep.e[i]
            h = h + irrep.h[i].scale(self.h_coeffs[i])
            f = f + irrep.f[i].scale(self.f_coeffs[i])
        return n, h, f

    def check(self, irrep: Irrep) -> None:
        n, h, f = self.in_module(irrep)
        if h.bracket(n) != n.scale(2) or h.bracket(f) != f.scale(-2) or n.bracket(f) != h:
            raise VerificationError(f"sl2 relations fail on V_{irrep.highest_weight}")
        for k in range(irrep.dim):
            if h.entry(k, k) != irrep.h_degree(k):
                raise VerificationError("h does not act by mu(h)")

    def adjoint(self) -> Tuple[SparseOp, SparseOp, SparseOp]:
        """ad n, ad h, ad f on g^vee in the basis of :func:`adjoint_model`."""
        model = adjoint_model(self.datum)
        faithful = build_irrep(self.datum, model.system.weight_of_root(model.system.highest_root),
                               budget=10_000)
        n, h, f = self.in_module(faithful)
        return model.ad(n), model.ad(h), model.ad(f)


@lru_cache(maxsize=None)
def principal_triple(datum: RootDatum) -> PrincipalTriple:
    sysv = datum.dual_system
    c = sysv.h_coeffs
    faithful = build_irrep(datum, sysv.weight_of_root(sysv.highest_root), budget=10_000)
    dim = faithful.dim
    n = SparseOp.zero(dim, dim)
    h = SparseOp.zero(dim, dim)
    for i in range(sysv.rank):
        n = n + faithful.e[i]
        h = h + faithful.h[i].scale(c[i])
    # solve [n, sum x_i f_i] = h exactly
    ech = Echelon()
    for i in range(sysv.rank):
        ech.add(n.bracket(faithful.f[i]).flat())
    x = ech.express(h.flat())
    if x is None or len(ech) != sysv.rank:
        raise VerificationError("no f with [n, f] = h")
    f_coeffs = tuple(x.get(i, Fraction(0)) for i in range(sysv.rank))
    f_coeffs = tuple(int(v) if v.denominator == 1 else v for v in f_coeffs)
    triple = PrincipalTriple(datum, c, f_coeffs)
    triple.check(faithful)
    return triple


# --------------------------------------------------------------------------
# centralizer of n

@dataclass
class CentralizerBasis:
    datum: RootDatum
    elements: List[Dict[Vec, Fraction]]   # coefficients over e_beta
    eigenvalues: List[int]                # ad h eigenvalue of each element (= 2 e_i)
    full_kernel_dim: int

    @property
    def exponents(self) -> List[int]:
        return sorted(v // 2 for v in self.eigenvalues)

    def operators(self, irrep: Irrep) -> List[SparseOp]:
        rv = root_vectors(irrep)
        return [rv.combo(el) for el in self.elements]

    def to_json(self) -> dict:
        return {
            "datum": self.datum.label,
            "eigenvalues": sorted(self.eigenvalues),
            "exponents": self.exponents,
            "elements": [{",".join(map(str, b)): str(c) for b, c in sorted(el.items())}
                         for el in self.elements],
        }


_CB: Dict[RootDatum, CentralizerBasis] = {}


def centralizer_basis(datum: RootDatum) -> CentralizerBasis:
    got = _CB.get(datum)
    if got is not None:
        return got
    sysv = datum.dual_system
    model = adjoint_model(datum)
    ad_n, ad_h, _ = principal_triple(datum).adjoint()
    full = nullspace([ad_n.cols.get(j, {}) for j in range(model.dim)])
    elements: List[Dict[Vec, Fraction]] = []
    eigen: List[int] = []
    degrees = sorted({model.degree(j) for j in range(model.dim)})
    for d in degrees:
        idx = [j for j in range(model.dim) if model.degree(j) == d]
        ker = nullspace([ad_n.cols.get(j, {}) for j in idx])
        for vec in ker:
            el = {}
            for k, c in vec.items():
                kind, beta = model.labels[idx[k]]
                if kind != "e":
                    raise VerificationError("centralizer element outside the nilradical")
                el[beta] = c
            lead = el[min(el, key=lambda b: sysv.positive_roots.index(b))]
            elements.append({b: c / lead for b, c in el.items()})
            eigen.append(d)
    # n itself spans the degree-2 part; normalize it to exactly n
    cb = CentralizerBasis(datum, elements, eigen, len(full))
    if len(full) != sysv.rank or len(elements) != sysv.rank:
        raise VerificationError(f"dim ker ad n = {len(full)}, rank = {sysv.rank}: n is not regular")
    if any(v % 2 for v in eigen):
        raise VerificationError("odd ad h eigenvalue on the centralizer")
    _CB[datum] = cb
    return cb


def invariant_degrees(system: RootSystem) -> List[int]:
    """Degrees of basic invariants, read off sum_w q^l(w) = prod [d_i]_q."""
    from .weyl import affine_weyl_group  # noqa: F401  (group tables only)
    lengths = {}
    words = system._weyl_bfs()[1]
    for w in system.weyl_matrices:
        l = len(words[w])
        lengths[l] = lengths.get(l, 0) + 1
    poly = IntPoly(lengths)
    degs = []
    for d in range(poly.degree + 1, 1, -1):
        qint = IntPoly({k: 1 for k in range(d)})
        while len(degs) < system.rank:
            try:
                poly = poly.divmod_exact(qint)
            except ArithmeticError:
                break
            degs.append(d)
    if poly != IntPoly.one() or len(degs) != system.rank:
        raise VerificationError("Poincare polynomial of W does not factor into q-integers")
    return sorted(degs)


def kostant_identity(datum: RootDatum) -> Tuple[List[int], List[int], bool]:
    """(ad-h eigenvalues on a, 2(d_i - 1), equal?)."""
    cb = centralizer_basis(datum)
    lhs = sorted(cb.eigenvalues)
    rhs = sorted(2 * (d - 1) for d in invariant_degrees(datum.dual_system))
    return lhs, rhs, lhs == rhs


def centralizer_is_abelian(datum: RootDatum) -> bool:
    sysv = datum.dual_system
    faithful = build_irrep(datum, sysv.weight_of_root(sysv.highest_root), budget=10_000)
    ops = centralizer_basis(datum).operators(faithful)
    return all(a.bracket(b).is_zero() for i, a in enumerate(ops) for b in ops[i + 1:])


# --------------------------------------------------------------------------
# Brylinski filtration

@dataclass
class FiltrationReport:
    highest_weight: Vec
    mu: Vec
    jumps: List[Tuple[int, int]]      # (i, dim V_i(mu)/V_{i-1}(mu)), nonzero only
    poincare: IntPoly
    dim: int
    dominant: bool = True
    comparisons: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "lambda": list(self.highest_weight),
            "mu": list(self.mu),
            "jumps": [list(j) for j in self.jumps],
            "poincare": self.poincare.to_json(),
            "dim": self.dim,
        }


def _filtration_jumps(irrep: Irrep, mu: Vec, n: SparseOp) -> List[Tuple[int, int]]:
    idx = irrep.weight_space(mu)
    vecs = [{k: Fraction(1)} for k in idx]
    prev_ker = 0
    jumps = []
    i = 0
    while prev_ker < len(idx):
        vecs = [n.apply(v) for v in vecs]
        ker = len(idx) - rank(vecs)
        if ker > prev_ker:
            jumps.append((i, ker - prev_ker))
        prev_ker = ker
        i += 1
    return jumps


def brylinski_poincare(irrep: Irrep, mu: Sequence[int], allow_nondominant: bool = False) -> FiltrationReport:
    """P_mu(V, q) = sum_i q^(2i) dim V_i(mu)/V_{i-1}(mu), V_i(mu) = V(mu) cap ker n^(i+1)."""
    mu = tuple(mu)
    dominant = irrep.system.is_dominant(mu)
    if not dominant and not allow_nondominant:
        raise WeightError(f"mu = {mu} is not dominant; the q-analogue statement requires dominant "
                          "weights (pass allow_nondominant=True for the bare filtration)")
    n, _, _ = principal_triple(irrep.datum).in_module(irrep)
    jumps = _filtration_jumps(irrep, mu, n)
    poly = IntPoly({2 * i: c for i, c in jumps})
    return FiltrationReport(irrep.highest_weight, mu, jumps, poly, len(irrep.weight_space(mu)), dominant)


# --------------------------------------------------------------------------
# module-level structural checks

def hard_lefschetz(irrep: Irrep) -> bool:
    """n^k : V^h(-k) -> V^h(k) is an isomorphism for every k >= 0."""
    n, _, _ = principal_triple(irrep.datum).in_module(irrep)
    by_deg: Dict[int, List[int]] = {}
    for k in range(irrep.dim):
        by_deg.setdefault(irrep.h_degree(k), []).append(k)
    for k in sorted(d for d in by_deg if d >= 0):
        src = by_deg.get(-k, [])
        dst = by_deg.get(k, [])
        if len(src) != len(dst):
            return False
        vecs = [{j: Fraction(1)} for j in src]
        for _ in range(k):
            vecs = [n.apply(v) for v in vecs]
        if any(not set(v) <= set(dst) for v in vecs):
            return False
        if rank(vecs) != len(dst):
            return False
    return True


def h_grading_symmetric(irrep: Irrep) -> bool:
    counts: Dict[int, int] = {}
    for k in range(irrep.dim):
        d = irrep.h_degree(k)
        counts[d] = counts.get(d, 0) + 1
    return all(counts.get(-d) == c for d, c in counts.items())


def parity_holds(irrep: Irrep) -> bool:
    """For lam in the root lattice every mu(h) is even; vacuous otherwise."""
    if not irrep.system.in_root_lattice(irrep.highest_weight):
        return True
    return all(irrep.h_degree(k) % 2 == 0 for k in range(irrep.dim))


def filtration_shift(irrep: Irrep) -> bool:
    """Filtrations on W-conjugate weight spaces agree up to a degree shift.

    For dominant mu and any w, P_{w mu}(q) = q^(mu(h) - w mu(h)) P_mu(q), checked
    on every weight of the module with nondominant weights included.
    """
    n, _, _ = principal_triple(irrep.datum).in_module(irrep)
    sysv = irrep.system
    cache: Dict[Vec, IntPoly] = {}

    def poly(mu):
        if mu not in cache:
            cache[mu] = IntPoly({2 * i: c for i, c in _filtration_jumps(irrep, mu, n)})
        return cache[mu]

    for nu in irrep.weight_spaces:
        dom, _ = sysv.dominant_rep(nu)
        shift = sysv.height_h(dom) - sysv.height_h(nu)
        if poly(nu) != poly(dom).shift(shift):
            return False
    return True


def orbit_sum_palindromic(irrep: Irrep, mu: Sequence[int]) -> bool:
    """Literal palindromicity of the orbit-summed normalized filtration polynomial."""
    n, _, _ = principal_triple(irrep.datum).in_module(irrep)
    sysv = irrep.system
    top = sysv.height_h(irrep.highest_weight)
    total = IntPoly({})
    for nu in sysv.orbit(tuple(mu)):
        p = IntPoly({2 * i: c for i, c in _filtration_jumps(irrep, nu, n)})
        total = total + p.shift(top - sysv.height_h(nu))
    return total.is_palindromic()


# --------------------------------------------------------------------------
# invariants of a, generalized exponents, cyclicity

def _joint_kernel(ops: List[SparseOp], dim: int) -> List[SVec]:
    cols = []
    for j in range(dim):
        col = {}
        for a_idx, op in enumerate(ops):
            for i, v in op.cols.get(j, {}).items():
                col[(a_idx, i)] = v
        cols.append(col)
    return nullspace(cols)


@dataclass
class AInvariantsReport:
    highest_weight: Vec
    mu_c: Vec
    dim_invariants: int
    dim_weight_space: int
    exponents: List[int]
    vectors: List[SVec]
    certified: bool

    def to_json(self) -> dict:
        return {
            "lambda": list(self.highest_weight),
            "mu_C": list(self.mu_c),
            "dim_invariants": self.dim_invariants,
            "dim_weight_space": self.dim_weight_space,
            "generalized_exponents": self.exponents,
            "certified": self.certified,
        }


def a_invariants(irrep: Irrep, coset=None) -> AInvariantsReport:
    from .grassview import minuscule_weight

    datum = irrep.datum
    sysv = irrep.system
    if coset is None:
        coset = sysv.component(irrep.highest_weight)
    if tuple(coset) != sysv.component(irrep.highest_weight):
        raise WeightError("coset does not contain the highest weight")
    mu_c = minuscule_weight(datum, coset)
    ops = centralizer_basis(datum).operators(irrep)
    inv = _joint_kernel(ops, irrep.dim)
    n, _, _ = principal_triple(datum).in_module(irrep)
    space = irrep.weight_space(mu_c)
    inv_ech = Echelon()
    for v in inv:
        inv_ech.add(v)
    chosen_v: List[SVec] = []
    chosen_k: List[int] = []
    images: List[SVec] = []
    k = 0
    max_k = (sysv.height_h(irrep.highest_weight) - sysv.height_h(mu_c)) // 2
    while k <= max_k:
        # W_k = {v in V(mu_c) : n^k v in V^a}; take images independent of earlier ones
        powered = []
        for j in space:
            v = {j: Fraction(1)}
            for _ in range(k):
                v = n.apply(v)
            powered.append(v)
        cols = []
        for pv in powered:
            col = {}
            for a_idx, op in enumerate(ops):
                for i, c in op.apply(pv).items():
                    col[(a_idx, i)] = c
            cols.append(col)
        wk = nullspace(cols)
        cand_v = [{space[i]: c for i, c in w.items()} for w in wk]
        cand_img = [_combine(powered, w) for w in wk]
        ech = Echelon()
        for img in images:
            ech.add(img)
        for v, img in zip(cand_v, cand_img):
            if img and ech.add(img):
                chosen_v.append(v)
                chosen_k.append(k)
                images.append(img)
        k += 1
    certified = (rank(images) == len(inv) == len(images) == len(space)
                 and rank(chosen_v) == len(space)
                 and all(inv_ech.contains(img) for img in images))
    report = AInvariantsReport(irrep.highest_weight, mu_c, len(inv), len(space),
                               sorted(chosen_k), chosen_v, certified)
    if not certified:
        raise VerificationError(
            f"generalized-exponent certificate failed for V_{irrep.highest_weight}: "
            f"dim V^a = {len(inv)}, dim V(mu_C) = {len(space)}, images of rank {rank(images)}")
    return report


def _combine(vecs: List[SVec], coeffs: SVec) -> SVec:
    out: SVec = {}
    for i, c in coeffs.items():
        out = vadd(out, vecs[i], c)
    return out


@dataclass
class CyclicityReport:
    coset: Tuple[Fraction, ...]
    mu_c: Vec
    dim: int
    span_dim: int
    single_orbit: bool

    @property
    def cyclic(self) -> bool:
        return self.span_dim == self.dim

    def to_json(self) -> dict:
        return {
            "coset": [str(c) for c in self.coset],
            "mu_C": list(self.mu_c),
            "dim": self.dim,
            "span_dim": self.span_dim,
            "cyclic": self.cyclic,
            "minuscule": self.single_orbit,
        }


def minuscule_cyclicity_check(datum: RootDatum, coset) -> CyclicityReport:
    from .grassview import minuscule_weight

    mu_c = minuscule_weight(datum, coset)
    irrep = build_irrep(datum, mu_c)
    ops = centralizer_basis(datum).operators(irrep)
    start = {irrep.lowest_index(): Fraction(1)}
    ech = Echelon()
    ech.add(start)
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for op in ops:
                w = op.apply(v)
                if w and ech.add(w):
                    nxt.append(w)
        frontier = nxt
    orbit = set(irrep.system.orbit(mu_c))
    single = set(irrep.weight_spaces) == orbit
    return CyclicityReport(tuple(coset), mu_c, irrep.dim, len(ech), single)


# --------------------------------------------------------------------------
# graded Hom over a

def graded_hom_over_a(datum: RootDatum, lam: Sequence[int], mu: Sequence[int],
                      budget: int = 400) -> Dict[int, int]:
    """Dimensions of a-equivariant maps V_lam -> V_mu, graded by h-degree shift."""
    V = build_irrep(datum, lam, budget)
    U = build_irrep(datum, mu, budget)
    cb = centralizer_basis(datum)
    opsV = cb.operators(V)
    opsU = cb.operators(U)
    degV = [V.h_degree(k) for k in range(V.dim)]
    degU = [U.h_degree(k) for k in range(U.dim)]
    # row form of A_V: rowsV[a][k] = {j: A_V[k, j]}
    rowsV = []
    for op in opsV:
        rows: Dict[int, Dict[int, Fraction]] = {}
        for j, col in op.cols.items():
            for k, a in col.items():
                rows.setdefault(k, {})[j] = a
        rowsV.append(rows)
    shifts = sorted({du - dv for du in set(degU) for dv in set(degV)})
    out: Dict[int, int] = {}
    for d in shifts:
        unknowns = [(i, k) for i in range(U.dim) for k in range(V.dim) if degU[i] - degV[k] == d]
        cols = []
        for (i, k) in unknowns:
            col: SVec = {}
            for a_idx in range(len(opsV)):
                # (T A_V)[i, j] gets T[i,k] * A_V[k, j]
                for j, a in rowsV[a_idx].get(k, {}).items():
                    key = (a_idx, i, j)
                    col[key] = col.get(key, 0) + a
                # -(A_U T)[r, k] gets -A_U[r, i] * T[i, k]
                for r, a in opsU[a_idx].cols.get(i, {}).items():
                    key = (a_idx, r, k)
                    col[key] = col.get(key, 0) - a
            cols.append({kk: v for kk, v in col.items() if v})
        dim = len(nullspace(cols))
        if dim:
            out[d] = dim
    return out


def dual_weight(datum: RootDatum, lam: Sequence[int]) -> Vec:
    """Highest weight of the contragredient: -w_0(lam)."""
    sysv = datum.dual_system
    neg = tuple(-x for x in lam)
    dom, _ = sysv.dominant_rep(neg)
    return dom


# --------------------------------------------------------------------------
# Schubert pairing

def schubert_pairing(datum: RootDatum, u: Mapping[Tuple[int, ...], object], lam: Sequence[int],
                     budget: int = 400) -> Fraction:
    """<v^lam, u . v_lam> for u a polynomial in the centralizer basis.

    ``u`` maps exponent tuples (one entry per centralizer basis element, in the
    order of :func:`centralizer_basis`) to rational coefficients.  The lowest
    vector is the divided-power extremal vector of Shapovalov norm 1 and the
    covector is dual to the highest weight vector, so the value depends on the
    chosen scale of each centralizer generator.
    """
    V = build_irrep(datum, lam, budget)
    cb = centralizer_basis(datum)
    ops = cb.operators(V)
    target = 2 * V.system.height_h(V.highest_weight)
    low = V.extremal_lowest_vector()
    total = Fraction(0)
    for mono, coef in u.items():
        mono = tuple(mono)
        if len(mono) != len(ops):
            raise WeightError(f"monomial {mono} needs {len(ops)} exponents")
        if sum(e * ev for e, ev in zip(mono, cb.eigenvalues)) != target:
            continue
        v = low
        for op, e in zip(ops, mono):
            for _ in range(e):
                v = op.apply(v)
        total += Fraction(coef) * v.get(0, Fraction(0))
    return total
