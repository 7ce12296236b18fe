"""Root systems, weight lattices, dominance order and the dual root datum.

Conventions (Bourbaki numbering):

* ``cartan[i][j] = <alpha_i^vee, alpha_j>``.
* Roots are integer vectors in simple-root coordinates, coroots in
  simple-coroot coordinates, weights in fundamental-weight coordinates.
* A weight ``lam`` in fundamental coordinates equals ``C x`` where ``x`` is its
  expression in simple roots, so ``lam_i = <lam, alpha_i^vee>``.

A :class:`RootDatum` describes the group G.  All representation theory in this
package happens on the dual group G^vee, whose root system is
``datum.dual_system``; "weights" passed to the public functions are weights of
G^vee (cocharacters of T), in the fundamental-weight basis of G^vee.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import UnsupportedDatumError, WeightError
from .linalg import inverse

Vec = Tuple[int, ...]

CARTAN_MATRICES: Dict[str, Tuple[Tuple[int, ...], ...]] = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    "B2": ((2, -1), (-2, 2)),
    "C2": ((2, -2), (-1, 2)),
    "G2": ((2, -3), (-1, 2)),
}
SUPPORTED_LABELS: Tuple[str, ...] = tuple(CARTAN_MATRICES)

_DUAL_LABEL = {"B2": "C2", "C2": "B2"}

LATTICES = ("coweight", "coroot")


def _transpose(m):
    return tuple(tuple(row[i] for row in m) for i in range(len(m)))


class RootSystem:
    """A reduced crystallographic root system given by its Cartan matrix.

    Weights here are weights of *this* system in fundamental coordinates.
    """

    def __init__(self, cartan: Sequence[Sequence[int]]):
        self.cartan: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(a) for a in r) for r in cartan)
        self.rank = len(self.cartan)
        _check_cartan(self.cartan)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.cartan == other.cartan

    def __hash__(self):
        return hash(self.cartan)

    # --- bilinear form -------------------------------------------------
    @cached_property
    def symmetrizer(self) -> Tuple[Fraction, ...]:
        """d_i = (alpha_i, alpha_i)/2, normalized so short roots have d = 1."""
        r = self.rank
        d: List[Optional[Fraction]] = [None] * r
        d[0] = Fraction(1)
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(r):
                if self.cartan[i][j] and d[j] is None:
                    d[j] = d[i] * self.cartan[i][j] / self.cartan[j][i]
                    stack.append(j)
        m = min(d)
        return tuple(x / m for x in d)

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        """Invariant form on simple-root coordinates."""
        d, c = self.symmetrizer, self.cartan
        return sum((Fraction(x[i]) * d[i] * c[i][j] * y[j]
                    for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    @cached_property
    def cartan_inverse(self) -> List[List[Fraction]]:
        return inverse(self.cartan)

    def root_coords(self, lam: Sequence[int]) -> Tuple[Fraction, ...]:
        """Rational simple-root coordinates of a weight."""
        ci = self.cartan_inverse
        return tuple(sum((ci[i][j] * lam[j] for j in range(self.rank)), Fraction(0))
                     for i in range(self.rank))

    def weight_of_root(self, k: Sequence[int]) -> Vec:
        """Fundamental coordinates of the root-lattice vector ``sum k_j alpha_j``."""
        return tuple(sum(self.cartan[i][j] * k[j] for j in range(self.rank))
                     for i in range(self.rank))

    def weight_form(self, lam, mu) -> Fraction:
        return self.form(self.root_coords(lam), self.root_coords(mu))

    # --- roots ---------------------------------------------------------
    @cached_property
    def positive_roots(self) -> Tuple[Vec, ...]:
        """Positive roots in simple-root coordinates by the root-string algorithm."""
        r = self.rank
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        roots = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                bw = self.weight_of_root(beta)
                for i in range(r):
                    # p = length of the alpha_i string below beta
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        if tuple(down) in roots:
                            p += 1
                        else:
                            break
                    if p - bw[i] > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in roots:
                            roots.add(up)
                            nxt.append(up)
            layer = nxt
        return tuple(sorted(roots, key=lambda k: (sum(k), tuple(-x for x in k))))

    @cached_property
    def positive_coroots(self) -> Tuple[Vec, ...]:
        """Coroot of each positive root (same order), in simple-coroot coordinates."""
        d = self.symmetrizer
        out = []
        for k in self.positive_roots:
            norm = self.form(k, k) / 2
            out.append(tuple(int(k[i] * d[i] / norm) for i in range(self.rank)))
        return tuple(out)

    @cached_property
    def highest_root(self) -> Vec:
        return max(self.positive_roots, key=sum)

    def pair(self, lam: Sequence[int], coroot: Sequence[int]) -> int:
        """<lam, beta^vee> for a weight in fundamental coordinates."""
        return sum(a * b for a, b in zip(lam, coroot))

    @cached_property
    def h_coeffs(self) -> Vec:
        """h = sum of positive coroots, in simple-coroot coordinates."""
        return tuple(sum(c[i] for c in self.positive_coroots) for i in range(self.rank))

    def height_h(self, lam: Sequence[int]) -> int:
        """lam(h), the pairing of a weight with the sum of positive coroots."""
        return self.pair(lam, self.h_coeffs)

    @cached_property
    def rho(self) -> Vec:
        return tuple(1 for _ in range(self.rank))

    @cached_property
    def fundamental_weights(self) -> Tuple[Vec, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    # --- Weyl group action on weights -------------------------------------
    def reflect(self, i: int, lam: Sequence[int]) -> Vec:
        a = lam[i]
        return tuple(lam[j] - a * self.cartan[j][i] for j in range(self.rank))

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(x >= 0 for x in lam)

    def dominant_rep(self, lam: Sequence[int]) -> Tuple[Vec, Tuple[int, ...]]:
        """Dominant conjugate and a word ``w`` with ``s_w[0]...s_w[-1] dom = lam``."""
        lam = tuple(lam)
        word: List[int] = []
        while True:
            i = next((j for j in range(self.rank) if lam[j] < 0), None)
            if i is None:
                return lam, tuple(word)
            lam = self.reflect(i, lam)
            word.append(i)

    def in_root_lattice(self, lam: Sequence[int]) -> bool:
        return all(x.denominator == 1 for x in self.root_coords(lam))

    def component(self, lam: Sequence[int]) -> Tuple[Fraction, ...]:
        """Coset of ``lam`` in weight lattice / root lattice (fractional parts)."""
        return tuple(x - (x.numerator // x.denominator) for x in self.root_coords(lam))

    def dominance_leq(self, mu: Sequence[int], lam: Sequence[int]) -> bool:
        diff = [a - b for a, b in zip(lam, mu)]
        x = self.root_coords(diff)
        return all(c.denominator == 1 and c >= 0 for c in x)

    @cached_property
    def weyl_matrices(self) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
        """All Weyl group elements as integer matrices on fundamental coordinates."""
        return tuple(w for w in self._weyl_bfs()[0])

    def _weyl_bfs(self):
        r = self.rank
        ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        gens = []
        for i in range(r):
            cols = [self.reflect(i, tuple(int(k == j) for k in range(r))) for j in range(r)]
            gens.append(tuple(tuple(cols[j][k] for j in range(r)) for k in range(r)))
        seen = {ident: 0}
        order = [ident]
        words = {ident: ()}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for i, g in enumerate(gens):
                    m = _matmul(g, w)
                    if m not in seen:
                        seen[m] = len(order)
                        order.append(m)
                        words[m] = (i,) + words[w]
                        nxt.append(m)
            frontier = nxt
        return order, words, gens

    @cached_property
    def weyl_order(self) -> int:
        return len(self.weyl_matrices)

    @cached_property
    def longest_length(self) -> int:
        return len(self.positive_roots)

    def orbit(self, lam: Sequence[int]) -> Tuple[Vec, ...]:
        lam = tuple(lam)
        seen = {lam}
        frontier = [lam]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.rank):
                    u = self.reflect(i, v)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return tuple(sorted(seen))

    def lowest_to_highest_word(self) -> Tuple[int, ...]:
        """A reduced word for the longest element w_0."""
        order, words, _ = self._weyl_bfs()
        return words[order[-1]]

    def check_invariants(self) -> None:
        """Raise AssertionError if a structural invariant fails."""
        c, r = self.cartan, self.rank
        for i in range(r):
            assert c[i][i] == 2
            for j in range(r):
                if i != j:
                    assert c[i][j] <= 0
                    assert (c[i][j] == 0) == (c[j][i] == 0)
        pos = set(self.positive_roots)
        for i in range(r):
            simple = tuple(int(k == i) for k in range(r))
            for beta in pos:
                img = self.reflect_root(i, beta)
                if beta == simple:
                    assert img == tuple(-x for x in simple)
                else:
                    assert img in pos
        assert pos == set(orbit_closure_roots(self.cartan))

    def reflect_root(self, i: int, k: Sequence[int]) -> Vec:
        """s_i applied to a root-lattice vector in simple-root coordinates."""
        a = sum(self.cartan[i][j] * k[j] for j in range(self.rank))
        out = list(k)
        out[i] -= a
        return tuple(out)


def orbit_closure_roots(cartan) -> Tuple[Vec, ...]:
    """Positive roots as the W-orbit of the simple roots (brute force)."""
    r = len(cartan)

    def refl(i, k):
        a = sum(cartan[i][j] * k[j] for j in range(r))
        out = list(k)
        out[i] -= a
        return tuple(out)

    seen = {tuple(int(i == j) for j in range(r)) for i in range(r)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for k in frontier:
            for i in range(r):
                u = refl(i, k)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return tuple(sorted(k for k in seen if all(x >= 0 for x in k)))


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _check_cartan(c):
    if any(len(row) != len(c) for row in c):
        raise UnsupportedDatumError("Cartan matrix must be square")


@dataclass(frozen=True)
class RootDatum:
    """Root datum of G together with the chosen cocharacter lattice.

    ``lattice == "coweight"``: X_*(T) is the full coweight lattice of G
    (G adjoint, G^vee simply connected, every integral weight of G^vee is
    allowed).  ``lattice == "coroot"``: X_*(T) is the coroot lattice of G
    (G simply connected, only root-lattice weights of G^vee).
    """

    label: str
    cartan: Tuple[Tuple[int, ...], ...]
    lattice: str = "coweight"
    _system: RootSystem = field(init=False, repr=False, compare=False)
    _dual_system: RootSystem = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.lattice not in LATTICES:
            raise UnsupportedDatumError(f"unknown lattice {self.lattice!r}; use one of {LATTICES}")
        object.__setattr__(self, "_system", RootSystem(self.cartan))
        object.__setattr__(self, "_dual_system", RootSystem(_transpose(self.cartan)))

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def system(self) -> RootSystem:
        """Root system of G."""
        return self._system

    @property
    def dual_system(self) -> RootSystem:
        """Root system of G^vee (Cartan matrix transposed)."""
        return self._dual_system

    def dual(self) -> "RootDatum":
        other = "coroot" if self.lattice == "coweight" else "coweight"
        return RootDatum(_DUAL_LABEL.get(self.label, self.label), _transpose(self.cartan), other)

    def with_lattice(self, lattice: str) -> "RootDatum":
        return RootDatum(self.label, self.cartan, lattice)

    # data on the G side
    @property
    def positive_roots(self):
        return self.system.positive_roots

    @property
    def positive_coroots(self):
        return self.system.positive_coroots

    @property
    def rho(self):
        return self.dual_system.rho

    @property
    def h_coeffs(self) -> Vec:
        """h in the dual Cartan: sum of positive coroots of G^vee."""
        return self.dual_system.h_coeffs

    def weight_h(self, lam: Sequence[int]) -> int:
        return self.dual_system.height_h(lam)

    def check_weight(self, lam: Sequence[int]) -> Vec:
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.rank:
            raise WeightError(f"{self.label} weights have {self.rank} coordinates, got {len(lam)}")
        if self.lattice == "coroot" and not self.dual_system.in_root_lattice(lam):
            raise WeightError(f"{lam} is not in the coroot lattice of {self.label}")
        return lam

    def component(self, lam) -> Tuple[Fraction, ...]:
        return self.dual_system.component(lam)

    @cached_property
    def component_group(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """Elements of X_*(T) / (coroot lattice of G) as fractional-part tags."""
        if self.lattice == "coroot":
            return (tuple(Fraction(0) for _ in range(self.rank)),)
        det = abs(int(_det_int(self.cartan)))
        tags = {self.component(v) for v in product(range(det), repeat=self.rank)}
        return tuple(sorted(tags))

    def check_invariants(self) -> None:
        self.system.check_invariants()
        self.dual_system.check_invariants()
        assert self.dual().dual() == self
        # coroots of G are the roots of G^vee
        assert set(self.system.positive_coroots) == set(self.dual_system.positive_roots)


def _det_int(m) -> int:
    from .linalg import determinant
    return int(determinant(m))


def build_root_datum(label: str, lattice: str = "coweight") -> RootDatum:
    """Root datum for a supported label (A1, A2, A3, B2, C2, G2)."""
    key = label.strip().upper()
    if key not in CARTAN_MATRICES:
        raise UnsupportedDatumError(
            f"unsupported datum {label!r}; supported: {', '.join(CARTAN_MATRICES)}")
    return RootDatum(key, CARTAN_MATRICES[key], lattice)


def dominance_leq(datum: RootDatum, mu: Sequence[int], lam: Sequence[int]) -> bool:
    """mu <= lam: lam - mu is a non-negative sum of simple roots of G^vee."""
    return datum.dual_system.dominance_leq(mu, lam)


@dataclass(frozen=True)
class OrbitInfo:
    orbit: Tuple[Vec, ...]
    dominant: Vec
    # element -> word w (indices of simple reflections, leftmost first)
    # with s_{w[0]} ... s_{w[-1]} (dominant) == element
    witness: Dict[Vec, Tuple[int, ...]]

    @property
    def stabilizer_order(self) -> int:
        return self._weyl_order // len(self.orbit)

    _weyl_order: int = 1


def weyl_orbit(datum: RootDatum, lam: Sequence[int]) -> OrbitInfo:
    sysv = datum.dual_system
    lam = tuple(lam)
    dom, _ = sysv.dominant_rep(lam)
    witness: Dict[Vec, Tuple[int, ...]] = {dom: ()}
    frontier = [dom]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(sysv.rank):
                u = sysv.reflect(i, v)
                if u not in witness:
                    witness[u] = (i,) + witness[v]
                    nxt.append(u)
        frontier = nxt
    return OrbitInfo(tuple(sorted(witness)), dom, witness, sysv.weyl_order)


def dominant_weights(datum: RootDatum, max_h: int, component=None) -> List[Vec]:
    """Dominant weights lam with lam(h) <= max_h, sorted by (lam(h), lam)."""
    sysv = datum.dual_system
    hc = sysv.h_coeffs
    bounds = [max_h // c for c in hc]
    out = []
    for lam in product(*(range(b + 1) for b in bounds)):
        if sysv.height_h(lam) > max_h:
            continue
        if datum.lattice == "coroot" and not sysv.in_root_lattice(lam):
            continue
        if component is not None and sysv.component(lam) != tuple(component):
            continue
        out.append(tuple(lam))
    return sorted(out, key=lambda v: (sysv.height_h(v), v))


def parse_weight(text: str) -> Vec:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise WeightError(f"malformed weight coordinates {text!r}; expected e.g. 1,0") from None
