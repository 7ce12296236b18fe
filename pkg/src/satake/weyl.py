"""Finite and (extended) affine Weyl groups, Bruhat order, coset representatives.

The affine group is ``W_e = W x| X`` where ``X`` is the cocharacter lattice of
the datum, realized as weights of G^vee.  An element ``t_lam * w`` acts on the
weight space by ``v -> w(v) + lam``.  Its length is the number of affine
hyperplanes ``{<v, a^vee> = k}`` separating the fundamental alcove from its
image, which gives::

    l(t_lam w) = sum_{a > 0} | <lam, a^vee> - [w^-1 a < 0] |

Translations by the root lattice of G^vee form the Coxeter group W_a; the
quotient ``W_e / W_a`` is the length-zero group Omega, and the component of an
element is the coset of its translation part.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from .errors import WeightError
from .rootdata import RootDatum, Vec, _matmul


@dataclass(frozen=True)
class AffineElt:
    """``t_lam * W[w]`` inside the affine Weyl group of ``group``."""

    group: "AffineWeylGroup"
    w: int
    lam: Vec

    def __mul__(self, other: "AffineElt") -> "AffineElt":
        return self.group.multiply(self, other)

    @property
    def length(self) -> int:
        return self.group.length(self)

    @property
    def component(self) -> Tuple[Fraction, ...]:
        return self.group.component(self)

    def key(self) -> str:
        return self.group.serialize(self)

    def __repr__(self):
        return f"AffineElt(w={self.group.finite_words[self.w]}, lam={self.lam})"


_GROUPS: Dict[RootDatum, "AffineWeylGroup"] = {}
_GROUPS_LOCK = threading.Lock()


def affine_weyl_group(datum: RootDatum) -> "AffineWeylGroup":
    """Shared group instance per datum (caches live on the instance)."""
    with _GROUPS_LOCK:
        g = _GROUPS.get(datum)
        if g is None:
            g = _GROUPS[datum] = AffineWeylGroup(datum)
        return g


class AffineWeylGroup:
    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.system = sysv = datum.dual_system
        self.rank = r = sysv.rank
        order, words, gens = sysv._weyl_bfs()
        self.finite = order
        self.index = {m: i for i, m in enumerate(order)}
        self.finite_words: List[Tuple[int, ...]] = [words[m] for m in order]
        nW = len(order)
        self._mul = [[self.index[_matmul(a, b)] for b in order] for a in order]
        ident = order[0]
        self._inv = [next(j for j in range(nW) if self._mul[i][j] == 0) for i in range(nW)]
        assert order[0] == ident
        self.roots = sysv.positive_roots
        self.coroots = sysv.positive_coroots
        self._root_weights = [sysv.weight_of_root(k) for k in self.roots]
        # neg[w] = indices a with w^-1(a) < 0
        self._neg: List[FrozenSet[int]] = []
        for i in range(nW):
            winv = order[self._inv[i]]
            s = set()
            for a, rw in enumerate(self._root_weights):
                img = _apply(winv, rw)
                rc = sysv.root_coords(img)
                if any(c < 0 for c in rc):
                    s.add(a)
            self._neg.append(frozenset(s))
        self.finite_length = [len(n) for n in self._neg]
        self.w0 = max(range(nW), key=lambda i: self.finite_length[i])
        # affine simple reflections; index 0 is the affine node
        a0 = max(range(len(self.roots)), key=lambda a: sum(self.coroots[a]))
        self.affine_root = self.roots[a0]
        a0w = self._root_weights[a0]
        a0c = self.coroots[a0]
        refl_cols = []
        for j in range(r):
            e = tuple(int(k == j) for k in range(r))
            p = sysv.pair(e, a0c)
            refl_cols.append(tuple(e[k] - p * a0w[k] for k in range(r)))
        refl = tuple(tuple(refl_cols[j][k] for j in range(r)) for k in range(r))
        self.simple: List[AffineElt] = [AffineElt(self, self.index[refl], tuple(a0w))]
        for i in range(r):
            self.simple.append(AffineElt(self, self.index[gens[i]], tuple(0 for _ in range(r))))
        self.identity = AffineElt(self, 0, tuple(0 for _ in range(r)))
        self._length: Dict[AffineElt, int] = {}
        self._bruhat: Dict[Tuple[AffineElt, AffineElt], bool] = {}
        self._ideal: Dict[AffineElt, FrozenSet[AffineElt]] = {}
        self._lock = threading.RLock()

    def __repr__(self):
        return f"AffineWeylGroup({self.datum.label}, {self.datum.lattice})"

    # --- construction ------------------------------------------------------
    def element(self, w: int | Sequence[int] = 0, lam: Sequence[int] | None = None) -> AffineElt:
        """``t_lam * w``; ``w`` is a W index or a word in finite simple reflections."""
        if lam is None:
            lam = (0,) * self.rank
        lam = self.datum.check_weight(lam)
        if not isinstance(w, int):
            idx = 0
            for i in w:
                idx = self._mul[idx][self.simple[i + 1].w]
            w = idx
        return AffineElt(self, w, lam)

    def translation(self, lam: Sequence[int]) -> AffineElt:
        return self.element(0, lam)

    def from_word(self, word: Sequence[int], omega: AffineElt | None = None) -> AffineElt:
        """Product ``s_word[0] ... s_word[-1] (omega)``; index 0 is the affine node."""
        x = self.identity if omega is None else omega
        for i in reversed(word):
            x = self.multiply(self.simple[i], x)
        return x

    # --- group law -----------------------------------------------------------
    def multiply(self, x: AffineElt, y: AffineElt) -> AffineElt:
        if x.group is not self or y.group is not self:
            if x.group.datum != self.datum or y.group.datum != self.datum:
                raise ValueError("affine elements from different root data")
        wm = self.finite[x.w]
        mu = _apply(wm, y.lam)
        return AffineElt(self, self._mul[x.w][y.w], tuple(a + b for a, b in zip(x.lam, mu)))

    def inverse(self, x: AffineElt) -> AffineElt:
        wi = self._inv[x.w]
        lam = _apply(self.finite[wi], x.lam)
        return AffineElt(self, wi, tuple(-a for a in lam))

    # --- length, components ---------------------------------------------------
    def length(self, x: AffineElt) -> int:
        n = self._length.get(x)
        if n is None:
            neg = self._neg[x.w]
            n = 0
            for a, cv in enumerate(self.coroots):
                p = sum(u * v for u, v in zip(x.lam, cv))
                n += abs(p - (1 if a in neg else 0))
            self._length[x] = n
        return n

    def component(self, x: AffineElt) -> Tuple[Fraction, ...]:
        return self.system.component(x.lam)

    def left_descents(self, x: AffineElt) -> List[int]:
        lx = self.length(x)
        return [i for i, s in enumerate(self.simple) if self.length(self.multiply(s, x)) < lx]

    def right_descents(self, x: AffineElt) -> List[int]:
        lx = self.length(x)
        return [i for i, s in enumerate(self.simple) if self.length(self.multiply(x, s)) < lx]

    def reduced_word(self, x: AffineElt) -> Tuple[Tuple[int, ...], AffineElt]:
        """``(word, omega)`` with x = s_word[0] ... s_word[-1] * omega, omega of length 0.

        Greedy by smallest left-descent index, so the word is canonical.
        """
        word = []
        while True:
            d = self.left_descents(x)
            if not d:
                return tuple(word), x
            word.append(d[0])
            x = self.multiply(self.simple[d[0]], x)

    def serialize(self, x: AffineElt) -> str:
        """Canonical key ``omega-tag|translation|finite reduced word``."""
        tag = ",".join(str(c) for c in self.component(x))
        lam = ",".join(str(v) for v in x.lam)
        word = ",".join(str(i + 1) for i in self.finite_words[x.w])
        return f"{tag}|{lam}|{word}"

    def deserialize(self, key: str) -> AffineElt:
        _tag, lam, word = key.split("|")
        lam = tuple(int(v) for v in lam.split(",")) if lam else ()
        word = tuple(int(v) - 1 for v in word.split(",")) if word else ()
        idx = 0
        for i in word:
            idx = self._mul[idx][self.simple[i + 1].w]
        return AffineElt(self, idx, lam)

    # --- Bruhat order ---------------------------------------------------------
    def bruhat_leq(self, x: AffineElt, y: AffineElt) -> bool:
        """x <= y; elements of different components are incomparable."""
        if x == y:
            return True
        if self.component(x) != self.component(y):
            return False
        lx, ly = self.length(x), self.length(y)
        if lx >= ly:
            return False
        key = (x, y)
        got = self._bruhat.get(key)
        if got is not None:
            return got
        s = self.left_descents(y)[0]
        sy = self.multiply(self.simple[s], y)
        sx = self.multiply(self.simple[s], x)
        if self.length(sx) < lx:
            res = self.bruhat_leq(sx, sy)
        else:
            res = self.bruhat_leq(x, sy)
        self._bruhat[key] = res
        return res

    def lower_ideal(self, y: AffineElt) -> FrozenSet[AffineElt]:
        """All z <= y (lifting property: [e, y] = [e, sy] u s[e, sy])."""
        got = self._ideal.get(y)
        if got is not None:
            return got
        d = self.left_descents(y)
        if not d:
            res = frozenset([y])
        else:
            s = self.simple[d[0]]
            below = self.lower_ideal(self.multiply(s, y))
            res = frozenset(below | {self.multiply(s, z) for z in below})
        with self._lock:
            self._ideal[y] = res
        return res

    def interval(self, x: AffineElt, y: AffineElt) -> List[AffineElt]:
        return sorted((z for z in self.lower_ideal(y) if self.bruhat_leq(x, z)),
                      key=self.sort_key)

    def sort_key(self, x: AffineElt):
        return (self.length(x), x.lam, x.w)

    def elements_up_to(self, max_len: int, component=None) -> List[AffineElt]:
        """All elements of length <= max_len (optionally in one component)."""
        omegas = self.length_zero_elements()
        seen = set(omegas)
        frontier = list(omegas)
        while frontier:
            nxt = []
            for x in frontier:
                for s in self.simple:
                    y = self.multiply(s, x)
                    if y not in seen and self.length(y) <= max_len:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        out = [x for x in seen if component is None or self.component(x) == tuple(component)]
        return sorted(out, key=self.sort_key)

    def length_zero_elements(self) -> List[AffineElt]:
        """Omega: one length-zero element per component of the lattice."""
        out = []
        for tag in self.datum.component_group:
            # minuscule-style search: t_lam w with lam in the coset, small box
            found = None
            for lam in _box(self.rank, 2):
                if self.system.component(lam) != tag:
                    continue
                if self.datum.lattice == "coroot" and not self.system.in_root_lattice(lam):
                    continue
                for w in range(len(self.finite)):
                    x = AffineElt(self, w, lam)
                    if self.length(x) == 0:
                        found = x
                        break
                if found:
                    break
            if found is None:
                raise RuntimeError(f"no length-zero element found for component {tag}")
            out.append(found)
        return out

    # --- double cosets ------------------------------------------------------
    def max_coset_rep(self, lam: Sequence[int]) -> AffineElt:
        """w(lam): the longest element of W t_lam W, certified maximal."""
        lam = self.datum.check_weight(lam)
        if not self.system.is_dominant(lam):
            raise WeightError(f"max_coset_rep needs a dominant weight, got {lam}")
        t = self.translation(lam)
        best = None
        coset = set()
        for u in range(len(self.finite)):
            ut = self.multiply(AffineElt(self, u, (0,) * self.rank), t)
            for v in range(len(self.finite)):
                coset.add(self.multiply(ut, AffineElt(self, v, (0,) * self.rank)))
        lmax = max(self.length(x) for x in coset)
        tops = [x for x in coset if self.length(x) == lmax]
        if len(tops) != 1:
            raise AssertionError(f"double coset of {lam} has {len(tops)} maximal elements")
        best = tops[0]
        finite_simple = set(range(1, self.rank + 1))
        if not (finite_simple <= set(self.left_descents(best))
                and finite_simple <= set(self.right_descents(best))):
            raise AssertionError(f"w({lam}) fails the descent certificate")
        expected = self.system.height_h(lam) + self.finite_length[self.w0]
        if lmax != expected:
            raise AssertionError(f"length of w({lam}) is {lmax}, expected {expected}")
        return best

    def finite_element(self, w: int) -> AffineElt:
        return AffineElt(self, w, (0,) * self.rank)

    def longest_finite(self) -> AffineElt:
        return self.finite_element(self.w0)


def _apply(m, v) -> Vec:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def _box(r: int, b: int) -> Iterator[Vec]:
    from itertools import product
    vals = sorted(range(-b, b + 1), key=lambda x: (abs(x), x))
    yield from sorted(product(vals, repeat=r), key=lambda v: (sum(map(abs, v)), v))
