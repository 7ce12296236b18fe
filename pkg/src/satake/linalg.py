"""Exact rational linear algebra on sparse vectors.

Vectors are ``dict`` maps index -> Fraction with no stored zeros; matrices are
either lists of such rows or column-operator dicts (see :class:`SparseOp`).
Everything is over ``fractions.Fraction``; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

SVec = Dict[Hashable, Fraction]


def svec(items) -> SVec:
    out: SVec = {}
    for k, v in (items.items() if isinstance(items, dict) else items):
        if v:
            out[k] = out.get(k, Fraction(0)) + Fraction(v)
    return {k: v for k, v in out.items() if v}


def vadd(a: SVec, b: SVec, scale=1) -> SVec:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vscale(a: SVec, c) -> SVec:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    Each inserted vector that is independent of the previous ones becomes a
    basis element; :meth:`express` writes any vector of the span in terms of
    the *inserted* independent vectors (not the internal reduced rows).
    """

    def __init__(self):
        # pivot -> (reduced row, combination over inserted basis indices)
        self._rows: Dict[Hashable, Tuple[SVec, SVec]] = {}
        self._order: List[Hashable] = []
        self.basis: List[SVec] = []

    def __len__(self):
        return len(self.basis)

    def _reduce(self, v: SVec) -> Tuple[SVec, SVec]:
        v = dict(v)
        combo: SVec = {}
        for p in self._order:
            c = v.get(p)
            if c:
                row, rc = self._rows[p]
                v = vadd(v, row, -c)
                combo = vadd(combo, rc, c)
        return v, combo

    def add(self, v: SVec) -> bool:
        """Insert ``v``; return True iff it enlarged the span."""
        resid, combo = self._reduce(v)
        if not resid:
            return False
        idx = len(self.basis)
        self.basis.append(dict(v))
        # resid = v - sum combo_j basis_j
        rc = vadd({idx: Fraction(1)}, combo, -1)
        p = min(resid, key=_sort_key)
        c = resid[p]
        row = vscale(resid, 1 / c)
        rc = vscale(rc, 1 / c)
        # keep rows fully reduced in the new pivot column
        for q in self._order:
            r, qc = self._rows[q]
            f = r.get(p)
            if f:
                self._rows[q] = (vadd(r, row, -f), vadd(qc, rc, -f))
        self._rows[p] = (row, rc)
        self._order.append(p)
        return True

    def contains(self, v: SVec) -> bool:
        return not self._reduce(v)[0]

    def express(self, v: SVec) -> Optional[SVec]:
        """Coefficients of ``v`` over inserted basis vectors, or None."""
        resid, combo = self._reduce(v)
        if resid:
            return None
        return combo


def _sort_key(k):
    return (str(type(k)), k) if not isinstance(k, (int, tuple)) else (0, k)


def rank(vectors: Iterable[SVec]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def independent_subset(vectors: Sequence[SVec]) -> List[int]:
    """Indices of a greedy (first-come) maximal independent subset."""
    ech = Echelon()
    return [i for i, v in enumerate(vectors) if ech.add(v)]


def nullspace(columns: Sequence[SVec]) -> List[SVec]:
    """Basis of {x : sum_j x_j * columns[j] = 0}, as sparse vectors over j.

    Free variables get coefficient 1 in their own slot, so the basis is in
    reduced form and deterministic for a fixed column order.
    """
    ech = Echelon()
    pivots: List[int] = []
    out: List[SVec] = []
    for j, col in enumerate(columns):
        combo = ech.express(col)
        if combo is None:
            ech.add(col)
            pivots.append(j)
        else:
            vec = {j: Fraction(1)}
            for bi, c in combo.items():
                vec[pivots[bi]] = -c
            out.append(svec(vec))
    return out


def to_dense(rows: Sequence[SVec], ncols: int) -> List[List[Fraction]]:
    return [[r.get(j, Fraction(0)) for j in range(ncols)] for r in rows]


def determinant(mat: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-preserving Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            if f:
                for c in range(i, n):
                    m[r][c] -= f * m[i][c]
    return det


def inverse(mat: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(mat)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[i], m[piv] = m[piv], m[i]
        p = m[i][i]
        m[i] = [x / p for x in m[i]]
        for r in range(n):
            if r != i and m[r][i]:
                f = m[r][i]
                m[r] = [a - f * b for a, b in zip(m[r], m[i])]
    return [row[n:] for row in m]


class SparseOp:
    """Linear operator stored column-wise: ``cols[j]`` is the image of e_j."""

    __slots__ = ("cols", "dim_in", "dim_out")

    def __init__(self, cols: Dict[int, SVec], dim_in: int, dim_out: int):
        self.cols = {j: c for j, c in cols.items() if c}
        self.dim_in = dim_in
        self.dim_out = dim_out

    @classmethod
    def zero(cls, dim_in, dim_out):
        return cls({}, dim_in, dim_out)

    @classmethod
    def identity(cls, dim):
        return cls({j: {j: Fraction(1)} for j in range(dim)}, dim, dim)

    def apply(self, v: SVec) -> SVec:
        out: SVec = {}
        for j, c in v.items():
            col = self.cols.get(j)
            if col:
                for i, a in col.items():
                    s = out.get(i, 0) + a * c
                    if s:
                        out[i] = s
                    else:
                        del out[i]
        return out

    def __matmul__(self, other: "SparseOp") -> "SparseOp":
        return SparseOp({j: self.apply(c) for j, c in other.cols.items()},
                        other.dim_in, self.dim_out)

    def __add__(self, other: "SparseOp") -> "SparseOp":
        cols = dict(self.cols)
        for j, c in other.cols.items():
            cols[j] = vadd(cols.get(j, {}), c)
        return SparseOp(cols, self.dim_in, self.dim_out)

    def scale(self, c) -> "SparseOp":
        return SparseOp({j: vscale(v, c) for j, v in self.cols.items()},
                        self.dim_in, self.dim_out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def bracket(self, other: "SparseOp") -> "SparseOp":
        return (self @ other) - (other @ self)

    def entry(self, i, j) -> Fraction:
        return self.cols.get(j, {}).get(i, Fraction(0))

    def is_zero(self) -> bool:
        return not self.cols

    def flat(self) -> SVec:
        """Entries as a sparse vector keyed by (row, col)."""
        return {(i, j): a for j, c in self.cols.items() for i, a in c.items()}

    def dense(self) -> List[List[Fraction]]:
        return [[self.entry(i, j) for j in range(self.dim_in)]
                for i in range(self.dim_out)]

    def __eq__(self, other):
        return (isinstance(other, SparseOp) and self.dim_in == other.dim_in
                and self.dim_out == other.dim_out and self.cols == other.cols)

    def __repr__(self):
        return f"SparseOp({self.dim_out}x{self.dim_in}, nnz={sum(map(len, self.cols.values()))})"
