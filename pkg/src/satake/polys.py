"""Sparse univariate polynomials with exact integer coefficients.

Negative exponents are allowed, so the same class serves as the Laurent
ring Z[t, t^-1] used by the Hecke algebra.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Tuple


class IntPoly:
    """Immutable sparse polynomial ``{exponent: coefficient}``.

    Zero coefficients are never stored.  ``IntPoly()`` is zero.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[Tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: Dict[int, int] = {}
        for e, c in items:
            c = int(c)
            if c:
                acc[int(e)] = acc.get(int(e), 0) + c
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "IntPoly":
        return cls({e: c})

    @classmethod
    def one(cls) -> "IntPoly":
        return cls({0: 1})

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls()

    # inspection
    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(self._terms)

    @property
    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return min(self._terms)

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_laurent(self) -> bool:
        return any(e < 0 for e in self._terms)

    def is_constant(self) -> bool:
        return all(e == 0 for e in self._terms)

    def nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def is_palindromic(self) -> bool:
        """Symmetric under e -> valuation + degree - e."""
        if not self._terms:
            return True
        s = self.valuation + self.degree
        return all(self._terms.get(s - e) == c for e, c in self._terms.items())

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return IntPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        acc: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return IntPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = IntPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "IntPoly":
        """Multiply by the monomial of degree ``k``."""
        return IntPoly({e + k: c for e, c in self._terms.items()})

    def substitute_power(self, k: int) -> "IntPoly":
        """Return p(q^k); ``k`` may be negative (variable reversal)."""
        return IntPoly({e * k: c for e, c in self._terms.items()})

    def bar(self) -> "IntPoly":
        """The involution t -> t^-1."""
        return self.substitute_power(-1)

    def __call__(self, x):
        return sum(c * x ** e for e, c in self._terms.items())

    def divmod_exact(self, other: "IntPoly") -> "IntPoly":
        """Exact Laurent division; raises ``ArithmeticError`` if not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return IntPoly()
        rem = self
        quot: Dict[int, int] = {}
        lead_e, lead_c = other.degree, other.coeff(other.degree)
        floor = self.valuation - other.valuation
        while rem:
            e = rem.degree - lead_e
            c, r = divmod(rem.coeff(rem.degree), lead_c)
            if r or e < floor:
                raise ArithmeticError("inexact polynomial division")
            quot[e] = c
            rem = rem - other.shift(e) * c
        return IntPoly(quot)

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # serialization
    def to_json(self) -> Dict[str, int]:
        """String-exponent keyed mapping, ascending exponent order."""
        return {str(e): c for e, c in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "IntPoly":
        return cls({int(e): int(c) for e, c in data.items()})

    def __repr__(self):
        return f"IntPoly({self._terms})"

    def __str__(self):
        return self.pretty()

    def pretty(self, var: str = "q") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                base = var if e == 1 else f"{var}^{e}"
                mono = base if abs(c) == 1 else f"{abs(c)}*{base}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out


def _coerce(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to IntPoly")


ZERO = IntPoly()
ONE = IntPoly.one()
q = IntPoly.monomial(1)
