"""Integer Laurent polynomials in one variable ``t``.

Coefficients are Python ints, so arithmetic never overflows.  A polynomial is
stored as a sorted tuple of ``(exponent, coefficient)`` pairs with no zero
coefficients; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    # constructors ---------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, c: int, e: int) -> LaurentPoly:
        return cls({e: c})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], low: int = 0) -> LaurentPoly:
        """Build ``sum(coeffs[i] * t**(low + i))``."""
        return cls((low + i, c) for i, c in enumerate(coeffs))

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> LaurentPoly:
        return cls({int(e): int(c) for e, c in data.items()})

    # basic queries --------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """True for ``±t**k``, the units of Z[t, 1/t]."""
        return len(self._terms) == 1 and abs(self._terms[0][1]) == 1

    @property
    def low(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return self._terms[0][0]

    @property
    def high(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return self._terms[-1][0]

    def span(self) -> int:
        """Difference between the highest and lowest exponent."""
        return self.high - self.low

    def coeffs(self) -> list[int]:
        """Dense coefficient list from the lowest exponent upward."""
        if not self._terms:
            return []
        out = [0] * (self.span() + 1)
        lo = self.low
        for e, c in self._terms:
            out[e - lo] = c
        return out

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self._terms}

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        return LaurentPoly(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return _coerce(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t**k``."""
        return LaurentPoly((e + k, c) for e, c in self._terms)

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Quotient ``self / other``; raises ValueError if it is not exact."""
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        if other.is_unit():
            (e0, c0), = other._terms
            return LaurentPoly((e - e0, c * c0) for e, c in self._terms)
        num = self.coeffs()
        den = other.coeffs()
        lead = den[-1]
        q = [0] * max(len(num) - len(den) + 1, 0)
        for i in range(len(num) - len(den), -1, -1):
            c, r = divmod(num[i + len(den) - 1], lead)
            if r:
                raise ValueError("inexact Laurent division")
            q[i] = c
            if c:
                for j, d in enumerate(den):
                    num[i + j] -= c * d
        if any(num):
            raise ValueError("inexact Laurent division")
        return LaurentPoly.from_coeffs(q, self.low - other.low)

    def __call__(self, x: int) -> int:
        return self.eval_at_integer(x)

    def eval_at_integer(self, x: int) -> int:
        if x == 0 and self._terms and self.low < 0:
            raise ZeroDivisionError("negative exponent evaluated at 0")
        total = 0
        for e, c in self._terms:
            if e >= 0:
                total += c * x**e
            else:
                # only ±1 keep negative powers integral
                if abs(x) != 1:
                    raise ValueError("negative exponent needs x = ±1")
                total += c * x ** (-e)
        return total

    # normal forms ---------------------------------------------------------

    def normalize(self) -> LaurentPoly:
        """Canonical representative up to ``±t**k``.

        Lowest exponent becomes 0 and the leading coefficient is positive.
        """
        if not self._terms:
            return self
        lo = self.low
        sign = -1 if self._terms[-1][1] < 0 else 1
        return LaurentPoly((e - lo, sign * c) for e, c in self._terms)

    def reverse(self) -> LaurentPoly:
        """Substitute ``t -> 1/t``."""
        return LaurentPoly((-e, c) for e, c in self._terms)

    def is_palindromic(self) -> bool:
        return self.reverse().normalize() == self.normalize()

    # dunder plumbing ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self._terms)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = "t" if e == 1 else f"t^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(x: LaurentPoly | int) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a Laurent polynomial")


T = LaurentPoly.monomial(1, 1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def bareiss_det(matrix: list[list[LaurentPoly]]) -> LaurentPoly:
    """Determinant by fraction-free (Bareiss) elimination over Z[t, 1/t].

    Every intermediate division is exact, so no fractions ever appear.
    """
    n = len(matrix)
    if n == 0:
        return ONE
    m = [list(row) for row in matrix]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = ZERO
        prev = pivot
    return m[n - 1][n - 1] * sign
