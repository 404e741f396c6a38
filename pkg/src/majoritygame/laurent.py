"""Integer Laurent polynomials and hyperderivative certificates.

The hyperderivative D(r) maps x^p to binomial(p, r) x^(p-r).  Unlike the
r-fold ordinary derivative it carries no r! factor, so evaluating a
hyperderivative keeps 2-adic valuations meaningful.  Final positions of
the comparison game admit a small certificate polynomial whose (e-1)-st
hyperderivative at -1 recovers the order-e signed count up to sign.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

from .core import Position, is_final, minority_capacity
from .statistics import binomial, potential


class LaurentPoly:
    """A finite map from integer exponents to integer coefficients.

    Zero coefficients are never stored, so the empty map is the zero
    polynomial and equality is plain map equality.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Union[Mapping[int, int], Iterable[tuple[int, int]]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for p, c in items:
            acc[p] = acc.get(p, 0) + c
        self._coeffs = {p: c for p, c in acc.items() if c}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs in increasing exponent order."""
        return sorted(self._coeffs.items())

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({p: -c for p, c in self._coeffs.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc = dict(self._coeffs)
        for p, c in other._coeffs.items():
            acc[p] = acc.get(p, 0) + c
        return LaurentPoly(acc)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc: dict[int, int] = {}
        for p, c in self._coeffs.items():
            for q, d in other._coeffs.items():
                acc[p + q] = acc.get(p + q, 0) + c * d
        return LaurentPoly(acc)

    def hyperderivative(self, r: int) -> "LaurentPoly":
        """Apply D(r): x^p -> binomial(p, r) x^(p-r), extended linearly."""
        if r < 0:
            raise ValueError(f"derivative order must be non-negative, got {r}")
        if r == 0:
            return self
        return LaurentPoly({p - r: binomial(p, r) * c for p, c in self._coeffs.items()})

    def eval_at_minus_one(self) -> int:
        """Sum of coefficients with sign (-1)^exponent."""
        return sum(-c if p % 2 else c for p, c in self._coeffs.items())

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        chunks: list[str] = []
        for p in sorted(self._coeffs, reverse=True):
            c = self._coeffs[p]
            mag = abs(c)
            if p == 0:
                body = str(mag)
            else:
                var = "x" if p == 1 else f"x^{p}"
                body = var if mag == 1 else f"{mag}{var}"
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"{'-' if c < 0 else '+'} {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self.terms())!r})"


def certificate_polynomial(M: Position, e: int) -> LaurentPoly:
    """x^(s+e-1) times the product of (1 + x^-w) over all but one largest element.

    Only defined for final positions.  Dropping one copy of the maximum
    keeps every exponent non-negative: the remaining elements weigh at
    most s + e - 1 in total.
    """
    if not is_final(M, e):
        raise ValueError(f"{M} is not final for excess {e}")
    s = minority_capacity(M, e)
    g = LaurentPoly.monomial(s + e - 1)
    for w in M.elements[1:]:
        g = g * (LaurentPoly.one() + LaurentPoly.monomial(-w))
    return g


def certificate_value(M: Position, e: int) -> int:
    """The (e-1)-st hyperderivative of the certificate, evaluated at -1.

    Equals (-1)^s times the order-e signed count of M, so both sides
    share one 2-adic valuation.
    """
    return certificate_polynomial(M, e).hyperderivative(e - 1).eval_at_minus_one()


def final_position_bound_holds(M: Position, e: int) -> bool:
    """Check potential(M, e) >= len(M) for a final position; INFINITE passes."""
    if not is_final(M, e):
        raise ValueError(f"{M} is not final for excess {e}")
    return potential(M, e) >= len(M)
