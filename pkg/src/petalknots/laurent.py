"""Exact Laurent polynomials with integer coefficients.

Exponents are stored as integers ``e`` standing for ``var**(e / den)``;
``den = 2`` lets the Jones polynomial of a link carry half-integer powers
of ``t``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping


class LaurentPolynomial:
    __slots__ = ("coeffs", "var", "den")

    def __init__(self, coeffs: Mapping[int, int] | None = None, var: str = "A", den: int = 1):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}
        self.var = var
        self.den = den

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, var: str = "A", den: int = 1):
        return cls({exponent: coeff}, var, den)

    @classmethod
    def constant(cls, c: int, var: str = "A", den: int = 1):
        return cls({0: c}, var, den)

    def _like(self, coeffs) -> "LaurentPolynomial":
        return LaurentPolynomial(coeffs, self.var, self.den)

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if (other.var, other.den) != (self.var, self.den):
                raise ValueError("mismatched polynomial rings")
            return other
        if isinstance(other, int):
            return self._like({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.coeffs.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return self._like({e * k: c ** (-k)})
        result = self._like({0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``var**(k / den)``."""
        return self._like({e + k: c for e, c in self.coeffs.items()})

    def divexact(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact division; raises if ``other`` does not divide ``self``."""
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self.coeffs)
        lead_e = max(other.coeffs)
        lead_c = other.coeffs[lead_e]
        low_e = min(other.coeffs)
        quotient: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top - lead_e + low_e < min(rem):
                break
            q, r = divmod(rem[top], lead_c)
            if r:
                raise ValueError("inexact division")
            shift = top - lead_e
            quotient[shift] = q
            for e, c in other.coeffs.items():
                rem[e + shift] = rem.get(e + shift, 0) - q * c
                if rem[e + shift] == 0:
                    del rem[e + shift]
        if rem:
            raise ValueError("inexact division")
        return self._like(quotient)

    def substitute_inverse(self) -> "LaurentPolynomial":
        """``var -> var**-1``."""
        return self._like({-e: c for e, c in self.coeffs.items()})

    def evaluate(self, x):
        """Evaluate at ``x``, where ``x`` is the value of ``var**(1/den)``."""
        if isinstance(x, int):
            x = Fraction(x)
        return sum((c * x**e for e, c in self.coeffs.items()), 0)

    def is_one(self) -> bool:
        return self.coeffs == {0: 1}

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._like({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return (self.var, self.den, self.coeffs) == (other.var, other.den, other.coeffs)

    def __hash__(self):
        return hash((self.var, self.den, tuple(sorted(self.coeffs.items()))))

    def _power_text(self, e: int) -> str:
        if e % self.den == 0:
            p = e // self.den
            return "" if p == 0 else self.var if p == 1 else f"{self.var}^{p}"
        return f"{self.var}^({e}/{self.den})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            mono = self._power_text(e)
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self})"
