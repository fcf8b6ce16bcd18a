"""Exact arithmetic: Laurent polynomials with half-integer exponents and residues.

Exponents are stored doubled, so ``t^(1/2)`` is the key ``1`` and ``t^3`` the
key ``6``.  Coefficients are Python integers (arbitrary precision).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "Rational",
    "Residue",
    "laurent_arith",
    "substitute_power",
    "derivative_at_one",
    "residue_of",
]

Rational = Fraction


class LaurentPoly:
    """Integer Laurent polynomial in one variable, exponents in halves."""

    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "t"):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
        self._terms = dict(sorted(clean.items()))
        self.var = var
        self._hash = None

    # construction helpers
    @classmethod
    def monomial(cls, exponent, coeff: int = 1, var: str = "t") -> "LaurentPoly":
        """``coeff * var**exponent``; ``exponent`` may be a half-integer."""
        return cls({_double(exponent): coeff}, var)

    @classmethod
    def constant(cls, c: int, var: str = "t") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def from_exponents(cls, mapping: Mapping, var: str = "t") -> "LaurentPoly":
        """Build from ``{true_exponent: coeff}`` (ints, Fractions or floats like 0.5)."""
        return cls({_double(e): c for e, c in mapping.items()}, var)

    @property
    def terms(self) -> dict[int, int]:
        """Doubled exponent -> coefficient (a copy)."""
        return dict(self._terms)

    def coefficients(self) -> dict[Fraction, int]:
        """True exponent -> coefficient."""
        return {Fraction(e, 2): c for e, c in self._terms.items()}

    def coeff(self, exponent) -> int:
        return self._terms.get(_double(exponent), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def has_half_exponents(self) -> bool:
        return any(e % 2 for e in self._terms)

    def span(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        keys = list(self._terms)
        return Fraction(keys[-1] - keys[0], 2)

    def __len__(self) -> int:
        return len(self._terms)

    # arithmetic
    def _check(self, other: "LaurentPoly") -> None:
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                k = e1 + e2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial inverse needs a unit coefficient")
            return LaurentPoly({-e * -n: c ** -n}, self.var)
        result = LaurentPoly({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.var == other.var and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.var, tuple(self._terms.items())))
        return self._hash

    def evaluate(self, x):
        """Evaluate at ``x`` (needs integer exponents unless ``x`` has a square root)."""
        total = 0
        for e, c in self._terms.items():
            if e % 2:
                raise ValueError("half-integer exponent; cannot evaluate directly")
            total += c * Fraction(x) ** (e // 2)
        return total

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_poly(self)


def _double(exponent) -> int:
    twice = Fraction(exponent) * 2
    if twice.denominator != 1:
        raise ValueError(f"exponent {exponent} is not a multiple of 1/2")
    return int(twice)


def format_poly(p: LaurentPoly) -> str:
    """Render ascending, e.g. ``-t^-4 + t^-3 + t^-1`` or ``t^(3/2)``."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p._terms.items():
        if e == 0:
            mono = ""
        elif e == 2:
            mono = p.var
        elif e % 2 == 0:
            mono = f"{p.var}^{e // 2}"
        else:
            mono = f"{p.var}^({e}/2)"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}{mono}"
        else:
            body = str(mag)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def laurent_arith(p: LaurentPoly, q: LaurentPoly, op: str) -> LaurentPoly:
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials in the same variable."""
    p._check(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def substitute_power(p: LaurentPoly, k, new_var: str) -> LaurentPoly:
    """Replace ``var**e`` by ``new_var**(k*e)``.

    Raises ``ValueError`` when some ``k*e`` is not a multiple of 1/2.
    """
    k = Fraction(k)
    if k == 0:
        raise ValueError("k must be nonzero")
    out = {}
    for e, c in p._terms.items():
        out[_double(k * Fraction(e, 2))] = c
    return LaurentPoly(out, new_var)


def falling_factorial(e: int, k: int) -> int:
    r = 1
    for i in range(k):
        r *= e - i
    return r


def derivative_at_one(p: LaurentPoly, k: int) -> Fraction:
    """k-th derivative at 1: sum of ``c_e * e(e-1)...(e-k+1)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if p.has_half_exponents():
        raise ValueError("half-integer exponent present")
    return Fraction(sum(c * falling_factorial(e // 2, k) for e, c in p._terms.items()))


@dataclass(frozen=True)
class Residue:
    """An integer modulo ``modulus``; modulus 0 means the integer itself."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 0:
            raise ValueError("modulus must be nonnegative")
        if self.modulus and not 0 <= self.value < self.modulus:
            raise ValueError("value not normalized")

    def __str__(self):
        return f"{self.value} (mod {self.modulus})"


def residue_of(value: int, modulus: int) -> Residue:
    m = abs(int(modulus))
    v = int(value)
    return Residue(v % m if m else v, m)


def poly_sum(polys: Iterable[LaurentPoly], var: str = "t") -> LaurentPoly:
    out: dict[int, int] = {}
    for p in polys:
        for e, c in p._terms.items():
            out[e] = out.get(e, 0) + c
    return LaurentPoly(out, var)
