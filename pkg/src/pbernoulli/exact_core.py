"""Exact rational scalars and dense polynomials.

Scalars are :class:`fractions.Fraction` (always reduced, sign on the
numerator).  ``UniPoly`` is a dense univariate polynomial with ascending
coefficients; ``BiPoly`` is a polynomial in ``x`` whose coefficients are
``UniPoly`` objects in ``y``.  Both are immutable and hashable.

Wire forms (used by the CLI and JSON reports):

* Rational: ``"num/den"`` with the denominator omitted when it is 1.
* UniPoly: list of Rational strings, ascending degree; ``[]`` is zero.
* BiPoly: list of UniPoly wire forms, ascending power of ``x``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "UniPoly",
    "BiPoly",
    "ZERO_DEGREE",
    "binomial",
    "rational",
    "rational_to_wire",
    "poly_arith",
    "poly_compose_affine",
    "poly_derivative",
    "poly_definite_integral",
    "bipoly_partial_eval",
    "to_wire",
]

Rational = Fraction
Scalar = Union[int, Fraction]

#: Degree reported for the zero polynomial.
ZERO_DEGREE = -1


def rational(value: Union[Scalar, str]) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction.

    Floats are rejected: they would silently introduce rounding.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'num/den' string")
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def rational_to_wire(value: Scalar) -> str:
    return str(Fraction(value))


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0; zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


class UniPoly:
    """Dense polynomial with exact rational coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Union[Scalar, str]] = ()):
        object.__setattr__(self, "coeffs", _trim([rational(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def _raw(cls, coeffs: list[Fraction]) -> "UniPoly":
        # internal constructor: coefficients already Fractions
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", _trim(coeffs))
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "UniPoly":
        return cls._raw([Fraction(c)])

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> "UniPoly":
        return cls._raw([Fraction(0)] * degree + [Fraction(c)])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls.monomial(1)

    @classmethod
    def linear(cls, a: Scalar, b: Scalar) -> "UniPoly":
        """The polynomial ``a*x + b``."""
        return cls._raw([Fraction(b), Fraction(a)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __bool__(self):
        return bool(self.coeffs)

    # arithmetic

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return UniPoly._raw([c * a for a in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return UniPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "UniPoly":
        c = Fraction(c)
        return UniPoly._raw([a / c for a in self.coeffs])

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = UniPoly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # calculus and evaluation

    def __call__(self, value: Union[Scalar, "UniPoly"]):
        """Evaluate at a scalar, or compose with another polynomial."""
        if isinstance(value, UniPoly):
            acc = UniPoly()
            for c in reversed(self.coeffs):
                acc = acc * value + c
            return acc
        v = Fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "UniPoly":
        """Antiderivative with zero constant term."""
        return UniPoly._raw([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integrate(self, lo: Scalar, hi: Scalar) -> Fraction:
        F = self.antiderivative()
        return F(hi) - F(lo)

    def compose_affine(self, a: Scalar, b: Scalar) -> "UniPoly":
        """Return ``p(a*x + b)`` expanded exactly."""
        a, b = Fraction(a), Fraction(b)
        if a == 1 and b == 0:
            return self
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        a_pow = [Fraction(1)] * n
        b_pow = [Fraction(1)] * n
        for i in range(1, n):
            a_pow[i] = a_pow[i - 1] * a
            b_pow[i] = b_pow[i - 1] * b
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            for j in range(i + 1):
                out[j] += c * math.comb(i, j) * a_pow[j] * b_pow[i - j]
        return UniPoly._raw(out)

    def to_wire(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_wire(cls, data: Sequence[str]) -> "UniPoly":
        return cls(rational(s) for s in data)

    def pretty(self, var: str = "x") -> str:
        """Human-readable form in descending degree, e.g. ``x^2 - 2/3 x``."""
        terms = [(i, c) for i, c in enumerate(self.coeffs) if c != 0]
        if not terms:
            return "0"
        parts: list[str] = []
        for i, c in reversed(terms):
            mag = abs(c)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag} {mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)


class BiPoly:
    """Polynomial in ``x`` with ``UniPoly``-in-``y`` coefficients (x-major)."""

    __slots__ = ("coeffs",)

    def __init__(self, x_coeffs: Iterable[UniPoly] = ()):
        coeffs = list(x_coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def outer(cls, px: UniPoly, qy: UniPoly) -> "BiPoly":
        """The product ``px(x) * qy(y)``."""
        return cls(qy * c for c in px.coeffs)

    @classmethod
    def from_y(cls, qy: UniPoly) -> "BiPoly":
        return cls([qy])

    @property
    def x_degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> UniPoly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return UniPoly()

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("BiPoly", self.coeffs))

    def __repr__(self):
        return f"BiPoly({self.to_wire()})"

    def __add__(self, other: "BiPoly") -> "BiPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return BiPoly(self[i] + other[i] for i in range(n))

    def __neg__(self):
        return BiPoly(-c for c in self.coeffs)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other):
        """Multiply by a scalar or by a ``UniPoly`` in ``y``."""
        if isinstance(other, (int, Fraction, UniPoly)):
            return BiPoly(c * other for c in self.coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def compose_x_affine(self, a: Scalar, b: Scalar) -> "BiPoly":
        """Return ``q(a*x + b, y)``."""
        a, b = Fraction(a), Fraction(b)
        n = len(self.coeffs)
        out = [UniPoly() for _ in range(n)]
        for i, c in enumerate(self.coeffs):
            for j in range(i + 1):
                out[j] = out[j] + c * (math.comb(i, j) * a**j * b ** (i - j))
        return BiPoly(out)

    def partial_eval(self, which: str, value: Scalar) -> UniPoly:
        """Substitute ``x`` or ``y``; the result is a UniPoly in the other variable."""
        v = Fraction(value)
        if which == "x":
            acc = UniPoly()
            for c in reversed(self.coeffs):
                acc = acc * v + c
            return acc
        if which == "y":
            return UniPoly._raw([c(v) for c in self.coeffs])
        raise ValueError(f"which must be 'x' or 'y', got {which!r}")

    def integrate_y(self, lo: Scalar, hi: Scalar) -> UniPoly:
        """Integrate over ``y``; the result is a UniPoly in ``x``."""
        return UniPoly._raw([c.integrate(lo, hi) for c in self.coeffs])

    def to_wire(self) -> list[list[str]]:
        return [c.to_wire() for c in self.coeffs]

    @classmethod
    def from_wire(cls, data: Sequence[Sequence[str]]) -> "BiPoly":
        return cls(UniPoly.from_wire(row) for row in data)

    def pretty(self) -> str:
        terms = []
        for i in reversed(range(len(self.coeffs))):
            for j in reversed(range(len(self.coeffs[i].coeffs))):
                c = self.coeffs[i].coeffs[j]
                if c != 0:
                    terms.append((i, j, c))
        if not terms:
            return "0"
        parts: list[str] = []
        for i, j, c in terms:
            mono = " ".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("x", i), ("y", j)) if e
            )
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag} {mono}")
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)


def poly_arith(a: UniPoly, b: Union[UniPoly, Scalar], op: str) -> UniPoly:
    """Apply ``op`` in {add, sub, mul, scale}; ``scale`` takes a scalar ``b``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a * rational(b)
    raise ValueError(f"unknown op {op!r}")


def poly_compose_affine(p: UniPoly, a: Scalar, b: Scalar) -> UniPoly:
    return p.compose_affine(a, b)


def poly_derivative(p: UniPoly) -> UniPoly:
    return p.derivative()


def poly_definite_integral(p: UniPoly, lo: Scalar, hi: Scalar) -> Fraction:
    return p.integrate(lo, hi)


def bipoly_partial_eval(q: BiPoly, which: str, value: Scalar) -> UniPoly:
    return q.partial_eval(which, value)


def to_wire(value):
    """Wire form of a Rational, UniPoly or BiPoly."""
    if isinstance(value, (UniPoly, BiPoly)):
        return value.to_wire()
    if isinstance(value, (int, Fraction)):
        return rational_to_wire(value)
    raise TypeError(f"no wire form for {type(value).__name__}")
