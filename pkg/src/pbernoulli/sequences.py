"""Bernoulli, geometric and p-Bernoulli sequences with independent routes.

Every constructor returns exact values.  ``p_bernoulli_number`` can be
computed four ways (see :class:`Route`); the routes must agree and the
test suite checks that they do.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinatorics import r_stirling2, stirling2
from .exact_core import BiPoly, UniPoly, binomial

__all__ = [
    "PBernoulliKey",
    "Route",
    "bernoulli_number",
    "bernoulli_poly",
    "geometric_poly",
    "geometric_poly_two_var",
    "p_bernoulli_number",
    "p_bernoulli_poly",
    "weighted_geometric_integral",
    "faulhaber_sum",
    "alt_binom_reciprocal_sum",
    "clear_caches",
]


@dataclass(frozen=True)
class PBernoulliKey:
    n: int
    p: int

    def __post_init__(self):
        if self.n < 0 or self.p < 0:
            raise ValueError(f"p-Bernoulli index and parameter must be >= 0, got n={self.n}, p={self.p}")


class Route(str, enum.Enum):
    RECURRENCE = "recurrence"
    EXPLICIT_P_STIRLING = "explicit-p-stirling"
    EXPLICIT_STIRLING = "explicit-theorem4"
    WEIGHTED_INTEGRAL = "weighted-integral"


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from the Stirling-number sum."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return sum(
        (Fraction((-1) ** k * math.factorial(k) * stirling2(n, k), k + 1) for k in range(n + 1)),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> UniPoly:
    """B_n(x) = sum_k C(n,k) B_k x^(n-k)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = binomial(n, k) * bernoulli_number(k)
    return UniPoly(coeffs)


@lru_cache(maxsize=None)
def geometric_poly(n: int) -> UniPoly:
    """Geometric polynomial w_n(y), expanded from its Stirling-number form."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return UniPoly.constant(1)
    y_plus_1 = UniPoly.linear(1, 1)
    acc = UniPoly()
    power = UniPoly.constant(1)  # (y+1)^(k-1)
    for k in range(1, n + 1):
        c = (-1) ** (n + k) * math.factorial(k) * stirling2(n, k)
        acc = acc + power * c
        power = power * y_plus_1
    return acc * UniPoly.x()


@lru_cache(maxsize=None)
def geometric_poly_two_var(n: int) -> BiPoly:
    """w_n(x; y) = sum_k C(n,k) w_k(y) x^(n-k), stored x-major."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return BiPoly(geometric_poly(n - j) * binomial(n, j) for j in range(n + 1))


# -- p-Bernoulli numbers ---------------------------------------------------


@lru_cache(maxsize=None)
def _pb_recurrence(n: int, p: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    # fill the triangle row by row to keep recursion shallow
    row = [Fraction(1)] * (n + 1)  # row[j] = B_{m, p+j}
    for m in range(n):
        row = [
            (p + j) * row[j] - Fraction((p + j + 1) ** 2, p + j + 2) * row[j + 1]
            for j in range(n - m)
        ]
    return row[0]


def _pb_explicit_p_stirling(n: int, p: int) -> Fraction:
    total = Fraction(0)
    for k in range(n + 1):
        total += Fraction(
            (-1) ** k * r_stirling2(n + p, k + p, p) * math.factorial(k + p), k + p + 1
        )
    return total * Fraction(p + 1, math.factorial(p))


def _pb_explicit_stirling(n: int, p: int) -> Fraction:
    total = Fraction(0)
    for k in range(1, n + 1):
        sign = (-1) ** (k + n + 1)
        total += Fraction(sign * stirling2(n, k) * math.factorial(k), (k + p) * (k + p + 1))
    return (p + 1) * total


def _pb_weighted_integral(n: int, p: int) -> Fraction:
    return (p + 1) * weighted_geometric_integral(n, p)


_ROUTES = {
    Route.RECURRENCE: _pb_recurrence,
    Route.EXPLICIT_P_STIRLING: _pb_explicit_p_stirling,
    Route.EXPLICIT_STIRLING: _pb_explicit_stirling,
    Route.WEIGHTED_INTEGRAL: _pb_weighted_integral,
}


def p_bernoulli_number(
    key: PBernoulliKey | tuple[int, int], route: Route | str = Route.RECURRENCE
) -> Fraction:
    """B_{n,p} by the chosen route (recurrence by default)."""
    if not isinstance(key, PBernoulliKey):
        key = PBernoulliKey(*key)
    route = Route(route)
    if route is Route.EXPLICIT_STIRLING and key.n < 1:
        raise ValueError("route explicit-theorem4 requires n >= 1")
    return _ROUTES[route](key.n, key.p)


@lru_cache(maxsize=None)
def _pb_poly(n: int, p: int) -> UniPoly:
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = binomial(n, k) * _pb_recurrence(k, p)
    return UniPoly(coeffs)


def p_bernoulli_poly(key: PBernoulliKey | tuple[int, int]) -> UniPoly:
    """B_{n,p}(x) = sum_k C(n,k) x^(n-k) B_{k,p}."""
    if not isinstance(key, PBernoulliKey):
        key = PBernoulliKey(*key)
    return _pb_poly(key.n, key.p)


@lru_cache(maxsize=None)
def weighted_geometric_integral(n: int, p: int) -> Fraction:
    """Exact integral of (1+y)^p w_n(y) over [-1, 0]."""
    if n < 0 or p < 0:
        raise ValueError(f"n and p must be >= 0, got n={n}, p={p}")
    integrand = UniPoly.linear(1, 1) ** p * geometric_poly(n)
    return integrand.integrate(-1, 0)


# -- finite sums -------------------------------------------------------------


def faulhaber_sum(n: int, m: int) -> Fraction:
    """sum_{k=0}^m k^n via Bernoulli polynomials (0^0 = 1)."""
    if n < 0 or m < 0:
        raise ValueError(f"n and m must be >= 0, got n={n}, m={m}")
    if n == 0:
        return Fraction(m + 1)
    return (bernoulli_poly(n + 1)(m + 1) - bernoulli_number(n + 1)) / (n + 1)


def alt_binom_reciprocal_sum(n: int, p: int, route: str = "direct") -> Fraction:
    """sum_{k=0}^n k^p (-1)^k / C(n,k).

    ``route="closed-form"`` evaluates it through p-Bernoulli polynomials
    with parameter ``n + 1`` at ``x = -n``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    if route == "direct":
        # 0**0 == 1 covers the k = 0 term when p = 0
        return sum(
            (Fraction((-1) ** k * k**p, binomial(n, k)) for k in range(n + 1)),
            Fraction(0),
        )
    if route == "closed-form":
        poly = p_bernoulli_poly((p, n + 1))
        return Fraction(n + 1, n + 2) * ((-1) ** (n + p) * poly(-n) + poly[0])
    raise ValueError(f"unknown route {route!r}; expected 'direct' or 'closed-form'")


def clear_caches() -> None:
    for fn in (
        bernoulli_number,
        bernoulli_poly,
        geometric_poly,
        geometric_poly_two_var,
        _pb_recurrence,
        _pb_poly,
        weighted_geometric_integral,
    ):
        fn.cache_clear()
