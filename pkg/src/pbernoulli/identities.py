"""Registry of exactly-checkable identities and a grid-sweep verifier.

Each registered identity is a function of integer parameters returning a
``(lhs, rhs)`` pair of Fractions, UniPolys or BiPolys.  The verifier
evaluates it at every grid point within :class:`GridBounds` and compares
the two sides exactly (coefficient-wise for polynomials).  Identities
that involve a nonzero rational cofactor are registered already
multiplied through, so both sides stay polynomial.

Grid points may be evaluated in a process pool; failures are sorted by
parameter tuple afterwards, so ``jobs`` never changes report content.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .combinatorics import eulerian_poly, stirling2
from .config import default_expected_failures, load_defaults
from .exact_core import BiPoly, UniPoly, binomial, to_wire
from .sequences import (
    bernoulli_number,
    bernoulli_poly,
    geometric_poly,
    geometric_poly_two_var,
    p_bernoulli_number,
    p_bernoulli_poly,
    weighted_geometric_integral,
)

__all__ = [
    "Param",
    "IdentityDescriptor",
    "GridBounds",
    "Counterexample",
    "IdentityReport",
    "UnknownIdentityError",
    "BoundsError",
    "list_identities",
    "get_identity",
    "evaluate",
    "grid_points",
    "check_bounds",
    "verify_identity",
    "verify_all",
    "suite_passed",
]

RATIONAL = "rational-equality"
POLY1 = "polynomial-equality-1var"
POLY2 = "polynomial-equality-2var"

_DEFAULT_BOUNDS = load_defaults()["bounds"]


class UnknownIdentityError(KeyError):
    pass


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class Param:
    """A grid parameter: ``name`` runs from ``minimum`` to its bound.

    ``bound`` names a :class:`GridBounds` field, or is a fixed integer
    maximum for parameters that enumerate a fixed case list.
    """

    name: str
    minimum: int
    bound: str | int
    meaning: str = ""

    def maximum(self, bounds: "GridBounds") -> int:
        return self.bound if isinstance(self.bound, int) else getattr(bounds, self.bound)


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    parameters: tuple[Param, ...]
    statement_kind: str
    source: str
    expected_fail: bool = False

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "parameters": [
                {"name": p.name, "minimum": p.minimum, "bound": p.bound, "meaning": p.meaning}
                for p in self.parameters
            ],
            "statement_kind": self.statement_kind,
            "source": self.source,
            "expected_fail": self.expected_fail,
        }


@dataclass(frozen=True)
class GridBounds:
    n_max: int = _DEFAULT_BOUNDS["n_max"]
    p_max: int = _DEFAULT_BOUNDS["p_max"]
    m_max: int = _DEFAULT_BOUNDS["m_max"]

    def __post_init__(self):
        for name in ("n_max", "p_max", "m_max"):
            if getattr(self, name) < 0:
                raise BoundsError(f"{name} must be >= 0")

    def to_dict(self) -> dict:
        return {"n_max": self.n_max, "p_max": self.p_max, "m_max": self.m_max}


@dataclass(frozen=True)
class Counterexample:
    params: dict
    lhs: object
    rhs: object

    def to_dict(self) -> dict:
        return {"params": dict(self.params), "lhs": to_wire(self.lhs), "rhs": to_wire(self.rhs)}


@dataclass
class IdentityReport:
    id: str
    cases_checked: int
    outcome: str
    vacuous: bool
    counterexamples: list[Counterexample] = field(default_factory=list)
    elapsed_ms: float = 0.0
    expected_fail: bool = False

    @property
    def succeeded(self) -> bool:
        """Pass, or fail when failure is expected."""
        return self.outcome == ("fail" if self.expected_fail else "pass")

    def to_dict(self, with_timing: bool = True) -> dict:
        d = {
            "id": self.id,
            "cases_checked": self.cases_checked,
            "outcome": self.outcome,
            "vacuous": self.vacuous,
            "expected_fail": self.expected_fail,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
        }
        if with_timing:
            d["elapsed_ms"] = self.elapsed_ms
        return d


# -- registry ----------------------------------------------------------------

_Check = Callable[..., tuple]
_REGISTRY: dict[str, tuple[IdentityDescriptor, _Check]] = {}

N = "n_max"
P = "p_max"
M = "m_max"


def _identity(id: str, kind: str, source: str, *params: Param):
    def register(fn: _Check) -> _Check:
        if id in _REGISTRY:
            raise ValueError(f"duplicate identity id {id!r}")
        _REGISTRY[id] = (IdentityDescriptor(id, tuple(params), kind, source), fn)
        return fn

    return register


def _n(minimum: int = 0) -> Param:
    return Param("n", minimum, N, "index")


def _p(minimum: int = 0) -> Param:
    return Param("p", minimum, P, "p-Bernoulli parameter")


def _m(minimum: int = 0, meaning: str = "upper summation limit") -> Param:
    return Param("m", minimum, M, meaning)


Y = UniPoly.x()
ONE_PLUS_Y = UniPoly.linear(1, 1)
ONE_MINUS_Y = UniPoly.linear(-1, 1)


def pb(n: int, p: int) -> Fraction:
    return p_bernoulli_number((n, p))


def pbp(n: int, p: int) -> UniPoly:
    return p_bernoulli_poly((n, p))


@_identity(
    "bernoulli-recurrence", RATIONAL,
    "classical recurrence: sum_{k<=n} C(n+1,k) B_k = 0 for n >= 1",
    _n(1),
)
def _bernoulli_recurrence(n):
    return sum(binomial(n + 1, k) * bernoulli_number(k) for k in range(n + 1)), Fraction(0)


@_identity("keller", RATIONAL, "Keller: integral of w_n over [-1,0] equals B_n", _n(0))
def _keller(n):
    return geometric_poly(n).integrate(-1, 0), bernoulli_number(n)


@_identity(
    "eq17", RATIONAL,
    "main integral formula: B_{n,p}/(p+1) = integral of (1+y)^p w_n(y) over [-1,0]",
    _n(0), _p(0),
)
def _eq17(n, p):
    return pb(n, p) / (p + 1), weighted_geometric_integral(n, p)


@_identity(
    "eq25", RATIONAL,
    "integral of y^p w_n(y) over [-1,0] = (-1)^(n+p+1) (p+1)/(p+2) B_{n-1,p+1}, n > 1",
    _n(2), _p(0),
)
def _eq25(n, p):
    lhs = (UniPoly.monomial(p) * geometric_poly(n)).integrate(-1, 0)
    return lhs, (-1) ** (n + p + 1) * Fraction(p + 1, p + 2) * pb(n - 1, p + 1)


@_identity(
    "eq24-reflection", POLY1,
    "geometric reflection, cleared: (y+1) w_n(y) = (-1)^n y w_n(-y-1)",
    _n(1),
)
def _eq24(n):
    w = geometric_poly(n)
    return ONE_PLUS_Y * w, Y * w.compose_affine(-1, -1) * (-1) ** n


@_identity(
    "eq19-appell", POLY1,
    "derivative form of the integral representation: B_{n,p}'(x) = n B_{n-1,p}(x)",
    _n(1), _p(0),
)
def _eq19_appell(n, p):
    return pbp(n, p).derivative(), pbp(n - 1, p) * n


_INTERVALS = ((Fraction(0), Fraction(1)), (Fraction(-1), Fraction(0)), (Fraction(1, 2), Fraction(3, 2)))


@_identity(
    "eq19-integral", RATIONAL,
    "integral of B_{n,p} over [b,a] = (B_{n+1,p}(a) - B_{n+1,p}(b))/(n+1), "
    "(b,a) in {(0,1), (-1,0), (1/2,3/2)}",
    _n(0), _p(0), Param("interval", 0, len(_INTERVALS) - 1, "index into the fixed (b,a) list"),
)
def _eq19_integral(n, p, interval):
    b, a = _INTERVALS[interval]
    nxt = pbp(n + 1, p)
    return pbp(n, p).integrate(b, a), (nxt(a) - nxt(b)) / (n + 1)


@_identity(
    "eq20", RATIONAL,
    "integral of B_{n,p} over [0,1] = sum_{k<=n} C(n+1,k) B_{k,p} / (n+1)",
    _n(0), _p(0),
)
def _eq20(n, p):
    rhs = sum(binomial(n + 1, k) * pb(k, p) for k in range(n + 1)) / Fraction(n + 1)
    return pbp(n, p).integrate(0, 1), rhs


@_identity(
    "eq22", POLY1,
    "shift recurrence: B_{n,p}(x+1) - B_{n,p}(x) = sum_{k<n} C(n,k) B_{k,p}(x)",
    _n(0), _p(0),
)
def _eq22(n, p):
    q = pbp(n, p)
    rhs = UniPoly()
    for k in range(n):
        rhs = rhs + pbp(k, p) * binomial(n, k)
    return q.compose_affine(1, 1) - q, rhs


@_identity(
    "eq21", POLY1,
    "three-term recurrence: B_{n+1,p}(x) = (x+p) B_{n,p}(x) - (p+1)^2/(p+2) B_{n,p+1}(x)",
    _n(0), _p(0),
)
def _eq21(n, p):
    rhs = UniPoly.linear(1, p) * pbp(n, p) - pbp(n, p + 1) * Fraction((p + 1) ** 2, p + 2)
    return pbp(n + 1, p), rhs


@_identity(
    "eq6-theorem1", RATIONAL,
    "p-Bernoulli recurrence: sum_{k<=n} C(n+1,k) B_{k,p} = -p B_{n,p}, n >= 1",
    _n(1), _p(0),
)
def _eq6(n, p):
    return sum(binomial(n + 1, k) * pb(k, p) for k in range(n + 1)), -p * pb(n, p)


@_identity(
    "bnp-at-1", RATIONAL,
    "value at one: B_{n,p}(1) = B_{n,p} - p B_{n-1,p}, n >= 2",
    _n(2), _p(0),
)
def _bnp_at_1(n, p):
    return pbp(n, p)(1), pb(n, p) - p * pb(n - 1, p)


@_identity(
    "eq7a", RATIONAL,
    "mean value: integral of B_{n,p} over [0,1] = -p B_{n,p}/(n+1), n >= 1",
    _n(1), _p(0),
)
def _eq7a(n, p):
    return pbp(n, p).integrate(0, 1), -p * pb(n, p) / (n + 1)


def _stirling_explicit(n: int, p: int, sign_shift: int) -> Fraction:
    total = Fraction(0)
    for k in range(1, n + 1):
        total += Fraction(
            (-1) ** (k + n + sign_shift) * stirling2(n, k) * math.factorial(k),
            (k + p) * (k + p + 1),
        )
    return (p + 1) * total


@_identity(
    "eq8-corrected", RATIONAL,
    "explicit formula B_{n,p} = (p+1) sum_k S(n,k) (-1)^(k+n+1) k!/((k+p)(k+p+1)), n >= 1",
    _n(1), _p(0),
)
def _eq8_corrected(n, p):
    return pb(n, p), _stirling_explicit(n, p, 1)


@_identity(
    "eq8-as-printed", RATIONAL,
    "explicit formula with sign exponent (k+n) as printed; equals -B_{n,p}",
    _n(1), _p(0),
)
def _eq8_printed(n, p):
    return pb(n, p), _stirling_explicit(n, p, 0)


@_identity(
    "eq26-corrected", RATIONAL,
    "explicit formula B_n = sum_k S(n,k) (-1)^(k+n+1) (k-1)!/(k+1), n >= 1",
    _n(1),
)
def _eq26_corrected(n):
    rhs = sum(
        Fraction((-1) ** (k + n + 1) * stirling2(n, k) * math.factorial(k - 1), k + 1)
        for k in range(1, n + 1)
    )
    return bernoulli_number(n), rhs


@_identity(
    "eq2-prop2", POLY1,
    "B_{n,p}(x)/(p+1) = integral of (1+y)^p w_n(x;y) over y in [-1,0]",
    _n(0), _p(0),
)
def _eq2(n, p):
    rhs = (geometric_poly_two_var(n) * ONE_PLUS_Y**p).integrate_y(-1, 0)
    return pbp(n, p) / (p + 1), rhs


@_identity(
    "eq28-telescopic", POLY1,
    "telescopic: B_{n,p+1}(x+1) - B_{n,p+1}(x) = (p+2)/(p+1) (B_{n,p}(x+1) - x^n)",
    _n(0), _p(0),
)
def _eq28(n, p):
    up = pbp(n, p + 1)
    rhs = (pbp(n, p).compose_affine(1, 1) - UniPoly.monomial(n)) * Fraction(p + 2, p + 1)
    return up.compose_affine(1, 1) - up, rhs


@_identity(
    "eq4-theorem5", RATIONAL,
    "sum_{k<=m} B_{n,p}(k+1) = (B_{n+1}(m+1) - B_{n+1})/(n+1) "
    "+ (p+1)/(p+2) (B_{n,p+1}(m+1) - B_{n,p+1})",
    _n(0), _p(0), _m(0),
)
def _eq4(n, p, m):
    q = pbp(n, p)
    lhs = sum((q(k + 1) for k in range(m + 1)), Fraction(0))
    rhs = (bernoulli_poly(n + 1)(m + 1) - bernoulli_number(n + 1)) / (n + 1) + Fraction(
        p + 1, p + 2
    ) * (pbp(n, p + 1)(m + 1) - pb(n, p + 1))
    return lhs, rhs


@_identity(
    "eq27", RATIONAL,
    "sum_{k<=m} (B_n(k+1) + n k^n) = (m+1) B_n(m+1)",
    _n(0), _m(0),
)
def _eq27(n, m):
    b = bernoulli_poly(n)
    lhs = sum((b(k + 1) + n * k**n for k in range(m + 1)), Fraction(0))
    return lhs, (m + 1) * b(m + 1)


def _raabe_lhs(poly: UniPoly, n: int, m: int) -> UniPoly:
    acc = UniPoly()
    for k in range(m):
        acc = acc + poly.compose_affine(1, Fraction(k, m))
    return acc * Fraction(m) ** (n - 1)


@_identity(
    "eq31-raabe", POLY1,
    "Raabe for p-Bernoulli: m^(n-1) sum_{k<m} B_{n,p}(x+k/m) = (p+1) B_n(mx) "
    "- p sum_k C(n,k) m^k B_{n-k}(mx) B_{k,p}/(k+1)",
    _n(0), _p(0), _m(1, "multiplier"),
)
def _eq31(n, p, m):
    rhs = bernoulli_poly(n).compose_affine(m, 0) * (p + 1)
    for k in range(n + 1):
        c = binomial(n, k) * Fraction(m) ** k * pb(k, p) / (k + 1)
        rhs = rhs - bernoulli_poly(n - k).compose_affine(m, 0) * (p * c)
    return _raabe_lhs(pbp(n, p), n, m), rhs


@_identity(
    "classical-raabe", POLY1,
    "Raabe: m^(n-1) sum_{k<m} B_n(x+k/m) = B_n(mx)",
    _n(0), _m(1, "multiplier"),
)
def _classical_raabe(n, m):
    b = bernoulli_poly(n)
    return _raabe_lhs(b, n, m), b.compose_affine(m, 0)


def _convolution(n: int, m: int) -> Fraction:
    return sum(
        (
            binomial(n, k) * Fraction(m) ** k * bernoulli_number(k + 1) * bernoulli_number(n - k) / (k + 1)
            for k in range(n + 1)
        ),
        Fraction(0),
    )


@_identity(
    "cor2-convolution", RATIONAL,
    "sum_k C(n,k) m^k B_{k+1} B_{n-k}/(k+1) = (-m B_n - B_{n+1})/m "
    "+ m^(n-1) sum_{k<m} (k/m) B_n(k/m)",
    _n(0), _m(1, "multiplier"),
)
def _cor2(n, m):
    b = bernoulli_poly(n)
    tail = sum((Fraction(k, m) * b(Fraction(k, m)) for k in range(m)), Fraction(0))
    rhs = (-m * bernoulli_number(n) - bernoulli_number(n + 1)) / m + Fraction(m) ** (n - 1) * tail
    return _convolution(n, m), rhs


@_identity(
    "chu-zhou-m1", RATIONAL,
    "sum_k C(n,k) B_{k+1} B_{n-k}/(k+1) = -B_n - B_{n+1}",
    _n(0),
)
def _chu_zhou_1(n):
    return _convolution(n, 1), -bernoulli_number(n) - bernoulli_number(n + 1)


@_identity(
    "chu-zhou-m2", RATIONAL,
    "sum_k C(n,k) 2^k B_{k+1} B_{n-k}/(k+1) = (-B_{n+1} - (2^(n-1)+1) B_n)/2",
    _n(0),
)
def _chu_zhou_2(n):
    rhs = (-bernoulli_number(n + 1) - (Fraction(2) ** (n - 1) + 1) * bernoulli_number(n)) / 2
    return _convolution(n, 2), rhs


@_identity(
    "eq36", POLY1,
    "p^2 sum_{k=1}^n C(n+1,k+1) y^(n-k) B_{k,p} = (p+1) y^(n+1) + p(n+1) y^n "
    "- (p+1) B_{n+1,p-1}(1+y), p >= 1",
    _n(1), _p(1),
)
def _eq36(n, p):
    lhs = UniPoly()
    for k in range(1, n + 1):
        lhs = lhs + UniPoly.monomial(n - k, binomial(n + 1, k + 1) * pb(k, p))
    rhs = (
        UniPoly.monomial(n + 1, p + 1)
        + UniPoly.monomial(n, p * (n + 1))
        - pbp(n + 1, p - 1).compose_affine(1, 1) * (p + 1)
    )
    return lhs * (p * p), rhs


@_identity(
    "eq15-raabe-geometric", POLY2,
    "Raabe for w_n(x;y), multiplied by n*y: n y m^(n-1) sum_{k<m} w_{n-1}(x+k/m;y) "
    "= sum_{k=1}^n C(n,k) m^k B_{n-k}(mx) w_k(y)",
    _n(1), _m(1, "multiplier"),
)
def _eq15(n, m):
    w = geometric_poly_two_var(n - 1)
    acc = BiPoly()
    for k in range(m):
        acc = acc + w.compose_x_affine(1, Fraction(k, m))
    lhs = acc * (Y * (n * Fraction(m) ** (n - 1)))
    rhs = BiPoly()
    for k in range(1, n + 1):
        bx = bernoulli_poly(n - k).compose_affine(m, 0) * (binomial(n, k) * m**k)
        rhs = rhs + BiPoly.outer(bx, geometric_poly(k))
    return lhs, rhs


def _power_sum_poly(n: int, p: int) -> UniPoly:
    """sum_{k<=n} k^p y^k (with 0^0 = 1)."""
    return UniPoly([k**p for k in range(n + 1)])


@_identity(
    "eq32-arith-geom", POLY1,
    "arithmetic-geometric progression times (1-y)^(p+1): (1-y)^(p+1) sum_{k<=n} k^p y^k "
    "= A_p(y) - y^(n+1) sum_k C(p,k) (n+1)^(p-k) A_k(y) (1-y)^(p-k)",
    _n(0), _p(0),
)
def _eq32(n, p):
    lhs = ONE_MINUS_Y ** (p + 1) * _power_sum_poly(n, p)
    tail = UniPoly()
    for k in range(p + 1):
        tail = tail + eulerian_poly(k) * ONE_MINUS_Y ** (p - k) * (binomial(p, k) * (n + 1) ** (p - k))
    return lhs, eulerian_poly(p) - UniPoly.monomial(n + 1) * tail


@_identity(
    "eq32-geometric-form", POLY1,
    "sum_{k<=n} k^p y^k (1+y)^(n-k) = (1+y)^(n+1) w_p(y) "
    "- y^(n+1) sum_k C(p,k) (n+1)^(p-k) w_k(y)",
    _n(0), _p(0),
)
def _eq32_geometric(n, p):
    lhs = UniPoly()
    for k in range(n + 1):
        lhs = lhs + UniPoly.monomial(k, k**p) * ONE_PLUS_Y ** (n - k)
    tail = UniPoly()
    for k in range(p + 1):
        tail = tail + geometric_poly(k) * (binomial(p, k) * (n + 1) ** (p - k))
    return lhs, ONE_PLUS_Y ** (n + 1) * geometric_poly(p) - UniPoly.monomial(n + 1) * tail


@_identity(
    "eulerian-transform", POLY1,
    "Eulerian polynomials from geometric ones: (1-y)^n w_n(y/(1-y)) = A_n(y)",
    _n(0),
)
def _eulerian_transform(n):
    lhs = UniPoly()
    for j, c in enumerate(geometric_poly(n).coeffs):
        lhs = lhs + UniPoly.monomial(j, c) * ONE_MINUS_Y ** (n - j)
    return lhs, eulerian_poly(n)


@_identity(
    "theorem2-main", RATIONAL,
    "sum_{k<=n} k^p (-1)^k / C(n,k) = (n+1)/(n+2) ((-1)^(n+p) B_{p,n+1}(-n) + B_{p,n+1})",
    _n(1), _p(0),
)
def _alt_sum_closed_form(n, p):
    lhs = sum((Fraction((-1) ** k * k**p, binomial(n, k)) for k in range(n + 1)), Fraction(0))
    q = pbp(p, n + 1)
    return lhs, Fraction(n + 1, n + 2) * ((-1) ** (n + p) * q(-n) + pb(p, n + 1))


@_identity(
    "gould", RATIONAL,
    "sum_{k<=n} (-1)^k / C(n,k) = (n+1)/(n+2) ((-1)^n + 1)",
    _n(1),
)
def _gould(n):
    lhs = sum((Fraction((-1) ** k, binomial(n, k)) for k in range(n + 1)), Fraction(0))
    return lhs, Fraction(n + 1, n + 2) * ((-1) ** n + 1)


@_identity(
    "eq3-faulhaber", RATIONAL,
    "sum_{k<=m} k^n = (B_{n+1}(m+1) - B_{n+1})/(n+1), n >= 1",
    _n(1), _m(0),
)
def _eq3(n, m):
    lhs = Fraction(sum(k**n for k in range(m + 1)))
    return lhs, (bernoulli_poly(n + 1)(m + 1) - bernoulli_number(n + 1)) / (n + 1)


@_identity(
    "eq34-beta", RATIONAL,
    "Beta integral: integral of (1-t)^(a-1) t^(b-1) over [0,1] = (a-1)!(b-1)!/(a+b-1)!",
    Param("a", 1, N, "first Beta argument"),
    Param("b", 1, N, "second Beta argument"),
)
def _eq34(a, b):
    integrand = ONE_MINUS_Y ** (a - 1) * UniPoly.monomial(b - 1)
    rhs = Fraction(math.factorial(a - 1) * math.factorial(b - 1), math.factorial(a + b - 1))
    return integrand.integrate(0, 1), rhs


# -- public API ------------------------------------------------------------


def list_identities(expected_fail_ids: Iterable[str] | None = None) -> list[IdentityDescriptor]:
    """All registered identities, ordered by id.

    ``expected_fail`` on each descriptor reflects ``expected_fail_ids``
    (default: the packaged configuration).
    """
    expected = default_expected_failures() if expected_fail_ids is None else frozenset(expected_fail_ids)
    out = []
    for id in sorted(_REGISTRY):
        desc = _REGISTRY[id][0]
        out.append(
            IdentityDescriptor(desc.id, desc.parameters, desc.statement_kind, desc.source, id in expected)
        )
    return out


def get_identity(id: str) -> IdentityDescriptor:
    try:
        return _REGISTRY[id][0]
    except KeyError:
        raise UnknownIdentityError(id) from None


def evaluate(id: str, **params: int) -> tuple:
    """Both sides of identity ``id`` at one parameter assignment."""
    desc = get_identity(id)
    return _REGISTRY[id][1](*(params[p.name] for p in desc.parameters))


def grid_points(desc: IdentityDescriptor, bounds: GridBounds) -> list[tuple[int, ...]]:
    ranges = [range(p.minimum, p.maximum(bounds) + 1) for p in desc.parameters]
    return list(itertools.product(*ranges))


def _evaluate(id: str, points: Sequence[tuple[int, ...]]):
    """Worker entry point: returns (count, failures, elapsed seconds)."""
    fn = _REGISTRY[id][1]
    failures = []
    start = time.perf_counter()
    for point in points:
        lhs, rhs = fn(*point)
        if lhs != rhs:
            failures.append((point, lhs, rhs))
    return len(points), failures, time.perf_counter() - start


def check_bounds(desc: IdentityDescriptor, bounds: GridBounds) -> None:
    for p in desc.parameters:
        if p.maximum(bounds) < p.minimum:
            raise BoundsError(
                f"{desc.id}: {p.bound} = {p.maximum(bounds)} is below the minimum {p.name} = {p.minimum}"
            )


def _assemble(desc, results, cap: int, expected_fail: bool) -> IdentityReport:
    cases = sum(r[0] for r in results)
    failures = sorted((f for r in results for f in r[1]), key=lambda f: f[0])
    names = [p.name for p in desc.parameters]
    counterexamples = [
        Counterexample(dict(zip(names, point)), lhs, rhs) for point, lhs, rhs in failures[:cap]
    ]
    return IdentityReport(
        id=desc.id,
        cases_checked=cases,
        outcome="fail" if failures else "pass",
        vacuous=cases == 0,
        counterexamples=counterexamples,
        elapsed_ms=round(sum(r[2] for r in results) * 1000, 3),
        expected_fail=expected_fail,
    )


def _chunks(points: list, size: int) -> list[list]:
    return [points[i : i + size] for i in range(0, len(points), size)] or [[]]


_CHUNK = 8


def _run(plan, jobs: int) -> list[list]:
    """Evaluate ``plan`` = [(id, points)]; results grouped per plan entry."""
    tasks = [(i, id, chunk) for i, (id, pts) in enumerate(plan) for chunk in _chunks(pts, _CHUNK)]
    grouped: list[list] = [[] for _ in plan]
    if jobs <= 1:
        for i, id, chunk in tasks:
            grouped[i].append(_evaluate(id, chunk))
        return grouped
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [(i, pool.submit(_evaluate, id, chunk)) for i, id, chunk in tasks]
        for i, fut in futures:
            grouped[i].append(fut.result())
    return grouped


def verify_identity(
    id: str,
    bounds: GridBounds | None = None,
    *,
    cap: int | None = None,
    jobs: int = 1,
    allow_vacuous: bool = False,
    expected_fail: bool | None = None,
) -> IdentityReport:
    """Check one identity at every grid point within ``bounds``.

    Raises :class:`UnknownIdentityError` for an unregistered id and
    :class:`BoundsError` when a bound is below the identity's minimum
    (unless ``allow_vacuous``, which yields an empty, vacuous report).
    """
    if id not in _REGISTRY:
        raise UnknownIdentityError(id)
    bounds = bounds or GridBounds()
    desc = _REGISTRY[id][0]
    if not allow_vacuous:
        check_bounds(desc, bounds)
    if cap is None:
        cap = load_defaults()["counterexample_cap"]
    if expected_fail is None:
        expected_fail = id in default_expected_failures()
    (results,) = _run([(id, grid_points(desc, bounds))], jobs)
    return _assemble(desc, results, cap, expected_fail)


def verify_all(
    bounds: GridBounds | None = None,
    expected_fail_ids: Iterable[str] | None = None,
    *,
    ids: Iterable[str] | None = None,
    cap: int | None = None,
    jobs: int = 1,
) -> list[IdentityReport]:
    """Run every registered identity (or ``ids``), in registry order.

    Identities whose grid is empty under ``bounds`` report zero cases
    and are flagged ``vacuous``.  Use :func:`suite_passed` for the
    overall verdict.
    """
    bounds = bounds or GridBounds()
    expected = default_expected_failures() if expected_fail_ids is None else frozenset(expected_fail_ids)
    if cap is None:
        cap = load_defaults()["counterexample_cap"]
    selected = sorted(_REGISTRY) if ids is None else list(ids)
    for id in selected:
        if id not in _REGISTRY:
            raise UnknownIdentityError(id)
    descs = [_REGISTRY[id][0] for id in selected]
    grouped = _run([(d.id, grid_points(d, bounds)) for d in descs], jobs)
    return [_assemble(d, res, cap, d.id in expected) for d, res in zip(descs, grouped)]


def suite_passed(reports: Iterable[IdentityReport]) -> bool:
    return all(r.succeeded for r in reports)
