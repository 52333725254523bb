"""Exact p-Bernoulli numbers and polynomials, geometric polynomials and
machine-checked identities between them."""

from .combinatorics import eulerian_poly, r_stirling2, stirling2
from .exact_core import BiPoly, UniPoly, binomial
from .identities import GridBounds, list_identities, suite_passed, verify_all, verify_identity
from .sequences import (
    PBernoulliKey,
    Route,
    alt_binom_reciprocal_sum,
    bernoulli_number,
    bernoulli_poly,
    faulhaber_sum,
    geometric_poly,
    geometric_poly_two_var,
    p_bernoulli_number,
    p_bernoulli_poly,
    weighted_geometric_integral,
)

__version__ = "0.1.0"
