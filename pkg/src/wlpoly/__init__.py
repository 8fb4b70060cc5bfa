"""Weighted lattice-point sums as plain counts of weight lifting polytopes."""

from .calculus import (
    MaxCertificate,
    dirichlet_simplex_integral,
    full_simplex,
    integrate,
    maximize,
    volume,
)
from .counter import CountResult, EnumConfig, count, enumerate_points
from .ehrhart import QuasiPolynomial, ehrhart_qp, fit, leading_coefficient, weighted_ehrhart_qp
from .lifting import (
    LateDilatedFactor,
    LiftedPolytope,
    ParametricFamily,
    WeightExpr,
    compile_polynomial,
    family_for_monomial,
    family_from_factors,
    lift,
    lift_dilated,
    weight_eval,
    weighted_sum,
    weighted_sum_bruteforce,
)
from .polynomial import Polynomial, parse_polynomial
from .polytope import HPolytope, StandardPolytope, block_product, dilate, simplex, standardize

__version__ = "0.1.0"
