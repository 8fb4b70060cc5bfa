"""Integration, volume and maximization through lifted lattice-point counts."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .counter import DEFAULT, EnumConfig, count
from .ehrhart import leading_coefficient, weighted_ehrhart_qp, ehrhart_qp
from .exact import int_kth_root_ceil_ratio, int_kth_root_floor
from .lifting import CUBE, ParametricFamily, WeightExpr, compile_polynomial, lift
from .polynomial import Polynomial, parse_polynomial
from .polytope import HPolytope, StandardPolytope, standardize


class EmptyPolytope(ValueError):
    pass


class NonCountingWeight(ValueError):
    pass


class MaximizeDidNotConverge(RuntimeError):
    def __init__(self, message, certificate):
        super().__init__(message)
        self.certificate = certificate


def _as_polynomial(poly, nvars: int) -> Polynomial:
    if isinstance(poly, Polynomial):
        if poly.nvars != nvars:
            raise ValueError(f"polynomial has {poly.nvars} variables, polytope has {nvars}")
        return poly
    if isinstance(poly, str):
        return parse_polynomial(poly, nvars)
    return Polynomial.const(poly, nvars)


def integrate(
    P: Union[StandardPolytope, HPolytope],
    poly,
    basis: str = CUBE,
    cfg: EnumConfig = DEFAULT,
    jobs: int = 1,
) -> Fraction:
    """Exact integral of ``poly`` over P w.r.t. the integral Lebesgue measure on aff(P).

    Each homogeneous part of degree k is compiled into a weight, and its
    integral is read off as the coefficient of ``t**(dim P + k)`` of the
    weighted Ehrhart quasi-polynomial.  H-polytopes are standardized first
    (an integer translation plus slack columns, which preserves the measure).
    """
    poly = _as_polynomial(poly, P.n)
    if isinstance(P, HPolytope):
        P, change = standardize(P)
        poly = change.transform_polynomial(poly)
    if P.is_empty():
        raise EmptyPolytope("cannot integrate over an empty polytope")
    total = Fraction(0)
    for k, part in poly.homogeneous_parts().items():
        W = compile_polynomial(part, basis)
        qp, _ = weighted_ehrhart_qp(P, W, cfg=cfg, jobs=jobs)
        total += leading_coefficient(qp)
    return total


def volume(P: Union[StandardPolytope, HPolytope], cfg: EnumConfig = DEFAULT, jobs: int = 1) -> Fraction:
    """Relative volume of P (the leading Ehrhart coefficient)."""
    return leading_coefficient(ehrhart_qp(P, cfg=cfg, jobs=jobs)[0])


def dirichlet_simplex_integral(alpha: Sequence[int], n: Optional[int] = None) -> Fraction:
    """Integral of x**alpha over {x >= 0, sum x <= 1} in R^n."""
    n = len(alpha) if n is None else n
    if len(alpha) != n or any(a < 0 for a in alpha):
        raise ValueError("alpha must be a nonnegative vector of length n")
    num = math.prod(math.factorial(a) for a in alpha)
    return Fraction(num, math.factorial(n + sum(alpha)))


def full_simplex(n: int) -> StandardPolytope:
    """The standard full-dimensional n-simplex with one slack: x_1 + ... + x_{n+1} = 1."""
    return StandardPolytope([[1] * (n + 1)], [1], n + 1)


# ---------------------------------------------------------------------------
# maximization


@dataclass(frozen=True)
class MaxCertificate:
    maximum: int
    k: int
    S: tuple[int, ...]
    N: int
    bounds: tuple[tuple[int, int], ...]
    scale: int = 1

    def is_monotone(self) -> bool:
        lows = [lo for lo, _ in self.bounds]
        highs = [hi for _, hi in self.bounds]
        return all(a <= b for a, b in zip(lows, lows[1:])) and all(a >= b for a, b in zip(highs, highs[1:]))


def _counting_family(F) -> tuple[ParametricFamily, int]:
    if isinstance(F, ParametricFamily):
        return F, 1
    if isinstance(F, WeightExpr):
        if len(F.terms) == 1:
            c = F.terms[0].coeff
            if c > 0 and c.denominator == 1:
                return F.terms[0].family, int(c)
        raise NonCountingWeight("maximize needs a single counting family with a positive integer coefficient")
    raise TypeError(f"cannot maximize a {type(F).__name__}")


def maximize(P: StandardPolytope, F, k_max: int = 40, cfg: EnumConfig = DEFAULT, jobs: int = 1) -> MaxCertificate:
    """Exact ``max_{x in P} w(x)`` from the power sums ``S_k = sum_x w(x)**k``.

    ``S_k`` is the count of the lift of P by k copies of the family.  With
    ``N = |P ∩ Z^n|`` the maximum lies in ``[(S_k/N)**(1/k), S_k**(1/k)]``;
    iteration stops as soon as the integer rounding of both ends agrees.
    """
    fam, scale = _counting_family(F)
    N = count(P, cfg, jobs).count
    if N == 0:
        raise EmptyPolytope("no lattice points to maximize over")
    S, bounds = [], []
    for k in range(1, k_max + 1):
        s = count(lift(P, fam.power(k)).polytope, cfg, jobs).count
        lo = int_kth_root_ceil_ratio(s, N, k)
        hi = int_kth_root_floor(s, k)
        S.append(s)
        bounds.append((lo, hi))
        if lo == hi:
            return MaxCertificate(hi * scale, k, tuple(S), N, tuple(bounds), scale)
    cert = MaxCertificate(-1, k_max, tuple(S), N, tuple(bounds), scale)
    raise MaximizeDidNotConverge(f"bounds still {bounds[-1]} after k={k_max}", cert)


# ---------------------------------------------------------------------------
# benchmark grid


@dataclass
class BenchCell:
    dim: int
    degree: int
    integral: Optional[Fraction]
    oracle: Fraction
    seconds: Optional[float]
    ok: bool


def bench_integrand(dim: int, degree: int, kind: str, rng: random.Random) -> Polynomial:
    """``prod x_i**degree`` (monomial) or ``(sum c_i x_i)**degree`` with c_i in 1..5."""
    if kind == "monomial":
        return Polynomial.monomial([degree] * dim)
    if kind == "linear-power":
        form = sum((Polynomial.var(i, dim) * rng.randint(1, 5) for i in range(dim)), Polynomial(dim))
        return form ** degree
    raise ValueError(f"unknown weight kind {kind!r}")


def simplex_oracle(poly: Polynomial) -> Fraction:
    """Integral over the full standard simplex by monomial expansion."""
    return sum((c * dirichlet_simplex_integral(e) for e, c in poly.terms.items()), Fraction(0))


def bench_grid(
    dims: Sequence[int],
    degrees: Sequence[int],
    kind: str = "monomial",
    seed: int = 0,
    budget_seconds: Optional[float] = None,
    basis: str = CUBE,
    cfg: EnumConfig = DEFAULT,
) -> list[BenchCell]:
    """Integrate the benchmark integrand over each standard simplex and check it.

    A cell whose time exceeds ``budget_seconds`` is still checked but its time
    is withheld (``seconds=None``); later cells of the same row with larger
    dimension are skipped and reported the same way.
    """
    rng = random.Random(seed)
    cells = []
    for deg in degrees:
        over = False
        for d in dims:
            poly = bench_integrand(d, deg, kind, rng)
            oracle = simplex_oracle(poly)
            if over:
                cells.append(BenchCell(d, deg, None, oracle, None, True))
                continue
            P = full_simplex(d)
            start = time.perf_counter()
            value = integrate(P, poly.extend(d + 1), basis, cfg)
            elapsed = time.perf_counter() - start
            if budget_seconds is not None and elapsed > budget_seconds:
                over = True
            cells.append(BenchCell(d, deg, value, oracle, None if over else elapsed, value == oracle))
    return cells
