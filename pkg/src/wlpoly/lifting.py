"""Weight lifting polytopes.

A parametric family ``Q(x) = {y : C y = D x + e, y >= 0}`` defines the weight
``w(x) = |Q(x) ∩ Z^m|``.  Stacking it under ``P = {x : A x = b, x >= 0}`` as

    [[A, 0], [D, -C]] (x, y) = (b, -e),   x, y >= 0

gives a polytope whose plain lattice-point count is the weighted sum of ``w``
over ``P``; every lattice point ``x`` of ``P`` has exactly ``w(x)`` lattice
points above it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .counter import DEFAULT, EnumConfig, count, enumerate_points
from .exact import solve_linear
from .polynomial import Polynomial
from .polytope import StandardPolytope, dilate

CUBE = "cube"
RISING = "rising"
FALLING = "falling"
BASES = (CUBE, RISING, FALLING)


@dataclass(frozen=True)
class ParametricFamily:
    """``Q(x) = {y in R^m : C y = D x + e, y >= 0}`` with integer data."""

    C: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    e: tuple[int, ...]
    m: int
    n: int

    def __init__(self, C, D, e, m: Optional[int] = None, n: Optional[int] = None):
        C = tuple(tuple(int(v) for v in row) for row in C)
        D = tuple(tuple(int(v) for v in row) for row in D)
        e = tuple(int(v) for v in e)
        r = len(e)
        if len(C) != r or len(D) != r:
            raise ValueError("C, D and e must have the same number of rows")
        if m is None:
            if not C:
                raise ValueError("m must be given for a family without rows")
            m = len(C[0])
        if n is None:
            if not D:
                raise ValueError("n must be given for a family without rows")
            n = len(D[0])
        if any(len(row) != m for row in C) or any(len(row) != n for row in D):
            raise ValueError("family matrices have inconsistent widths")
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "n", int(n))

    @property
    def r(self) -> int:
        return len(self.e)

    @classmethod
    def trivial(cls, n: int) -> "ParametricFamily":
        """The family with no rows and no variables: ``w == 1``."""
        return cls((), (), (), m=0, n=n)

    def at(self, x: Sequence[int]) -> StandardPolytope:
        """The fiber polytope ``Q(x)``."""
        if len(x) != self.n:
            raise ValueError(f"family reads {self.n} parameters, got {len(x)}")
        rhs = [sum(d * xi for d, xi in zip(row, x)) + ei for row, ei in zip(self.D, self.e)]
        return StandardPolytope(self.C, rhs, self.m)

    def extend(self, n: int) -> "ParametricFamily":
        """Same family reading ``n >= self.n`` parameters (extra ones ignored)."""
        if n < self.n:
            raise ValueError("cannot drop parameters")
        D = [list(row) + [0] * (n - self.n) for row in self.D]
        return ParametricFamily(self.C, D, self.e, m=self.m, n=n)

    def power(self, k: int) -> "ParametricFamily":
        """k independent copies reading the same parameters: weight ``w**k``."""
        return product_family([self] * k)


def product_family(families: Sequence[ParametricFamily]) -> ParametricFamily:
    """Block-diagonal product of families on the same parameters (weights multiply)."""
    if not families:
        raise ValueError("need at least one family")
    n = families[0].n
    if any(F.n != n for F in families):
        raise ValueError("families read different numbers of parameters")
    m = sum(F.m for F in families)
    C, D, e = [], [], []
    offset = 0
    for F in families:
        for row, drow, ei in zip(F.C, F.D, F.e):
            full = [0] * m
            full[offset:offset + F.m] = row
            C.append(full)
            D.append(list(drow))
            e.append(ei)
        offset += F.m
    return ParametricFamily(C, D, e, m=m, n=n)


@dataclass(frozen=True)
class LateDilatedFactor:
    """``w(x) = |(x[arg] - shift) Q ∩ Z^m|`` with ``Q = {y : C y = d, y >= 0}``."""

    C: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    shift: int
    arg: int

    def __init__(self, C, d, shift: int, arg: int):
        object.__setattr__(self, "C", tuple(tuple(int(v) for v in row) for row in C))
        object.__setattr__(self, "d", tuple(int(v) for v in d))
        object.__setattr__(self, "shift", int(shift))
        object.__setattr__(self, "arg", int(arg))
        if len(self.C) != len(self.d):
            raise ValueError("C and d disagree on the number of rows")

    @property
    def m(self) -> int:
        return len(self.C[0]) if self.C else 0

    def value(self, t: int) -> int:
        """The factor's weight at parameter value ``t`` (by counting)."""
        Q = StandardPolytope(self.C, [(t - self.shift) * v for v in self.d], self.m)
        return count(Q).count


def simplex_factor(k: int, arg: int, shift: int = 0) -> LateDilatedFactor:
    """``|(x - shift) Δ_{k-1}|``, i.e. ``binom(x - shift + k - 1, k - 1)``."""
    return LateDilatedFactor([[1] * k], [1], shift, arg)


def cube_factor(k: int, arg: int) -> LateDilatedFactor:
    """``x**k``: the ``(x-1)``-dilated k-cube in paired form ``y_i + z_i = 1``."""
    C = [[int(j == i) for j in range(k)] + [int(j == i) for j in range(k)] for i in range(k)]
    return LateDilatedFactor(C, [1] * k, 1, arg)


def family_from_factors(factors: Sequence[LateDilatedFactor], n: int) -> ParametricFamily:
    """Product of late-dilated factors as one family with block-diagonal C."""
    if not factors:
        return ParametricFamily.trivial(n)
    m = sum(f.m for f in factors)
    C, D, e = [], [], []
    offset = 0
    for f in factors:
        if not 0 <= f.arg < n:
            raise ValueError(f"factor reads x[{f.arg}] but there are {n} parameters")
        for row, di in zip(f.C, f.d):
            full = [0] * m
            full[offset:offset + f.m] = row
            C.append(full)
            drow = [0] * n
            drow[f.arg] = di
            D.append(drow)
            e.append(-f.shift * di)
        offset += f.m
    return ParametricFamily(C, D, e, m=m, n=n)


def family_for_monomial(alpha: Sequence[int]) -> ParametricFamily:
    """Family whose weight is ``x**alpha``, with ``m = 2|alpha|``."""
    if any(a < 0 for a in alpha):
        raise ValueError("exponents must be nonnegative")
    return family_from_factors([cube_factor(a, i) for i, a in enumerate(alpha) if a > 0], len(alpha))


def family_for_binomial(beta: Sequence[int], basis: str) -> ParametricFamily:
    """Product of binomial basis functions indexed by ``beta``.

    ``beta_i = 0`` is the constant 1 (no variables); ``beta_i = k >= 2`` is
    ``binom(x_i + k - 1, k - 1)`` for the rising basis and ``binom(x_i, k - 1)``
    for the falling basis, each from a k-variable simplex, so ``m = |beta|``.
    """
    if basis not in (RISING, FALLING):
        raise ValueError(f"not a binomial basis: {basis!r}")
    factors = []
    for i, k in enumerate(beta):
        if k == 0:
            continue
        if k == 1:
            raise ValueError("index 1 duplicates the constant; use 0")
        factors.append(simplex_factor(k, i, shift=0 if basis == RISING else k - 1))
    return family_from_factors(factors, len(beta))


@dataclass(frozen=True)
class LiftedPolytope:
    base: StandardPolytope
    n: int
    m: int
    polytope: StandardPolytope
    family: ParametricFamily

    def project(self, point: Sequence[int]) -> tuple[int, ...]:
        return tuple(point[: self.n])


def lift(P: StandardPolytope, F: ParametricFamily) -> LiftedPolytope:
    """The weight lifting polytope of (P, F)."""
    if F.n != P.n:
        raise ValueError(f"family reads {F.n} parameters but P has {P.n} variables")
    N = P.n + F.m
    rows, rhs = [], []
    for row, bi in zip(P.A, P.b):
        rows.append(list(row) + [0] * F.m)
        rhs.append(bi)
    for crow, drow, ei in zip(F.C, F.D, F.e):
        rows.append(list(drow) + [-c for c in crow])
        rhs.append(-ei)
    return LiftedPolytope(P, P.n, F.m, StandardPolytope(rows, rhs, N), F)


def lift_dilated(P: StandardPolytope, F: ParametricFamily, t: int) -> LiftedPolytope:
    """Lifting polytope of ``tP`` for the same family."""
    return lift(dilate(P, t), F)


def weight_eval(F: ParametricFamily, x: Sequence[int], cfg: EnumConfig = DEFAULT) -> int:
    """``|Q(x) ∩ Z^m|``; raises UnboundedError if ``Q(x)`` is unbounded."""
    return count(F.at(x), cfg).count


# ---------------------------------------------------------------------------
# weight expressions


@dataclass(frozen=True)
class WeightTerm:
    coeff: Fraction
    family: ParametricFamily
    label: tuple = ()


@dataclass(frozen=True)
class WeightExpr:
    """Rational combination of parametric families (weights may be negative)."""

    n: int
    terms: tuple[WeightTerm, ...]
    polynomial: Optional[Polynomial] = None
    basis: Optional[str] = None

    @property
    def degree(self) -> Optional[int]:
        return self.polynomial.degree if self.polynomial is not None else None

    @classmethod
    def from_family(cls, F: ParametricFamily, coeff=1) -> "WeightExpr":
        return cls(F.n, (WeightTerm(Fraction(coeff), F),))

    def __call__(self, x: Sequence[int], cfg: EnumConfig = DEFAULT) -> Fraction:
        return sum((t.coeff * weight_eval(t.family, x, cfg) for t in self.terms), Fraction(0))

    def is_counting(self) -> bool:
        return len(self.terms) == 1 and self.terms[0].coeff == 1


def _univariate_change(a: int, basis: str) -> list[Fraction]:
    """Coefficients c_j with x**a = sum_j c_j v_j(x), v_j of degree j, j = 0..a."""
    from .exact import binomial

    def v(j, x):
        if j == 0:
            return 1
        return binomial(x + j, j) if basis == RISING else binomial(x, j)

    pts = range(a + 1)
    M = [[v(j, x) for j in range(a + 1)] for x in pts]
    sol = solve_linear(M, [x ** a for x in pts])
    assert sol is not None and not sol.nullspace
    return list(sol.solution)


def compile_polynomial(poly: Polynomial, basis: str = CUBE) -> WeightExpr:
    """Express a polynomial weight as a signed combination of counting families.

    ``cube`` uses one hypercube family per monomial; ``rising``/``falling``
    expand every monomial in the binomial basis and emit one family per basis
    product.  Evaluation agrees with ``poly`` at every integer ``x >= 0``.
    """
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}")
    n = poly.nvars
    if basis == CUBE:
        terms = tuple(
            WeightTerm(c, family_for_monomial(exp), exp) for exp, c in sorted(poly.terms.items())
        )
        return WeightExpr(n, terms, poly, basis)
    acc: dict[tuple, Fraction] = {}
    cache: dict[int, list[Fraction]] = {}
    for exp, c in poly.terms.items():
        per_var = []
        for a in exp:
            if a not in cache:
                cache[a] = _univariate_change(a, basis)
            per_var.append(list(enumerate(cache[a])))
        for combo in itertools.product(*per_var):
            coeff = c
            for _, cj in combo:
                coeff *= cj
            if coeff == 0:
                continue
            degs = tuple(j for j, _ in combo)
            acc[degs] = acc.get(degs, Fraction(0)) + coeff
    terms = []
    for degs, coeff in sorted(acc.items()):
        if coeff == 0:
            continue
        beta = tuple(0 if j == 0 else j + 1 for j in degs)
        terms.append(WeightTerm(coeff, family_for_binomial(beta, basis), beta))
    return WeightExpr(n, tuple(terms), poly, basis)


def weighted_sum(P: StandardPolytope, W: WeightExpr, t: int = 1, cfg: EnumConfig = DEFAULT, jobs: int = 1) -> Fraction:
    """``sum_{x in tP ∩ Z^n} w(x)`` as a signed sum of lifted lattice-point counts."""
    if W.n != P.n:
        raise ValueError(f"weight reads {W.n} variables but P has {P.n}")
    total = Fraction(0)
    for term in W.terms:
        total += term.coeff * count(lift_dilated(P, term.family, t).polytope, cfg, jobs).count
    return total


def weighted_sum_bruteforce(P: StandardPolytope, W: WeightExpr, t: int = 1) -> Fraction:
    """Same sum by enumerating ``tP`` and evaluating the weight point by point.

    Polynomial-origin weights are evaluated directly; family weights count each
    fiber by plain enumeration (no memoized counting).
    """
    if W.n != P.n:
        raise ValueError(f"weight reads {W.n} variables but P has {P.n}")
    total = Fraction(0)
    for x in enumerate_points(dilate(P, t)):
        if W.polynomial is not None:
            total += W.polynomial(x)
        else:
            for term in W.terms:
                total += term.coeff * sum(1 for _ in enumerate_points(term.family.at(x)))
    return total
