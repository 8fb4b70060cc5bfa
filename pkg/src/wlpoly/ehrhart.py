"""Ehrhart quasi-polynomials by exact interpolation of dilation counts.

Counts of ``tP`` (optionally weighted) are sampled per residue class of ``t``
modulo a candidate period, interpolated exactly over the rationals, and then
checked against two further dilations per residue.  A fit is only accepted
when every holdout value is reproduced exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .counter import DEFAULT, EnumConfig, count
from .exact import solve_linear
from .polytope import (
    AffineChange,
    HPolytope,
    PeriodBudgetExceeded,
    StandardPolytope,
    affine_dimension,
    dilate,
    period_bound,
    standardize,
)

HOLDOUT = 2
MAX_TRIAL_PERIOD = 48


class UnderSampled(ValueError):
    pass


class InconsistentSamples(ValueError):
    pass


class ResidueDependentLeading(ValueError):
    pass


@dataclass(frozen=True)
class QuasiPolynomial:
    """``sum_m coeffs[m][t mod period] * t**m`` for ``m = 0..degree``."""

    degree: int
    period: int
    coeffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be positive")
        if len(self.coeffs) != self.degree + 1 or any(len(row) != self.period for row in self.coeffs):
            raise ValueError("coefficient table has the wrong shape")

    def __call__(self, t: int) -> Fraction:
        r = t % self.period
        value = Fraction(0)
        for m in range(self.degree, -1, -1):
            value = value * t + self.coeffs[m][r]
        return value

    def constituent(self, r: int) -> tuple[Fraction, ...]:
        """Coefficients (E_0, ..., E_D) of the polynomial used on ``t ≡ r``."""
        return tuple(self.coeffs[m][r % self.period] for m in range(self.degree + 1))

    def minimal_period(self) -> int:
        q = self.period
        for p in range(1, q + 1):
            if q % p == 0 and all(row[r] == row[r % p] for row in self.coeffs for r in range(q)):
                return p
        return q

    def reduced(self) -> "QuasiPolynomial":
        """Same function with the smallest period and trailing zero degrees dropped."""
        p = self.minimal_period()
        rows = [row[:p] for row in self.coeffs]
        while len(rows) > 1 and all(v == 0 for v in rows[-1]):
            rows.pop()
        return QuasiPolynomial(len(rows) - 1, p, tuple(tuple(row) for row in rows))

    def is_polynomial(self) -> bool:
        return self.minimal_period() == 1

    def to_string(self, var: str = "t") -> str:
        parts = []
        for r in range(self.period):
            c = self.constituent(r)
            terms = [f"{v}*{var}^{m}" if m > 1 else (f"{v}*{var}" if m == 1 else str(v))
                     for m, v in reversed(list(enumerate(c))) if v != 0]
            body = " + ".join(terms).replace("+ -", "- ") or "0"
            parts.append(body if self.period == 1 else f"[{var} ≡ {r} mod {self.period}] {body}")
        return "\n".join(parts)


@dataclass(frozen=True)
class FitReport:
    samples: tuple[tuple[int, Fraction], ...]
    holdout_residuals: tuple[Fraction, ...]
    detected_period: int
    degree: int
    period_used: int
    period_source: str
    counting_calls: int


def fit(samples: Sequence[tuple[int, object]], degree: int, period: int) -> QuasiPolynomial:
    """Exact per-residue interpolation.

    Each residue class needs ``degree + 1`` samples; any surplus samples must
    lie on the interpolant or :class:`InconsistentSamples` is raised.
    """
    if degree < 0 or period < 1:
        raise ValueError("degree must be >= 0 and period >= 1")
    seen = set()
    classes: dict[int, list[tuple[int, Fraction]]] = {r: [] for r in range(period)}
    for t, v in samples:
        t = int(t)
        if t in seen:
            raise ValueError(f"dilation {t} sampled twice")
        seen.add(t)
        classes[t % period].append((t, Fraction(v)))
    table = [[Fraction(0)] * period for _ in range(degree + 1)]
    for r, pts in classes.items():
        if len(pts) < degree + 1:
            raise UnderSampled(f"residue {r} mod {period} has {len(pts)} samples, needs {degree + 1}")
        pts.sort()
        head = pts[: degree + 1]
        sol = solve_linear([[t ** m for m in range(degree + 1)] for t, _ in head], [v for _, v in head])
        if sol is None or sol.nullspace:
            raise InconsistentSamples(f"interpolation failed on residue {r}")
        for m, c in enumerate(sol.solution):
            table[m][r] = c
        for t, v in pts[degree + 1:]:
            if sum(c * t ** m for m, c in enumerate(sol.solution)) != v:
                raise InconsistentSamples(f"sample at t={t} is off the interpolant of residue {r} mod {period}")
    return QuasiPolynomial(degree, period, tuple(tuple(row) for row in table))


def _schedule(degree: int, period: int, extra: int) -> list[list[int]]:
    """Per residue r, the first ``degree + 1 + extra`` dilations t >= 1 with t ≡ r."""
    out = []
    for r in range(period):
        start = r if r >= 1 else period
        out.append([start + period * j for j in range(degree + 1 + extra)])
    return out


def fit_function(
    f: Callable[[int], object],
    degree: int,
    period_hint: Optional[int] = None,
    certified_period: Optional[Callable[[], int]] = None,
    max_trial_period: int = MAX_TRIAL_PERIOD,
) -> tuple[QuasiPolynomial, FitReport]:
    """Fit a quasi-polynomial to ``t -> f(t)`` with holdout validation.

    The period is ``period_hint`` if given, else the certified multiple from
    ``certified_period`` when it is affordable, else the first trial period
    ``q = 1, 2, ...`` whose fit survives the holdout dilations.
    """
    cache: dict[int, Fraction] = {}

    def value(t):
        if t not in cache:
            cache[t] = Fraction(f(t))
        return cache[t]

    def attempt(q):
        sched = _schedule(degree, q, HOLDOUT)
        train = [(t, value(t)) for ts in sched for t in ts[: degree + 1]]
        qp = fit(train, degree, q)
        resid = tuple(value(t) - qp(t) for ts in sched for t in ts[degree + 1:])
        return qp, train, resid

    if period_hint is not None:
        candidates, source = [int(period_hint)], "hint"
    else:
        candidates, source = None, "trial"
        if certified_period is not None:
            try:
                candidates, source = [certified_period()], "vertex-bound"
            except PeriodBudgetExceeded:
                pass
        if candidates is None:
            candidates = range(1, max_trial_period + 1)

    for q in candidates:
        qp, train, resid = attempt(q)
        if all(v == 0 for v in resid):
            detected = qp.minimal_period()
            report = FitReport(tuple(train), resid, detected, degree, q, source, len(cache))
            return QuasiPolynomial(degree, detected, tuple(row[:detected] for row in qp.coeffs)), report
        if source != "trial":
            raise InconsistentSamples(f"period {q} ({source}) does not reproduce the holdout dilations")
    raise InconsistentSamples(f"no period up to {max_trial_period} reproduces the holdout dilations")


def _standard(P):
    """Standard form of P (H-form input is standardized) and its affine dimension."""
    if isinstance(P, HPolytope):
        P = standardize(P)[0]
    D = affine_dimension(P)
    if D < 0:
        raise ValueError("empty polytope")
    return P, D


def ehrhart_qp(
    P,
    period_hint: Optional[int] = None,
    cfg: EnumConfig = DEFAULT,
    jobs: int = 1,
) -> tuple[QuasiPolynomial, FitReport]:
    """Ehrhart quasi-polynomial ``t -> |tP ∩ Z^n|``.

    ``P`` may be a StandardPolytope or an HPolytope; an H-polytope is
    standardized separately at every dilation, since the translation that
    makes its coordinates nonnegative depends on ``t``.
    """
    S, D = _standard(P)
    if isinstance(P, HPolytope):
        def f(t):
            return count(standardize(P.dilate(t))[0], cfg, jobs).count
    else:
        def f(t):
            return count(dilate(P, t), cfg, jobs).count
    return fit_function(f, D, period_hint, certified_period=lambda: period_bound(S))


def transform_weight(change: AffineChange, W):
    """Re-express a weight on original coordinates after :func:`standardize`."""
    from .lifting import WeightExpr, WeightTerm, compile_polynomial

    if W.polynomial is not None:
        return compile_polynomial(change.transform_polynomial(W.polynomial), W.basis or "cube")
    terms = tuple(WeightTerm(t.coeff, change.transform_family(t.family), t.label) for t in W.terms)
    return WeightExpr(change.n_total, terms)


def weighted_ehrhart_qp(
    P,
    W,
    period_hint: Optional[int] = None,
    degree_bound: Optional[int] = None,
    cfg: EnumConfig = DEFAULT,
    jobs: int = 1,
) -> tuple[QuasiPolynomial, FitReport]:
    """Quasi-polynomial ``t -> sum_{x in tP} w(x)`` sampled through the lifting route.

    ``W`` is a :class:`~wlpoly.lifting.WeightExpr`.  Its degree is taken from
    the polynomial it was compiled from; weights built directly from families
    need ``degree_bound``.  The fitted degree is ``dim P + deg w``.
    """
    from .lifting import weighted_sum

    S, D = _standard(P)
    M = W.degree if degree_bound is None else degree_bound
    if M is None:
        raise ValueError("weight has no known degree; pass degree_bound")
    if isinstance(P, HPolytope):
        def f(t):
            St, change = standardize(P.dilate(t))
            return weighted_sum(St, transform_weight(change, W), 1, cfg, jobs)
    else:
        def f(t):
            return weighted_sum(P, W, t, cfg, jobs)
    certified = (lambda: period_bound(S)) if W.polynomial is not None else None
    return fit_function(f, D + M, period_hint, certified_period=certified)


def leading_coefficient(qp: QuasiPolynomial) -> Fraction:
    """``E_D``; raises :class:`ResidueDependentLeading` if it varies with ``t mod q``."""
    top = qp.coeffs[qp.degree]
    if any(v != top[0] for v in top):
        raise ResidueDependentLeading(f"degree-{qp.degree} coefficient depends on the residue: {list(map(str, top))}")
    return top[0]
