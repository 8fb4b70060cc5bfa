"""Polytope representations and the operations the counting engine relies on.

Two presentations are used:

* :class:`StandardPolytope` -- ``{x : A x = b, x >= 0}`` with integer data;
* :class:`HPolytope` -- ``{x : G x <= h, E x = f}`` with free variables.

:func:`standardize` converts the second into the first while keeping a
lattice-point bijection, recorded in an :class:`AffineChange`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .exact import INFEASIBLE, OPTIMAL, UNBOUNDED, independent_rows, lcm_all, gcd_all, lp_solve, rank
from .polynomial import Polynomial


class UnboundedError(ValueError):
    """A coordinate of the polytope is not bounded."""


class PeriodBudgetExceeded(RuntimeError):
    """Too many candidate bases to certify a period by vertex enumeration."""


def _int_matrix(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in rows)


def _int_vector(v) -> tuple[int, ...]:
    return tuple(int(x) for x in v)


def _integral_row(row, rhs) -> tuple[list[int], int]:
    """Scale a rational row and rhs by the lcm of denominators."""
    vals = [Fraction(v) for v in row] + [Fraction(rhs)]
    den = lcm_all(v.denominator for v in vals)
    ints = [int(v * den) for v in vals]
    return ints[:-1], ints[-1]


@dataclass(frozen=True)
class StandardPolytope:
    """The set ``{x in R^n : A x = b, x >= 0}``."""

    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    n: int

    def __init__(self, A, b, n: Optional[int] = None):
        A = _int_matrix(A)
        b = _int_vector(b)
        if len(A) != len(b):
            raise ValueError(f"A has {len(A)} rows, b has {len(b)} entries")
        widths = {len(r) for r in A}
        if len(widths) > 1:
            raise ValueError("ragged constraint matrix")
        if n is None:
            if not A:
                raise ValueError("dimension must be given when there are no rows")
            n = widths.pop()
        elif A and widths.pop() != n:
            raise ValueError("row width does not match n")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "n", int(n))

    @property
    def s(self) -> int:
        return len(self.A)

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.n or any(v < 0 for v in x):
            return False
        return all(sum(a * v for a, v in zip(row, x)) == bi for row, bi in zip(self.A, self.b))

    def is_empty(self) -> bool:
        return lp_solve(self.A, self.b, [0] * self.n).status == INFEASIBLE

    def dilate(self, t: int) -> "StandardPolytope":
        return dilate(self, t)

    def permute(self, order: Sequence[int]) -> "StandardPolytope":
        """Reorder the variables: new variable k is old variable ``order[k]``."""
        return StandardPolytope([[row[j] for j in order] for row in self.A], self.b, self.n)


def dilate(P: StandardPolytope, t: int) -> StandardPolytope:
    """``tP = {x : A x = t b, x >= 0}``; negative ``t`` is allowed."""
    return StandardPolytope(P.A, [t * v for v in P.b], P.n)


def block_product(*polys: StandardPolytope) -> StandardPolytope:
    """Cartesian product with a block-diagonal constraint matrix."""
    n = sum(P.n for P in polys)
    rows, rhs = [], []
    offset = 0
    for P in polys:
        for row, bi in zip(P.A, P.b):
            full = [0] * n
            full[offset:offset + P.n] = row
            rows.append(full)
            rhs.append(bi)
        offset += P.n
    return StandardPolytope(rows, rhs, n)


def simplex(m: int, t: int = 1) -> StandardPolytope:
    """``t`` times the standard simplex ``y_1 + ... + y_m = 1``."""
    return StandardPolytope([[1] * m], [t], m)


@dataclass(frozen=True)
class Bounds:
    lo: Optional[Fraction]
    hi: Optional[Fraction]  # None: unbounded above


def coordinate_bounds(P: StandardPolytope, i: int) -> Optional[Bounds]:
    """Exact range of ``x_i`` over P; None when P is empty, ``hi=None`` when unbounded."""
    if not 0 <= i < P.n:
        raise IndexError(i)
    obj = [0] * P.n
    obj[i] = 1
    lo = lp_solve(P.A, P.b, obj, "min")
    if lo.status == INFEASIBLE:
        return None
    hi = lp_solve(P.A, P.b, obj, "max")
    return Bounds(lo.value, hi.value if hi.status == OPTIMAL else None)


def affine_dimension(P: StandardPolytope) -> int:
    """Dimension of the affine hull of a nonempty P (-1 when empty)."""
    if P.is_empty():
        return -1
    zero = set(_zero_coords_lp(P))
    keep = [j for j in range(P.n) if j not in zero]
    sub = [[row[j] for j in keep] for row in P.A]
    return len(keep) - (rank(sub) if sub and keep else 0)


def _zero_coords_lp(P: StandardPolytope) -> list[int]:
    """Coordinates with max x_j = 0, found with few LPs.

    Repeatedly maximizes the sum of undecided coordinates; any coordinate positive
    at the optimum is not identically zero.
    """
    unknown = list(range(P.n))
    while unknown:
        obj = [0] * P.n
        for j in unknown:
            obj[j] = 1
        res = lp_solve(P.A, P.b, obj, "max")
        if res.status == UNBOUNDED:
            # some unknown coordinate is unbounded; identify them individually
            still = []
            for j in unknown:
                single = [0] * P.n
                single[j] = 1
                r = lp_solve(P.A, P.b, single, "max")
                if r.status == OPTIMAL and r.value == 0:
                    still.append(j)
            return still
        if res.value == 0:
            return unknown
        unknown = [j for j in unknown if res.witness[j] == 0]
    return []


def period_bound(P: StandardPolytope, max_bases: int = 200_000) -> int:
    """lcm of the vertex denominators of P, by enumeration of basic feasible solutions.

    Raises :class:`PeriodBudgetExceeded` when more than ``max_bases`` column
    subsets would have to be examined.
    """
    rows = independent_rows(P.A)
    A = [P.A[i] for i in rows]
    b = [P.b[i] for i in rows]
    r = len(A)
    n = P.n
    if r == 0:
        return 1
    total = math.comb(n, r)
    if total > max_bases:
        raise PeriodBudgetExceeded(f"{total} candidate bases exceed the budget of {max_bases}")
    An = np.array(A, dtype=float)
    bn = np.array(b, dtype=float)
    period = 1
    combos = itertools.combinations(range(n), r)
    while True:
        chunk = list(itertools.islice(combos, 4096))
        if not chunk:
            break
        idx = np.array(chunk)
        mats = An[:, idx].transpose(1, 0, 2)  # (k, r, r)
        dets = np.linalg.det(mats)
        ok = np.abs(dets) > 0.5  # integer matrices: nonzero determinant has |det| >= 1
        if not ok.any():
            continue
        sols = np.linalg.solve(mats[ok], np.broadcast_to(bn, (int(ok.sum()), r))[..., None])[..., 0]
        feas = (sols > -1e-7).all(axis=1)
        for cols in idx[ok][feas]:
            x = _exact_basic_solution(A, b, cols)
            if x is not None and all(v >= 0 for v in x):
                period = math.lcm(period, *(v.denominator for v in x))
    return period


def _exact_basic_solution(A, b, cols):
    from .exact import solve_linear

    sub = [[row[j] for j in cols] for row in A]
    sol = solve_linear(sub, b)
    if sol is None or sol.nullspace:
        return None
    return sol.solution


# ---------------------------------------------------------------------------
# inequality form


@dataclass(frozen=True)
class HPolytope:
    """``{x in R^n : G x <= h, E x = f}``; rows are scaled to integers on construction."""

    G: tuple[tuple[int, ...], ...]
    h: tuple[int, ...]
    E: tuple[tuple[int, ...], ...]
    f: tuple[int, ...]
    n: int

    def __init__(self, G=(), h=(), E=(), f=(), n: Optional[int] = None):
        G, E = list(G), list(E)
        if len(G) != len(h) or len(E) != len(f):
            raise ValueError("row count mismatch between matrices and right-hand sides")
        if n is None:
            widths = {len(r) for r in G + E}
            if len(widths) != 1:
                raise ValueError("cannot infer dimension")
            n = widths.pop()
        Gi, hi_, Ei, fi = [], [], [], []
        for row, v in zip(G, h):
            if len(row) != n:
                raise ValueError("inequality row has the wrong width")
            r, c = _integral_row(row, v)
            Gi.append(tuple(r))
            hi_.append(c)
        for row, v in zip(E, f):
            if len(row) != n:
                raise ValueError("equality row has the wrong width")
            r, c = _integral_row(row, v)
            Ei.append(tuple(r))
            fi.append(c)
        object.__setattr__(self, "G", tuple(Gi))
        object.__setattr__(self, "h", tuple(hi_))
        object.__setattr__(self, "E", tuple(Ei))
        object.__setattr__(self, "f", tuple(fi))
        object.__setattr__(self, "n", int(n))

    def contains(self, x: Sequence) -> bool:
        ok_ineq = all(sum(a * v for a, v in zip(r, x)) <= c for r, c in zip(self.G, self.h))
        return ok_ineq and all(sum(a * v for a, v in zip(r, x)) == c for r, c in zip(self.E, self.f))

    def dilate(self, t: int) -> "HPolytope":
        return HPolytope(self.G, [t * v for v in self.h], self.E, [t * v for v in self.f], self.n)

    def coordinate_range(self, j: int, sense: str) -> Optional[Fraction]:
        """min or max of x_j over the polytope (None when unbounded); raises if empty."""
        P, _ = _split_form(self)
        obj = [0] * P.n
        obj[j] = 1
        obj[self.n + j] = -1
        res = lp_solve(P.A, P.b, obj, sense)
        if res.status == INFEASIBLE:
            raise ValueError("empty polytope")
        return res.value if res.status == OPTIMAL else None


def _split_form(H: HPolytope) -> tuple[StandardPolytope, None]:
    """Standard form with every variable sign-split and one slack per inequality."""
    n, k = H.n, len(H.G)
    rows, rhs = [], []
    for i, (r, c) in enumerate(zip(H.G, H.h)):
        slack = [0] * k
        slack[i] = 1
        rows.append(list(r) + [-v for v in r] + slack)
        rhs.append(c)
    for r, c in zip(H.E, H.f):
        rows.append(list(r) + [-v for v in r] + [0] * k)
        rhs.append(c)
    return StandardPolytope(rows, rhs, 2 * n + k), None


@dataclass(frozen=True)
class AffineChange:
    """Bookkeeping for :func:`standardize`.

    Original variable ``x_i`` equals ``y[pos[i]] - y[neg[i]] + shift[i]`` (the
    ``neg`` term only for sign-split variables).  ``slack_rows`` lists the
    inequality rows that received a slack column, in column order.
    """

    n_orig: int
    n_total: int
    shift: tuple[int, ...]
    pos: tuple[int, ...]
    neg: tuple[Optional[int], ...]
    slack_rows: tuple[int, ...]
    slack_start: int

    def substitution_matrix(self) -> list[list[int]]:
        M = [[0] * self.n_total for _ in range(self.n_orig)]
        for i in range(self.n_orig):
            M[i][self.pos[i]] = 1
            if self.neg[i] is not None:
                M[i][self.neg[i]] = -1
        return M

    def from_standard(self, y: Sequence[int]) -> tuple[int, ...]:
        out = []
        for i in range(self.n_orig):
            v = y[self.pos[i]] + self.shift[i]
            if self.neg[i] is not None:
                v -= y[self.neg[i]]
            out.append(v)
        return tuple(out)

    def to_standard(self, x: Sequence[int], H: HPolytope) -> tuple[int, ...]:
        """Image of a point of H (sign-split variables use the canonical x+/x- split)."""
        y = [0] * self.n_total
        for i in range(self.n_orig):
            v = x[i] - self.shift[i]
            if self.neg[i] is None:
                y[self.pos[i]] = v
            elif v >= 0:
                y[self.pos[i]] = v
            else:
                y[self.neg[i]] = -v
        for k, r in enumerate(self.slack_rows):
            y[self.slack_start + k] = H.h[r] - sum(a * v for a, v in zip(H.G[r], x))
        return tuple(y)

    def transform_polynomial(self, poly: Polynomial) -> Polynomial:
        """Re-express a weight on the original coordinates in standardized coordinates."""
        return poly.substitute_affine(self.substitution_matrix(), self.shift)

    def transform_family(self, F):
        """Re-express a parametric family read from original coordinates."""
        from .lifting import ParametricFamily

        r = len(F.C)
        D = [[0] * self.n_total for _ in range(r)]
        e = list(F.e)
        for i in range(self.n_orig):
            for k in range(r):
                d = F.D[k][i]
                if d:
                    D[k][self.pos[i]] += d
                    if self.neg[i] is not None:
                        D[k][self.neg[i]] -= d
                    e[k] += d * self.shift[i]
        return ParametricFamily(F.C, D, e, m=F.m, n=self.n_total)


def standardize(H: HPolytope, translate: bool = True, nonneg: bool = False) -> tuple[StandardPolytope, AffineChange]:
    """Convert an H-polytope into standard form.

    Each variable is first bounded below by LP.  Variables that can go negative
    are translated by ``ceil(lo)`` (integer, so lattice points are preserved);
    variables unbounded below are sign-split.  Each remaining inequality gets a
    slack column; plain nonnegativity rows ``-x_j <= 0`` on untranslated
    variables are dropped because standard form already imposes them.

    ``nonneg=True`` declares that every point of H has ``x >= 0`` already,
    which skips the bounding LPs.
    """
    n = H.n
    shift = [0] * n
    split = [False] * n
    empty = False
    for j in range(0 if nonneg else n):
        try:
            lo = H.coordinate_range(j, "min")
        except ValueError:
            empty = True
            break
        if lo is None:
            if translate:
                split[j] = True
            else:
                raise UnboundedError(f"coordinate {j} is unbounded below")
        elif lo < 0:
            shift[j] = math.ceil(lo)
    if empty:
        shift = [0] * n
        split = [False] * n

    pos, neg = [], []
    col = 0
    for j in range(n):
        pos.append(col)
        col += 1
    for j in range(n):
        if split[j]:
            neg.append(col)
            col += 1
        else:
            neg.append(None)

    def is_nonneg_row(r, c):
        nz = [(j, a) for j, a in enumerate(r) if a]
        return c == 0 and len(nz) == 1 and nz[0][1] < 0 and shift[nz[0][0]] == 0 and not split[nz[0][0]]

    slack_rows = [i for i, (r, c) in enumerate(zip(H.G, H.h)) if not is_nonneg_row(r, c)]
    slack_start = col
    n_total = col + len(slack_rows)

    def image_row(r):
        row = [0] * n_total
        for j, a in enumerate(r):
            row[pos[j]] += a
            if neg[j] is not None:
                row[neg[j]] -= a
        return row

    rows, rhs = [], []
    for k, i in enumerate(slack_rows):
        r, c = H.G[i], H.h[i]
        row = image_row(r)
        row[slack_start + k] = 1
        rows.append(row)
        rhs.append(c - sum(a * s for a, s in zip(r, shift)))
    for r, c in zip(H.E, H.f):
        rows.append(image_row(r))
        rhs.append(c - sum(a * s for a, s in zip(r, shift)))

    change = AffineChange(n, n_total, tuple(shift), tuple(pos), tuple(neg), tuple(slack_rows), slack_start)
    for row_i, (row, c) in enumerate(zip(rows, rhs)):
        g = gcd_all(row)
        if g > 1 and c % g == 0:
            rows[row_i] = [v // g for v in row]
            rhs[row_i] = c // g
    return StandardPolytope(rows, rhs, n_total), change
