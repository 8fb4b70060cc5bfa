"""Exact integer/rational helpers, dense linear algebra and a rational simplex LP.

Rationals are :class:`fractions.Fraction` throughout; they are always reduced
and carry a positive denominator, which is all the package needs from a
rational type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

Rat = Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _check_system(A: Sequence[Sequence], b: Sequence) -> int:
    if len(A) != len(b):
        raise ValueError(f"matrix has {len(A)} rows but rhs has length {len(b)}")
    widths = {len(row) for row in A}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    return widths.pop() if widths else 0


def binomial(n, k: int):
    """Generalized binomial coefficient n(n-1)...(n-k+1)/k!.

    ``n`` may be any integer (or Fraction); the result is 0 for ``k < 0``.
    """
    if k < 0:
        return 0
    if isinstance(n, int) and n >= 0:
        return math.comb(n, k) if k <= n else 0
    num = Fraction(1)
    for i in range(k):
        num *= n - i
    val = num / math.factorial(k)
    return int(val) if val.denominator == 1 else val


def lcm_all(values) -> int:
    return reduce(math.lcm, values, 1)


def gcd_all(values) -> int:
    return reduce(math.gcd, values, 0)


def int_kth_root_floor(s: int, k: int) -> int:
    """Largest integer M with M**k <= s."""
    if s < 0:
        raise ValueError("int_kth_root_floor needs s >= 0")
    if k <= 0:
        raise ValueError("k must be positive")
    if s < 2 or k == 1:
        return s
    if k == 2:
        return math.isqrt(s)
    # float guess, then exact correction
    guess = int(round(math.exp(math.log(s) / k))) if s.bit_length() < 1000 else 1 << (s.bit_length() // k)
    m = max(guess, 0)
    while m ** k > s:
        m -= 1
    while (m + 1) ** k <= s:
        m += 1
    return m


def int_kth_root_ceil_ratio(s: int, n: int, k: int) -> int:
    """Smallest integer M >= 0 with M**k * n >= s (n > 0)."""
    if n <= 0:
        raise ValueError("n must be positive")
    m = int_kth_root_floor(s // n, k)
    while m > 0 and (m - 1) ** k * n >= s:
        m -= 1
    while m ** k * n < s:
        m += 1
    return m


# ---------------------------------------------------------------------------
# dense linear algebra over Q


def rref(A: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [[Fraction(v) for v in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [vi - f * vr for vi, vr in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


@dataclass(frozen=True)
class LinearSolution:
    solution: tuple[Fraction, ...]
    nullspace: tuple[tuple[Fraction, ...], ...]


def solve_linear(A: Sequence[Sequence], b: Sequence) -> Optional[LinearSolution]:
    """Particular solution and kernel basis of ``A x = b``; None if inconsistent."""
    n = _check_system(A, b)
    if not A:
        basis = tuple(tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n))
        return LinearSolution(tuple(Fraction(0) for _ in range(n)), basis)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    M, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = M[r][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -M[r][f]
        basis.append(tuple(v))
    return LinearSolution(tuple(x), tuple(basis))


def independent_rows(A: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subset of the rows of A."""
    if not A:
        return []
    T = [list(col) for col in zip(*A)] if A and A[0] else []
    if not T:
        return []
    return rref(T)[1]


# ---------------------------------------------------------------------------
# simplex


@dataclass(frozen=True)
class LpOutcome:
    status: str
    value: Optional[Fraction] = None
    witness: Optional[tuple[Fraction, ...]] = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Dense tableau for min c.x with an explicit basis list and a reduced-cost row."""

    def __init__(self, rows, rhs, basis):
        self.T = rows
        self.rhs = rhs
        self.basis = basis
        self.d = None

    def set_cost(self, cost):
        d = list(cost)
        for i, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb:
                for j, v in enumerate(self.T[i]):
                    if v:
                        d[j] -= cb * v
        self.d = d

    def pivot(self, r, c):
        T, rhs = self.T, self.rhs
        row = T[r]
        inv = 1 / row[c]
        if inv != 1:
            T[r] = row = [v * inv if v else v for v in row]
            rhs[r] *= inv
        nz = [j for j, v in enumerate(row) if v]
        for i in range(len(T)):
            if i == r:
                continue
            f = T[i][c]
            if f:
                Ti = T[i]
                for j in nz:
                    Ti[j] -= f * row[j]
                rhs[i] -= f * rhs[r]
        if self.d is not None:
            f = self.d[c]
            if f:
                for j in nz:
                    self.d[j] -= f * row[j]
        self.basis[r] = c

    def run(self, cost, allowed):
        """Bland's rule primal simplex; returns False if unbounded."""
        self.set_cost(cost)
        while True:
            d = self.d
            enter = next((j for j in allowed if d[j] < 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.T):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter)


def lp_solve(A: Sequence[Sequence], b: Sequence, objective: Sequence, sense: str = "max") -> LpOutcome:
    """Optimize ``objective . x`` over ``{x : A x = b, x >= 0}`` exactly.

    Two-phase simplex over the rationals with Bland's rule, so it terminates on
    degenerate inputs.
    """
    n = _check_system(A, b)
    if len(objective) != n:
        raise ValueError("objective length does not match the number of columns")
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    s = len(A)
    sign = -1 if sense == "max" else 1
    cost = [Fraction(sign * c) for c in objective]

    rows, rhs = [], []
    for row, bi in zip(A, b):
        flip = -1 if bi < 0 else 1
        rows.append([Fraction(flip * v) for v in row] + [Fraction(0)] * s)
        rhs.append(Fraction(flip * bi))
    for i in range(s):
        rows[i][n + i] = Fraction(1)
    tab = _Tableau(rows, rhs, [n + i for i in range(s)])

    phase1 = [Fraction(0)] * n + [Fraction(1)] * s
    tab.run(phase1, range(n + s))
    if any(tab.rhs[i] != 0 for i, bv in enumerate(tab.basis) if bv >= n):
        return LpOutcome(INFEASIBLE)

    # drive zero-level artificials out of the basis; drop redundant rows
    tab.d = None
    i = 0
    while i < len(tab.basis):
        if tab.basis[i] >= n:
            c = next((j for j in range(n) if tab.T[i][j] != 0), None)
            if c is None:
                del tab.T[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, c)
        i += 1
    tab.T = [row[:n] for row in tab.T]

    if not tab.run(cost, range(n)):
        return LpOutcome(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, bv in enumerate(tab.basis):
        x[bv] = tab.rhs[i]
    value = sum((Fraction(c) * xi for c, xi in zip(objective, x)), Fraction(0))
    return LpOutcome(OPTIMAL, value, tuple(x))
