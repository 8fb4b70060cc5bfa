"""Kostka numbers, Littlewood-Richardson coefficients and their polytopes.

Gelfand-Tsetlin patterns count semistandard tableaux, hives count LR
coefficients.  Both are built here from affine forms so that the same code
produces either a fixed H-polytope or a parametric family whose parameters
are the coordinates of another polytope (a partition simplex, or the
simplex of compositions).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from ..calculus import MaxCertificate, maximize
from ..counter import DEFAULT, EnumConfig, count
from ..lifting import ParametricFamily, lift, product_family
from ..polytope import HPolytope, StandardPolytope, standardize


# ---------------------------------------------------------------------------
# partitions and compositions


def partitions(n: int, max_part: Optional[int] = None) -> list[tuple[int, ...]]:
    """Partitions of n in reverse lexicographic order."""
    max_part = n if max_part is None else max_part
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def compositions(n: int, parts: int) -> list[tuple[int, ...]]:
    """Weak compositions of n into ``parts`` nonnegative parts."""
    if parts == 0:
        return [()] if n == 0 else []
    return [(first,) + rest for first in range(n, -1, -1) for rest in compositions(n - first, parts - 1)]


def as_partition(lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(v) for v in lam)
    if any(v < 0 for v in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{lam} is not a partition")
    return tuple(v for v in lam if v > 0)


def contains(lam, mu) -> bool:
    return len(mu) <= len(lam) and all(m <= l for m, l in zip(mu, lam))


# ---------------------------------------------------------------------------
# brute-force tableau enumeration


def _fillings(lam, mu, n_values):
    """Yield the semistandard fillings of the skew shape lam/mu with entries 1..n_values."""
    mu = tuple(mu) + (0,) * (len(lam) - len(mu))
    cells = [(i, j) for i in range(len(lam)) for j in range(mu[i], lam[i])]
    filling: dict = {}

    def rec(k):
        if k == len(cells):
            yield filling
            return
        i, j = cells[k]
        low = 1
        if (i, j - 1) in filling:
            low = max(low, filling[(i, j - 1)])
        if (i - 1, j) in filling:
            low = max(low, filling[(i - 1, j)] + 1)
        for v in range(low, n_values + 1):
            filling[(i, j)] = v
            yield from rec(k + 1)
        filling.pop((i, j), None)

    yield from rec(0)


def skew_kostka_bruteforce(lam, mu, alpha) -> int:
    """Number of semistandard tableaux of shape lam/mu with content alpha."""
    lam, mu = as_partition(lam), as_partition(mu)
    if not contains(lam, mu):
        return 0
    alpha = tuple(alpha)
    if sum(lam) - sum(mu) != sum(alpha):
        return 0
    total = 0
    for f in _fillings(lam, mu, len(alpha)):
        content = [0] * len(alpha)
        for v in f.values():
            content[v - 1] += 1
        total += tuple(content) == alpha
    return total


def kostka_bruteforce(lam, alpha) -> int:
    return skew_kostka_bruteforce(lam, (), alpha)


def lr_bruteforce(lam, mu, nu) -> int:
    """LR coefficient as the number of LR tableaux of shape lam/mu and content nu.

    These are semistandard fillings whose reverse reading word (rows right to
    left, top to bottom) is a lattice word.
    """
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    if not contains(lam, mu) or sum(lam) != sum(mu) + sum(nu):
        return 0
    total = 0
    for f in _fillings(lam, mu, len(nu)):
        seen = [0] * (len(nu) + 1)
        ok = True
        for i in range(len(lam)):
            for j in sorted((j for (r, j) in f if r == i), reverse=True):
                v = f[(i, j)]
                seen[v] += 1
                if v > 1 and seen[v] > seen[v - 1]:
                    ok = False
                    break
            if not ok:
                break
        if ok and all(seen[k + 1] == nu[k] for k in range(len(nu))):
            total += 1
    return total


# ---------------------------------------------------------------------------
# affine forms and a small constraint builder


@dataclass(frozen=True)
class Lin:
    """``sum y_coef * y + sum x_coef * x + const`` (y: unknowns, x: parameters)."""

    y: tuple = ()
    x: tuple = ()
    c: int = 0

    @staticmethod
    def const(c: int) -> "Lin":
        return Lin((), (), int(c))

    @staticmethod
    def param(i: int) -> "Lin":
        return Lin((), ((i, 1),), 0)

    @staticmethod
    def _merge(a, b, sign):
        d = dict(a)
        for k, v in b:
            d[k] = d.get(k, 0) + sign * v
        return tuple(sorted((k, v) for k, v in d.items() if v))

    def __add__(self, other):
        other = other if isinstance(other, Lin) else Lin.const(other)
        return Lin(self._merge(self.y, other.y, 1), self._merge(self.x, other.x, 1), self.c + other.c)

    __radd__ = __add__

    def __sub__(self, other):
        other = other if isinstance(other, Lin) else Lin.const(other)
        return Lin(self._merge(self.y, other.y, -1), self._merge(self.x, other.x, -1), self.c - other.c)

    def __rsub__(self, other):
        return Lin.const(other) - self


def lin_sum(forms) -> Lin:
    total = Lin()
    for f in forms:
        total = total + f
    return total


class Builder:
    """Collects ``form <= 0`` and ``form == 0`` rows over unknowns y and parameters x."""

    def __init__(self, nparams: int = 0):
        self.nparams = nparams
        self.nvars = 0
        self.ineq: list[Lin] = []
        self.eq: list[Lin] = []

    def var(self) -> Lin:
        self.nvars += 1
        return Lin(((self.nvars - 1, 1),), (), 0)

    def le(self, a, b):
        self.ineq.append(a - b)

    def ge(self, a, b):
        self.ineq.append(b - a)

    def equal(self, a, b):
        self.eq.append(a - b)

    def _split(self, form: Lin, params: Optional[Sequence[int]]):
        """Row in y and right-hand side: form <= 0 becomes row.y <= rhs."""
        row = [0] * self.nvars
        for k, v in form.y:
            row[k] = v
        if params is None:
            rhs_x = [0] * self.nparams
            for k, v in form.x:
                rhs_x[k] = -v
            return row, rhs_x, -form.c
        return row, None, -form.c - sum(v * params[k] for k, v in form.x)

    def hpolytope(self, params: Optional[Sequence[int]] = None) -> HPolytope:
        """The fixed polytope in y (parameters substituted by ``params``)."""
        if self.nparams and params is None:
            raise ValueError("parameters required")
        params = params if params is not None else []
        G, h, E, f = [], [], [], []
        for form in self.ineq:
            row, _, rhs = self._split(form, params)
            G.append(row)
            h.append(rhs)
        for form in self.eq:
            row, _, rhs = self._split(form, params)
            E.append(row)
            f.append(rhs)
        return HPolytope(G, h, E, f, self.nvars)

    def family(self) -> ParametricFamily:
        """``{y >= 0 : G y <= H x + h, E y = E' x + f}`` as a standard family.

        Each inequality gets a slack, so ``C = [[G, I], [E, 0]]``,
        ``D = [[H], [E']]`` and ``e = (h, f)``.  Unknowns must be nonnegative on
        the polytope for the count to be right; callers guarantee it.
        """
        k = len(self.ineq)
        C, D, e = [], [], []
        for i, form in enumerate(self.ineq):
            row, dx, rhs = self._split(form, None)
            C.append(row + [int(j == i) for j in range(k)])
            D.append(dx)
            e.append(rhs)
        for form in self.eq:
            row, dx, rhs = self._split(form, None)
            C.append(row + [0] * k)
            D.append(dx)
            e.append(rhs)
        return ParametricFamily(C, D, e, m=self.nvars + k, n=self.nparams)


# ---------------------------------------------------------------------------
# Gelfand-Tsetlin patterns


def _gt_rows(B: Builder, top: Sequence[Lin], prefix_sums: Sequence[Lin]):
    """GT pattern with top row ``top`` (length N) and row k summing to ``prefix_sums[k-1]``."""
    N = len(top)
    rows = {N: list(top)}
    for k in range(N - 1, 0, -1):
        rows[k] = [B.var() for _ in range(k)]
    for k in range(1, N):
        for j in range(k):
            B.ge(rows[k + 1][j], rows[k][j])
            B.ge(rows[k][j], rows[k + 1][j + 1])
    for k in range(1, N + 1):
        B.equal(lin_sum(rows[k]), prefix_sums[k - 1])
    return rows


def _const_prefix(alpha) -> list[Lin]:
    return [Lin.const(v) for v in itertools.accumulate(alpha)]


def _pad(seq, N):
    return tuple(seq) + (0,) * (N - len(seq))


def gt_polytope(lam, alpha) -> HPolytope:
    """GT polytope of top row lam and content alpha (N = max(len lam, len alpha) rows)."""
    lam = as_partition(lam)
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ValueError("content must be nonnegative")
    if sum(lam) != sum(alpha):
        raise ValueError(f"|lambda| = {sum(lam)} differs from |alpha| = {sum(alpha)}")
    N = max(len(lam), len(alpha), 1)
    B = Builder()
    _gt_rows(B, [Lin.const(v) for v in _pad(lam, N)], _const_prefix(_pad(alpha, N)))
    return B.hpolytope()


def kostka(lam, alpha, cfg: EnumConfig = DEFAULT) -> int:
    """K_{lam, alpha} as the lattice-point count of the GT polytope."""
    P, _ = standardize(gt_polytope(lam, alpha), nonneg=True)
    return count(P, cfg).count


# ---------------------------------------------------------------------------
# partition simplex


def partition_simplex(n: int, parts: int) -> tuple[StandardPolytope, list[Lin]]:
    """Partitions of n with at most ``parts`` parts, in difference coordinates.

    ``d_i = x_i - x_{i+1}`` (with ``x_{parts+1} = 0``) turns the ordered simplex
    into ``{d >= 0 : sum i d_i = n}``.  Also returns the forms ``x_j = sum_{i>=j} d_i``.
    """
    if parts < 1:
        raise ValueError("need at least one part")
    P = StandardPolytope([[i + 1 for i in range(parts)]], [n], parts)
    forms = [lin_sum(Lin.param(i) for i in range(j, parts)) for j in range(parts)]
    return P, forms


def partition_from_differences(d) -> tuple[int, ...]:
    return as_partition(list(itertools.accumulate(reversed(d)))[::-1])


# ---------------------------------------------------------------------------
# RSK


def transportation_polytope(mu, nu) -> StandardPolytope:
    """Nonnegative matrices with row sums mu and column sums nu."""
    r, c = len(mu), len(nu)
    A, b = [], []
    for i in range(r):
        A.append([int(k // c == i) for k in range(r * c)])
        b.append(mu[i])
    for j in range(c):
        A.append([int(k % c == j) for k in range(r * c)])
        b.append(nu[j])
    return StandardPolytope(A, b, r * c)


def rsk_family(mu, nu, parts: int) -> ParametricFamily:
    """Family on the partition simplex whose weight at lam is K_{lam,mu} K_{lam,nu}."""
    N = parts
    fams = []
    for content in (mu, nu):
        B = Builder(parts)
        _, top = partition_simplex(sum(mu), parts)
        _gt_rows(B, top, _const_prefix(_pad(content, N)))
        fams.append(B.family())
    return product_family(fams)


def rsk_check(mu, nu, cfg: EnumConfig = DEFAULT) -> dict:
    mu, nu = as_partition(mu), as_partition(nu)
    n = sum(mu)
    if sum(nu) != n:
        raise ValueError("mu and nu must have the same size")
    lhs = sum(kostka(lam, mu, cfg) * kostka(lam, nu, cfg) for lam in partitions(n))
    rhs = count(transportation_polytope(mu, nu), cfg).count
    parts = max(n, 1)
    P, _ = partition_simplex(n, parts)
    lifted = count(lift(P, rsk_family(_pad(mu, parts), _pad(nu, parts), parts)).polytope, cfg).count
    return {"lhs": lhs, "rhs": rhs, "lifted": lifted, "ok": lhs == rhs == lifted}


# ---------------------------------------------------------------------------
# hives


def _hive(B: Builder, n: int, lam: Sequence[Lin], mu: Sequence[Lin], nu: Sequence[Lin]):
    """Hive of side n; boundary from partial sums, interior unknowns, rhombus inequalities.

    Points (i, j) with i + j <= n.  Along j = 0 the labels are partial sums of
    mu, along i = 0 partial sums of lam, and along i + j = n they are |mu| plus
    partial sums of nu.
    """
    h = {}
    mu_ps = [Lin()] + list(itertools.accumulate(mu))
    lam_ps = [Lin()] + list(itertools.accumulate(lam))
    nu_ps = [Lin()] + list(itertools.accumulate(nu))
    for i in range(n + 1):
        h[(i, 0)] = mu_ps[i]
    for j in range(1, n + 1):
        h[(0, j)] = lam_ps[j]
        h[(n - j, j)] = mu_ps[n] + nu_ps[j]
    B.equal(lam_ps[n], mu_ps[n] + nu_ps[n])
    for i in range(1, n):
        for j in range(1, n - i):
            h[(i, j)] = B.var()
    for i in range(n):
        for j in range(n - i):
            if i + j + 2 <= n:
                B.ge(h[(i + 1, j)] + h[(i, j + 1)], h[(i, j)] + h[(i + 1, j + 1)])
            if j >= 1 and i + j + 1 <= n:
                B.ge(h[(i, j)] + h[(i + 1, j)], h[(i, j + 1)] + h[(i + 1, j - 1)])
            if i >= 1 and i + j + 1 <= n:
                B.ge(h[(i, j)] + h[(i, j + 1)], h[(i + 1, j)] + h[(i - 1, j + 1)])
    return h


def _hive_side(*shapes) -> int:
    return max(max((len(s) for s in shapes), default=0), 1)


def hive_polytope(lam, mu, nu) -> HPolytope:
    """Hive polytope whose lattice points count c^lam_{mu,nu}."""
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    if sum(mu) + sum(nu) != sum(lam):
        raise ValueError(f"|mu| + |nu| = {sum(mu) + sum(nu)} differs from |lambda| = {sum(lam)}")
    n = _hive_side(lam, mu, nu)
    B = Builder()
    _hive(B, n, *[[Lin.const(v) for v in _pad(s, n)] for s in (lam, mu, nu)])
    return B.hpolytope()


def lr_coefficient(lam, mu, nu, cfg: EnumConfig = DEFAULT) -> int:
    """c^lam_{mu,nu} as the lattice-point count of the hive polytope."""
    P, _ = standardize(hive_polytope(lam, mu, nu), nonneg=True)
    return count(P, cfg).count


def lr_identity_family(lam, mu, alpha, parts: int) -> ParametricFamily:
    """Family over the partition simplex of nu: weight |hive(lam, mu, nu) x GT(nu, alpha)|."""
    k = sum(alpha)
    _, nu = partition_simplex(k, parts)
    n = _hive_side(lam, mu, range(parts))
    B = Builder(parts)
    _hive(B, n, [Lin.const(v) for v in _pad(lam, n)], [Lin.const(v) for v in _pad(mu, n)],
          list(nu) + [Lin()] * (n - parts))
    hive_fam = B.family()
    N = max(parts, len(alpha))
    B = Builder(parts)
    _gt_rows(B, list(nu) + [Lin()] * (N - parts), _const_prefix(_pad(alpha, N)))
    return product_family([hive_fam, B.family()])


def lr_identity_check(lam, mu, alpha, cfg: EnumConfig = DEFAULT) -> dict:
    """Skew Kostka number K_{lam/mu, alpha} three ways."""
    lam, mu = as_partition(lam), as_partition(mu)
    alpha = tuple(int(a) for a in alpha)
    if not contains(lam, mu):
        raise ValueError(f"{mu} is not contained in {lam}")
    k = sum(lam) - sum(mu)
    if sum(alpha) != k:
        raise ValueError(f"|alpha| must equal |lambda| - |mu| = {k}")
    lhs = skew_kostka_bruteforce(lam, mu, alpha)
    rhs = sum(lr_coefficient(lam, mu, nu, cfg) * kostka(nu, alpha, cfg) for nu in partitions(k))
    parts = max(k, 1)
    P, _ = partition_simplex(k, parts)
    lifted = count(lift(P, lr_identity_family(lam, mu, alpha, parts)).polytope, cfg).count
    return {"lhs": lhs, "rhs": rhs, "lifted": lifted, "ok": lhs == rhs == lifted}


# ---------------------------------------------------------------------------
# Kostka maximization and Newell-Littlewood


def kostka_family(lam, N: int) -> ParametricFamily:
    """Family over compositions alpha in N parts with weight K_{lam, alpha}."""
    lam = as_partition(lam)
    if len(lam) > N:
        # no tableau of this shape fits in N letters: an infeasible family
        return ParametricFamily([[1]], [[0] * N], [-1], m=1, n=N)
    B = Builder(N)
    prefix = list(itertools.accumulate(Lin.param(i) for i in range(N)))
    _gt_rows(B, [Lin.const(v) for v in _pad(lam, N)], prefix)
    return B.family()


def kostka_max(lam, N: int, cfg: EnumConfig = DEFAULT) -> MaxCertificate:
    """max over weak compositions alpha of |lam| into N parts of K_{lam, alpha}."""
    lam = as_partition(lam)
    if N < 1:
        raise ValueError("N must be positive")
    P = StandardPolytope([[1] * N], [sum(lam)], N)
    return maximize(P, kostka_family(lam, N), cfg=cfg)


def newell_littlewood(mu, nu, lam, cfg: EnumConfig = DEFAULT) -> int:
    """sum over alpha, beta, gamma of c^mu_{alpha beta} c^nu_{alpha gamma} c^lam_{beta gamma}."""
    mu, nu, lam = as_partition(mu), as_partition(nu), as_partition(lam)
    s = sum(mu) + sum(nu) + sum(lam)
    if s % 2:
        return 0
    a = (sum(mu) + sum(nu) - sum(lam)) // 2
    b = (sum(mu) + sum(lam) - sum(nu)) // 2
    c = (sum(nu) + sum(lam) - sum(mu)) // 2
    if min(a, b, c) < 0:
        return 0

    @lru_cache(maxsize=None)
    def lr(outer, x, y):
        if not contains(outer, x) or not contains(outer, y):
            return 0
        return lr_coefficient(outer, x, y, cfg)

    total = 0
    for alpha in partitions(a):
        for beta in partitions(b):
            first = lr(mu, alpha, beta)
            if not first:
                continue
            for gamma in partitions(c):
                total += first * lr(nu, alpha, gamma) * lr(lam, beta, gamma)
    return total
