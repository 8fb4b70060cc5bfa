"""Exact lattice-point counting and enumeration for standard-form polytopes.

The search fixes one variable at a time.  After every assignment the equality
rows are re-propagated into integer interval bounds; a row with a single free
variable therefore pins that variable.  :func:`count` additionally splits the
free variables into connected components (variables sharing a row) and
memoizes component counts on their residual right-hand sides.  This is a
vector-partition dynamic program; it never changes the result, only the work.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .exact import INFEASIBLE, OPTIMAL, lp_solve
from .polytope import StandardPolytope, UnboundedError

INPUT_ORDER = "input"
TIGHTEST = "tightest"
CONNECTED = "connected"


class BudgetExceeded(RuntimeError):
    """The search explored more nodes than the configured budget."""


@dataclass(frozen=True)
class EnumConfig:
    """Search options.

    order: ``"connected"`` (most shared rows first, then narrowest range),
        ``"tightest"`` (narrowest range first) or ``"input"``.
    fathom: run an exact LP feasibility check every ``lp_every`` levels.
    budget: maximum number of search nodes.
    memo: memoize component counts (count only).
    """

    order: str = CONNECTED
    fathom: bool = False
    lp_every: int = 3
    budget: int = 50_000_000
    memo: bool = True

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.order not in (INPUT_ORDER, TIGHTEST, CONNECTED):
            raise ValueError(f"unknown variable order {self.order!r}")
        if self.lp_every <= 0:
            raise ValueError("lp_every must be positive")


DEFAULT = EnumConfig()


@dataclass(frozen=True)
class CountResult:
    count: int
    nodes_explored: int
    elapsed_ms: int


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


class _System:
    """Sparse integer equality system with root bounds."""

    def __init__(self, P: StandardPolytope):
        self.n = P.n
        self.b = list(P.b)
        self.rows = [[(j, a) for j, a in enumerate(row) if a] for row in P.A]
        self.col_rows: list[list[int]] = [[] for _ in range(P.n)]
        for i, row in enumerate(self.rows):
            for j, _ in row:
                self.col_rows[j].append(i)
        self.P = P

    # -- root bounds ------------------------------------------------------
    def root_bounds(self) -> Optional[tuple[list[int], list[int]]]:
        """Finite integer bounds for every variable, or None if infeasible.

        Interval propagation with infinite upper bounds first; LP only for
        variables it leaves unbounded.
        """
        for i, row in enumerate(self.rows):
            if not row and self.b[i] != 0:
                return None
        n = self.n
        lo = [0] * n
        hi: list[Optional[int]] = [None] * n
        changed = True
        sweeps = 0
        while changed and sweeps < 50:
            changed = False
            sweeps += 1
            for i, row in enumerate(self.rows):
                r = self.b[i]
                # max of sum a_j x_j: finite part + count of infinite terms
                max_fin, max_inf = 0, 0
                min_fin, min_inf = 0, 0
                for j, a in row:
                    if a > 0:
                        min_fin += a * lo[j]
                        if hi[j] is None:
                            max_inf += 1
                        else:
                            max_fin += a * hi[j]
                    else:
                        max_fin += a * lo[j]
                        if hi[j] is None:
                            min_inf += 1
                        else:
                            min_fin += a * hi[j]
                if min_inf == 0 and min_fin > r:
                    return None
                if max_inf == 0 and max_fin < r:
                    return None
                for j, a in row:
                    # a x_j = r - rest; tighten from the side that is finite
                    if a > 0:
                        own_min = a * lo[j]
                        if min_inf == 0:
                            ub = (r - (min_fin - own_min)) // a
                            if hi[j] is None or ub < hi[j]:
                                hi[j] = ub
                                changed = True
                        own_max_inf = hi[j] is None
                        rest_inf = max_inf - (1 if own_max_inf else 0)
                        if rest_inf == 0:
                            rest = max_fin - (0 if own_max_inf else a * hi[j])
                            lb = _ceil_div(r - rest, a)
                            if lb > lo[j]:
                                lo[j] = lb
                                changed = True
                    else:
                        own_max = a * lo[j]
                        if max_inf == 0:
                            ub = (max_fin - own_max - r) // (-a)
                            if hi[j] is None or ub < hi[j]:
                                hi[j] = ub
                                changed = True
                        own_min_inf = hi[j] is None
                        rest_inf = min_inf - (1 if own_min_inf else 0)
                        if rest_inf == 0:
                            rest = min_fin - (0 if own_min_inf else a * hi[j])
                            lb = _ceil_div(rest - r, -a)
                            if lb > lo[j]:
                                lo[j] = lb
                                changed = True
                    if hi[j] is not None and lo[j] > hi[j]:
                        return None
        missing = [j for j in range(n) if hi[j] is None]
        if missing:
            P = self.P
            feas = lp_solve(P.A, P.b, [0] * n)
            if feas.status == INFEASIBLE:
                return None
            for j in missing:
                obj = [0] * n
                obj[j] = 1
                res = lp_solve(P.A, P.b, obj, "max")
                if res.status != OPTIMAL:
                    raise UnboundedError(f"variable {j} is unbounded")
                v = res.value
                hi[j] = v.numerator // v.denominator
                if hi[j] < lo[j]:
                    return None
            # the new upper bounds may tighten the rest
            if not self.propagate(lo, hi, range(len(self.rows))):
                return None
        return lo, hi  # type: ignore[return-value]

    # -- propagation ------------------------------------------------------
    def propagate(self, lo: list[int], hi: list[int], rows) -> bool:
        """Tighten bounds to a fixpoint over the given rows; False if infeasible."""
        queue = list(rows)
        pending = set(queue)
        all_rows, b, col_rows = self.rows, self.b, self.col_rows
        while queue:
            i = queue.pop()
            pending.discard(i)
            row = all_rows[i]
            r = b[i]
            mn = mx = 0
            for j, a in row:
                if a > 0:
                    mn += a * lo[j]
                    mx += a * hi[j]
                else:
                    mn += a * hi[j]
                    mx += a * lo[j]
            if mn > r or mx < r:
                return False
            if mn == mx:
                continue
            slack_lo = r - mn  # room above the minimum
            slack_hi = mx - r  # room below the maximum
            for j, a in row:
                l, h = lo[j], hi[j]
                if l == h:
                    continue
                if a > 0:
                    nh = l + slack_lo // a
                    nl = h - slack_hi // a
                else:
                    nh = l + slack_hi // (-a)
                    nl = h - slack_lo // (-a)
                if nh < h or nl > l:
                    if nl > l:
                        lo[j] = nl
                    if nh < h:
                        hi[j] = nh
                    if lo[j] > hi[j]:
                        return False
                    for k in col_rows[j]:
                        if k not in pending:
                            pending.add(k)
                            queue.append(k)
        return True

    def lp_feasible(self, lo, hi, vars_, rows) -> bool:
        """Exact LP relaxation check of the subsystem on ``vars_`` within bounds."""
        index = {j: k for k, j in enumerate(vars_)}
        nv = len(vars_)
        A, rhs = [], []
        for i in rows:
            row = [0] * (2 * nv)
            r = self.b[i]
            for j, a in self.rows[i]:
                if j in index:
                    row[index[j]] = a
                    r -= a * lo[j]
                else:
                    r -= a * lo[j]
            A.append(row)
            rhs.append(r)
        for j, k in index.items():
            row = [0] * (2 * nv)
            row[k] = 1
            row[nv + k] = 1
            A.append(row)
            rhs.append(hi[j] - lo[j])
        return lp_solve(A, rhs, [0] * (2 * nv)).status != INFEASIBLE


class _Search:
    def __init__(self, system: _System, cfg: EnumConfig):
        self.sys = system
        self.cfg = cfg
        self.nodes = 0
        self.memo: dict = {}

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.cfg.budget:
            raise BudgetExceeded(f"search exceeded {self.cfg.budget} nodes")

    def components(self, lo, hi, free) -> list[tuple[list[int], list[int]]]:
        parent = {j: j for j in free}

        def find(j):
            while parent[j] != j:
                parent[j] = parent[parent[j]]
                j = parent[j]
            return j

        rows_seen = set()
        sys_rows, col_rows = self.sys.rows, self.sys.col_rows
        for j in free:
            for i in col_rows[j]:
                if i in rows_seen:
                    continue
                rows_seen.add(i)
                first = None
                for k, _ in sys_rows[i]:
                    if lo[k] != hi[k]:
                        if first is None:
                            first = find(k)
                        else:
                            rk = find(k)
                            if rk != first:
                                parent[rk] = first
        groups: dict[int, list[int]] = {}
        for j in free:
            groups.setdefault(find(j), []).append(j)
        out = []
        for vars_ in groups.values():
            rows = sorted({i for j in vars_ for i in col_rows[j]})
            out.append((vars_, rows))
        return out

    def choose(self, lo, hi, vars_, rows) -> int:
        order = self.cfg.order
        if order == INPUT_ORDER:
            return min(vars_)
        if order == TIGHTEST:
            return min(vars_, key=lambda j: (hi[j] - lo[j], j))
        col_rows = self.sys.col_rows
        return min(vars_, key=lambda j: (-len(col_rows[j]), hi[j] - lo[j], j))

    def residual_key(self, lo, hi, vars_, rows):
        b, sys_rows = self.sys.b, self.sys.rows
        res = []
        for i in rows:
            r = b[i]
            for j, a in sys_rows[i]:
                if lo[j] == hi[j]:
                    r -= a * lo[j]
            res.append(r)
        return (tuple(vars_), tuple(rows), tuple(res))

    def count_free(self, lo, hi, free, depth) -> int:
        """Number of integer completions given fully propagated bounds."""
        if not free:
            return 1
        comps = self.components(lo, hi, free)
        total = 1
        for vars_, rows in comps:
            c = self.count_component(lo, hi, vars_, rows, depth)
            if c == 0:
                return 0
            total *= c
        return total

    def count_component(self, lo, hi, vars_, rows, depth) -> int:
        key = None
        if self.cfg.memo:
            key = self.residual_key(lo, hi, vars_, rows)
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        self._tick()
        if self.cfg.fathom and depth % self.cfg.lp_every == 0 and depth > 0:
            if not self.sys.lp_feasible(lo, hi, vars_, rows):
                if key is not None:
                    self.memo[key] = 0
                return 0
        v = self.choose(lo, hi, vars_, rows)
        total = 0
        col_rows = self.sys.col_rows
        for val in range(lo[v], hi[v] + 1):
            lo2 = lo[:]
            hi2 = hi[:]
            lo2[v] = hi2[v] = val
            if not self.sys.propagate(lo2, hi2, col_rows[v]):
                continue
            free = [j for j in vars_ if lo2[j] != hi2[j]]
            total += self.count_free(lo2, hi2, free, depth + 1)
        if key is not None:
            if len(self.memo) > 2_000_000:
                self.memo.clear()
            self.memo[key] = total
        return total


def _prepare(P: StandardPolytope):
    system = _System(P)
    bounds = system.root_bounds()
    if bounds is None:
        return system, None
    lo, hi = bounds
    if not system.propagate(lo, hi, range(len(system.rows))):
        return system, None
    return system, (lo, hi)


def count(P: StandardPolytope, cfg: EnumConfig = DEFAULT, jobs: int = 1) -> CountResult:
    """Exact number of integer points of a bounded standard-form polytope.

    Raises :class:`UnboundedError` if some coordinate is unbounded and
    :class:`BudgetExceeded` when the node budget runs out.  With ``jobs > 1``
    the values of the first branching variable are counted in worker
    processes; the sum is identical to the sequential result.
    """
    start = time.perf_counter()
    system, bounds = _prepare(P)
    if bounds is None:
        return CountResult(0, 0, int((time.perf_counter() - start) * 1000))
    lo, hi = bounds
    free = [j for j in range(P.n) if lo[j] != hi[j]]
    if jobs > 1 and free:
        total, nodes = _count_parallel(P, cfg, system, lo, hi, free, jobs)
    else:
        search = _Search(system, cfg)
        total = search.count_free(lo, hi, free, 0)
        nodes = search.nodes
    return CountResult(total, nodes, int((time.perf_counter() - start) * 1000))


def _subtree(args):
    P, cfg, lo, hi, v, val = args
    system = _System(P)
    lo, hi = lo[:], hi[:]
    lo[v] = hi[v] = val
    if not system.propagate(lo, hi, system.col_rows[v]):
        return 0, 0
    search = _Search(system, cfg)
    free = [j for j in range(P.n) if lo[j] != hi[j]]
    return search.count_free(lo, hi, free, 1), search.nodes


def _count_parallel(P, cfg, system, lo, hi, free, jobs):
    from concurrent.futures import ProcessPoolExecutor

    v = _Search(system, cfg).choose(lo, hi, free, [])
    tasks = [(P, cfg, lo, hi, v, val) for val in range(lo[v], hi[v] + 1)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_subtree, tasks))
    return sum(r[0] for r in results), 1 + sum(r[1] for r in results)


def enumerate_points(P: StandardPolytope, cfg: EnumConfig = EnumConfig(order=INPUT_ORDER)) -> Iterator[tuple[int, ...]]:
    """Yield every integer point of P exactly once.

    Points come out in lexicographic order of the variable order: the input
    order, or for ``"tightest"``/``"connected"`` a static order fixed at the root.
    """
    system, bounds = _prepare(P)
    if bounds is None:
        return
    lo, hi = bounds
    if cfg.order == INPUT_ORDER:
        order = list(range(P.n))
    elif cfg.order == TIGHTEST:
        order = sorted(range(P.n), key=lambda j: (hi[j] - lo[j], j))
    else:
        order = sorted(range(P.n), key=lambda j: (-len(system.col_rows[j]), hi[j] - lo[j], j))
    budget = [0]

    def rec(lo, hi, k):
        budget[0] += 1
        if budget[0] > cfg.budget:
            raise BudgetExceeded(f"enumeration exceeded {cfg.budget} nodes")
        while k < len(order) and lo[order[k]] == hi[order[k]]:
            k += 1
        if k == len(order):
            yield tuple(lo)
            return
        v = order[k]
        for val in range(lo[v], hi[v] + 1):
            lo2, hi2 = lo[:], hi[:]
            lo2[v] = hi2[v] = val
            if system.propagate(lo2, hi2, system.col_rows[v]):
                yield from rec(lo2, hi2, k + 1)

    yield from rec(lo, hi, 0)


# longer alias; a plain ``enumerate`` would shadow the builtin
enumerate_lattice_points = enumerate_points
