import functools
import random
import time

import pytest

from wlpoly.lifting import ParametricFamily
from wlpoly.polytope import HPolytope, StandardPolytope, coordinate_bounds


def random_polytope(rng: random.Random, n_max=4, hi_max=4) -> StandardPolytope:
    """Random bounded {Ax = b, x >= 0} through a random integer point.

    The first row of A is positive, which keeps P bounded; a second row with
    mixed signs is sometimes added.
    """
    while True:
        n = rng.randint(min(2, n_max), n_max)
        x0 = [rng.randint(0, 2) for _ in range(n)]
        A = [[rng.randint(1, 2) for _ in range(n)]]
        if n > 2 and rng.random() < 0.3:
            A.append([rng.randint(-2, 2) for _ in range(n)])
            if all(v == 0 for v in A[-1]):
                continue
        b = [sum(a * x for a, x in zip(row, x0)) for row in A]
        P = StandardPolytope(A, b, n)
        bounds = [coordinate_bounds(P, i) for i in range(n)]
        if any(bd is None or bd.hi is None or bd.hi > hi_max for bd in bounds):
            continue
        return P


def random_family(rng: random.Random, n: int, m_max=4, positive=True) -> ParametricFamily:
    """Random family with bounded fibers (first row of C positive).

    ``e`` is chosen so that the fiber over some small point is nonempty, which
    keeps most weights away from zero.
    """
    m = rng.randint(1, m_max)
    r = rng.randint(1, 2)
    C = [[rng.randint(1, 3) for _ in range(m)]]
    C += [[rng.randint(-2, 2) for _ in range(m)] for _ in range(r - 1)]
    lo = 0 if positive else -2
    D = [[rng.randint(lo, 2) for _ in range(n)] for _ in range(r)]
    x0 = [rng.randint(0, 2) for _ in range(n)]
    y0 = [rng.randint(0, 2) for _ in range(m)]
    e = [sum(c * y for c, y in zip(C[i], y0)) - sum(d * x for d, x in zip(D[i], x0)) for i in range(r)]
    return ParametricFamily(C, D, e)


def random_full_hpolytope(rng: random.Random, n_max=3) -> HPolytope:
    """Box [0, u] cut by one random halfspace a.x <= h with a > 0 (full-dimensional)."""
    n = rng.randint(1, n_max)
    u = [rng.randint(1, 2) for _ in range(n)]
    a = [rng.randint(1, 2) for _ in range(n)]
    h = rng.randint(1, sum(ai * ui for ai, ui in zip(a, u)))
    G, hv = [], []
    for i in range(n):
        G.append([int(j == i) for j in range(n)])
        hv.append(u[i])
        G.append([-int(j == i) for j in range(n)])
        hv.append(0)
    G.append(a)
    hv.append(h)
    return HPolytope(G, hv, n=n)


@pytest.fixture
def rng():
    return random.Random(12345)


# -- acceptance reporting --------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def criterion(number: int, title: str):
    """Record a PASS/FAIL line for an acceptance test, printed at the end of the run.

    The wrapped test returns a short detail string on success; any exception
    (including a failed assert) marks the criterion as failed and propagates.
    """
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
                ACCEPTANCE[number] = f"criterion {number:2d} FAIL  {title}: {msg[:160]}"
                print(ACCEPTANCE[number])
                raise
            secs = time.perf_counter() - start
            ACCEPTANCE[number] = f"criterion {number:2d} PASS  {title} [{secs:.1f}s] {detail or ''}".rstrip()
            print(ACCEPTANCE[number])
        return wrapper
    return deco


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
