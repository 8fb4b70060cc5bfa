import itertools
import math
import random
from fractions import Fraction

import pytest

from conftest import random_family, random_full_hpolytope, random_polytope
from wlpoly.calculus import (
    EmptyPolytope,
    MaximizeDidNotConverge,
    NonCountingWeight,
    bench_grid,
    dirichlet_simplex_integral,
    full_simplex,
    integrate,
    maximize,
    volume,
)
from wlpoly.counter import enumerate_points
from wlpoly.lifting import (
    BASES,
    ParametricFamily,
    WeightExpr,
    compile_polynomial,
    family_from_factors,
    simplex_factor,
    weight_eval,
)
from wlpoly.polynomial import Polynomial, parse_polynomial
from wlpoly.polytope import HPolytope, StandardPolytope, block_product, simplex

F = Fraction


def box(*u):
    n = len(u)
    G = [[int(j == i) for j in range(n)] for i in range(n)] + [[-int(j == i) for j in range(n)] for i in range(n)]
    return HPolytope(G, list(u) + [0] * n, n=n)


def test_dirichlet_examples():
    assert dirichlet_simplex_integral((1, 1), 2) == F(1, 24)
    assert dirichlet_simplex_integral((0, 0, 0), 3) == F(1, 6)
    assert dirichlet_simplex_integral((2,), 1) == F(1, 3)
    with pytest.raises(ValueError):
        dirichlet_simplex_integral((1,), 2)


def test_dirichlet_by_iterated_integration():
    # int_0^1 x^a (1-x)^(b+1)/(b+1) dx for x^a y^b over the triangle
    for a, b in itertools.product(range(4), repeat=2):
        beta = F(math.factorial(a) * math.factorial(b + 1), math.factorial(a + b + 2))
        assert dirichlet_simplex_integral((a, b)) == beta / (b + 1)


def test_integrate_examples():
    tri = HPolytope([[-1, 0], [0, -1], [1, 1]], [0, 0, 1], n=2)
    assert integrate(tri, "x1*x2") == F(1, 24)
    assert integrate(full_simplex(2), parse_polynomial("x1*x2", 3)) == F(1, 24)
    assert integrate(box(1, 1), 1) == 1
    assert integrate(simplex(2), "x1") == F(1, 2)


def test_integrate_translated_box():
    H = HPolytope([[1], [-1]], [3, -1], n=1)  # 1 <= x <= 3
    assert integrate(H, "x1^2") == F(26, 3)
    assert integrate(H, "x1 - 2") == 0


def test_volume_examples():
    assert volume(box(1, 1, 1)) == 1
    assert volume(simplex(3)) == F(1, 2)
    assert volume(simplex(3, 2)) == 2
    assert volume(box(2, 3)) == 6


def test_dirichlet_small():
    for n in range(1, 4):
        P = full_simplex(n)
        for k in range(0, 4):
            for alpha in itertools.product(range(k + 1), repeat=n):
                if sum(alpha) != k:
                    continue
                poly = Polynomial.monomial(list(alpha) + [0])
                assert integrate(P, poly) == dirichlet_simplex_integral(alpha)


def test_basis_independence():
    poly = parse_polynomial("3*x1^2*x2 - x2 + 1/2", 3)
    vals = {b: integrate(full_simplex(2), poly, basis=b) for b in BASES}
    assert len(set(vals.values())) == 1
    assert vals["cube"] == 3 * dirichlet_simplex_integral((2, 1)) - F(1, 6) + F(1, 4)


def test_linearity_random():
    rng = random.Random(8)
    for _ in range(6):
        H = random_full_hpolytope(rng, n_max=2)
        n = H.n
        f = Polynomial(n, [((rng.randint(0, 2),) + (0,) * (n - 1), rng.randint(-3, 3))])
        g = Polynomial(n, [(tuple(rng.randint(0, 1) for _ in range(n)), rng.randint(-3, 3))])
        a, b = F(rng.randint(-3, 3), 2), rng.randint(-3, 3)
        assert integrate(H, f * a + g * b) == a * integrate(H, f) + b * integrate(H, g)


def test_integrate_empty():
    with pytest.raises(EmptyPolytope):
        integrate(StandardPolytope([[1, 1]], [-1]), 1)


def test_bench_grid_small():
    cells = bench_grid([1, 2], [1, 2])
    assert all(c.ok for c in cells)
    assert len(cells) == 4
    cells = bench_grid([1, 2], [1], kind="linear-power", seed=3)
    assert all(c.ok for c in cells)


def x_plus_one(n, i):
    return family_from_factors([simplex_factor(2, i)], n)


def test_maximize_examples():
    cert = maximize(simplex(2, 2), x_plus_one(2, 0))
    assert cert.maximum == 3 and cert.is_monotone()
    lo, hi = cert.bounds[-1]
    assert lo == hi == 3
    cert = maximize(simplex(1), ParametricFamily.trivial(1))
    assert cert.maximum == 1 and cert.k == 1
    # with N points the constant weight needs the first k with N < 2**k
    cert = maximize(simplex(2, 2), ParametricFamily.trivial(2))
    assert cert.maximum == 1 and cert.k == 2 and cert.bounds == ((1, 3), (1, 1))
    grid = block_product(simplex(2), simplex(2))
    fam = family_from_factors([simplex_factor(2, 0), simplex_factor(2, 2)], 4)
    assert maximize(grid, fam).maximum == 4


def test_maximize_weight_expr():
    W = compile_polynomial(parse_polynomial("3*x1", 2))
    cert = maximize(simplex(2, 4), W)
    assert cert.maximum == 12 and cert.scale == 3
    with pytest.raises(NonCountingWeight):
        maximize(simplex(2, 4), compile_polynomial(parse_polynomial("x1 - x2", 2)))


def test_maximize_errors():
    with pytest.raises(EmptyPolytope):
        maximize(StandardPolytope([[1, 1]], [-1]), x_plus_one(2, 0))
    fam = family_from_factors([simplex_factor(4, 0)], 2)
    with pytest.raises(MaximizeDidNotConverge) as info:
        maximize(simplex(2, 6), fam, k_max=2)
    assert info.value.certificate.k == 2 and len(info.value.certificate.S) == 2


def test_maximize_random():
    rng = random.Random(21)
    for _ in range(12):
        P = random_polytope(rng, n_max=3, hi_max=3)
        fam = random_family(rng, P.n, m_max=2)
        pts = list(enumerate_points(P))
        if not pts:
            continue
        best = max(weight_eval(fam, x) for x in pts)
        cert = maximize(P, fam, k_max=200)
        assert cert.maximum == best
        assert cert.is_monotone()
