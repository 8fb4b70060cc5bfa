import math
import random

import pytest

from conftest import random_family, random_polytope
from wlpoly.counter import BudgetExceeded, EnumConfig, count, enumerate_points
from wlpoly.lifting import family_for_monomial, lift_dilated
from wlpoly.polytope import StandardPolytope, UnboundedError, block_product, dilate, simplex


def test_simplex_counts():
    assert count(simplex(3, 4)).count == 15
    for m in range(1, 5):
        for t in range(6):
            assert count(simplex(m, t)).count == math.comb(t + m - 1, m - 1)


def test_cube_encoding_count():
    # the paired cube encoding y_i + z_i = t for two coordinates has (t+1)^2 points
    P = StandardPolytope([[1, 0, 1, 0], [0, 1, 0, 1]], [3, 3])
    assert count(P).count == 16


def test_infeasible_counts_zero():
    assert count(StandardPolytope([[1, 1]], [-1])).count == 0
    assert count(StandardPolytope([[2]], [1])).count == 0


def test_unbounded_raises():
    with pytest.raises(UnboundedError):
        count(StandardPolytope([[1, -1]], [0]))
    with pytest.raises(UnboundedError):
        list(enumerate_points(StandardPolytope([[1, -1]], [0])))


def test_enumerate_examples():
    assert list(enumerate_points(simplex(2))) == [(0, 1), (1, 0)]
    assert list(enumerate_points(simplex(2, 2))) == [(0, 2), (1, 1), (2, 0)]
    assert list(enumerate_points(StandardPolytope([[1, 1]], [-1]))) == []


def test_budget():
    with pytest.raises(BudgetExceeded):
        count(simplex(6, 12), EnumConfig(budget=5, memo=False))
    with pytest.raises(ValueError):
        EnumConfig(budget=0)


@pytest.mark.parametrize("seed", range(4))
def test_count_matches_enumeration_and_is_order_free(seed):
    rng = random.Random(seed)
    for _ in range(10):
        P = random_polytope(rng)
        t = rng.randint(1, 4)
        Pt = dilate(P, t)
        pts = list(enumerate_points(Pt))
        assert len(set(pts)) == len(pts)
        assert pts == sorted(pts)
        assert all(Pt.contains(x) for x in pts)
        expected = len(pts)
        for order in ("connected", "tightest", "input"):
            for fathom in (False, True):
                for memo in (False, True):
                    cfg = EnumConfig(order=order, fathom=fathom, memo=memo)
                    assert count(Pt, cfg).count == expected
        perm = list(range(P.n))
        rng.shuffle(perm)
        assert count(Pt.permute(perm)).count == expected
        rows = list(zip(Pt.A, Pt.b))
        rng.shuffle(rows)
        assert count(StandardPolytope([r for r, _ in rows], [b for _, b in rows], Pt.n)).count == expected


def test_lifted_counts_agree_across_configs():
    rng = random.Random(11)
    for _ in range(8):
        P = random_polytope(rng, 3)
        F = random_family(rng, P.n, 3)
        L = lift_dilated(P, F, 2).polytope
        ref = count(L, EnumConfig(memo=False, order="input")).count
        assert count(L).count == ref
        assert count(L, EnumConfig(fathom=True)).count == ref


def test_block_product_multiplies():
    rng = random.Random(5)
    for _ in range(10):
        P, Q = random_polytope(rng, 3), random_polytope(rng, 3)
        assert count(block_product(P, Q)).count == count(P).count * count(Q).count


def test_parallel_matches_sequential():
    P = lift_dilated(simplex(3), family_for_monomial((2, 1, 0)), 4).polytope
    assert count(P, jobs=2).count == count(P).count


def test_memo_reduces_work():
    P = simplex(5, 12)
    a = count(P, EnumConfig(memo=True))
    b = count(P, EnumConfig(memo=False))
    assert a.count == b.count == math.comb(16, 4)
    assert a.nodes_explored < b.nodes_explored
