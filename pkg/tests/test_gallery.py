import itertools
import math
from fractions import Fraction

import pytest

from wlpoly.counter import count
from wlpoly.gallery.cores import (
    anderson_count,
    core_polytope,
    core_size_weight,
    core_statistics,
    cores_bruteforce,
    hook_lengths,
    is_core,
    johnson_average,
)
from wlpoly.gallery.semigroups import (
    gap_weight,
    kunz_coordinates,
    kunz_polytope,
    semigroup_series,
    semigroup_stats,
    semigroup_weight_poly,
    semigroups_bruteforce,
)
from wlpoly.gallery.tableaux import (
    compositions,
    gt_polytope,
    hive_polytope,
    kostka,
    kostka_bruteforce,
    kostka_max,
    lr_bruteforce,
    lr_coefficient,
    lr_identity_check,
    newell_littlewood,
    partition_from_differences,
    partition_simplex,
    partitions,
    rsk_check,
    skew_kostka_bruteforce,
)
from wlpoly.counter import enumerate_points
from wlpoly.polytope import standardize

F = Fraction


def lattice_count(H):
    return count(standardize(H)[0]).count


# -- cores ---------------------------------------------------------------------


@pytest.mark.parametrize("a,b,n", [(2, 3, 2), (3, 4, 5), (4, 5, 14), (3, 5, 7)])
def test_core_counts(a, b, n):
    assert lattice_count(core_polytope(a, b)) == n == anderson_count(a, b)


def test_core_polytope_rejects_non_coprime():
    with pytest.raises(ValueError):
        core_polytope(2, 4)


def test_core_size_weight_values():
    h2 = core_size_weight(2)
    assert h2((1, -1)) == 1
    assert h2((0, 0)) == 0
    # (a/2) sum c_i^2 + sum i c_i; (1, 0, -1) is the 3-core (1, 1)
    assert core_size_weight(3)((1, 0, -1)) == 1


@pytest.mark.parametrize("a,b,avg", [(2, 3, F(1, 2)), (3, 4, F(2)), (3, 5, F(3)), (4, 5, F(5))])
def test_core_statistics(a, b, avg):
    s = core_statistics(a, b)
    assert s["average"] == avg == johnson_average(a, b)
    assert s["count"] == anderson_count(a, b)


def test_cores_bruteforce_agree():
    for a, b in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (2, 7)]:
        cores = cores_bruteforce(a, b)
        s = core_statistics(a, b)
        assert len(cores) == s["count"]
        assert sum(sum(c) for c in cores) == s["total_size"]


def test_hooks_and_cores():
    assert sorted(hook_lengths((2, 1))) == [1, 1, 3]
    assert is_core((2, 1), 2) and not is_core((2, 1), 3)


# -- numerical semigroups --------------------------------------------------------


def test_kunz_examples():
    assert lattice_count(kunz_polytope(3, 3)) == 2
    for g in range(6):
        assert lattice_count(kunz_polytope(2, g)) == 1
    assert lattice_count(kunz_polytope(3, 0)) == 1


def test_semigroup_weight_examples():
    w = semigroup_weight_poly(3)
    assert w((2, 1)) == 1
    assert w((1, 2)) == 2
    assert w((0, 0)) == 0
    assert gap_weight({1, 2, 4}) == 1 and gap_weight({1, 2, 5}) == 2
    assert kunz_coordinates({1, 2, 5}, 3) == (1, 2)


def test_genus_substitution_agrees_on_polytope():
    for m, g in [(3, 4), (4, 5), (5, 3)]:
        full, sub = semigroup_weight_poly(m), semigroup_weight_poly(m, g)
        for gaps in semigroups_bruteforce(m, g):
            k = kunz_coordinates(gaps, m)
            assert full(k) == sub(k) == gap_weight(gaps)


def test_semigroups_bruteforce_examples():
    assert len(semigroups_bruteforce(3, 3)) == 2
    assert semigroups_bruteforce(5, 0) == [frozenset()]
    assert sorted(map(sorted, semigroups_bruteforce(4, 2))) == [[1, 2], [1, 3]]


def test_kunz_matches_bruteforce_small():
    for m in range(2, 6):
        for g in range(0, 8):
            brute = semigroups_bruteforce(m, g)
            s = semigroup_stats(m, g)
            assert s["count"] == len(brute)
            if brute:
                assert s["total_weight"] == sum(gap_weight(x) for x in brute)


def test_kunz_points_are_semigroups():
    H = kunz_polytope(4, 5)
    P, change = standardize(H)
    pts = {change.from_standard(y) for y in enumerate_points(P)}
    assert pts == {kunz_coordinates(gaps, 4) for gaps in semigroups_bruteforce(4, 5)}


def test_weight_bound_small():
    for g in range(1, 9):
        for m in range(2, 6):
            for gaps in semigroups_bruteforce(m, g):
                w = gap_weight(gaps)
                assert w <= g * (g - 1) // 2
                assert (w == g * (g - 1) // 2) == (2 not in gaps)


def test_semigroup_series_small():
    rows = semigroup_series(2, 6)
    for r in rows:
        g = r["g"]
        assert r["count"] == 1 and r["total_weight"] == F(g * (g - 1), 2)
    for m in (3, 4):
        first = semigroup_series(m, 1)[0]
        assert first["count"] == 1 and first["total_weight"] == 0


# -- tableaux --------------------------------------------------------------------


def test_partitions_and_compositions():
    assert sorted(partitions(4)) == [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]
    assert len(compositions(3, 2)) == 4


def test_kostka_examples():
    assert kostka((2, 1), (1, 1, 1)) == 2
    assert kostka((3, 1), (3, 1)) == 1
    assert kostka((2,), (1, 1)) == 1
    with pytest.raises(ValueError):
        gt_polytope((2, 1), (1, 1))


def test_kostka_vs_bruteforce_small():
    for n in range(1, 5):
        for lam in partitions(n):
            for alpha in compositions(n, n):
                assert kostka(lam, alpha) == kostka_bruteforce(lam, alpha)


def test_kostka_max_examples():
    assert kostka_max((2, 1), 3).maximum == 2
    assert kostka_max((3,), 2).maximum == 1
    assert kostka_max((1, 1), 2).maximum == 1
    # three rows never fit in two letters
    assert kostka_max((1, 1, 1), 2).maximum == 0


def test_partition_simplex_points():
    for n in range(1, 6):
        P, _ = partition_simplex(n, n)
        got = sorted(partition_from_differences(d) for d in enumerate_points(P))
        assert got == sorted(partitions(n))


def test_rsk_examples():
    for mu, nu, v in [((1, 1), (1, 1), 2), ((2,), (1, 1), 1), ((3,), (3,), 1)]:
        r = rsk_check(mu, nu)
        assert r["lhs"] == r["rhs"] == r["lifted"] == v


def test_rsk_small():
    for n in range(1, 4):
        for mu, nu in itertools.product(partitions(n), repeat=2):
            assert rsk_check(mu, nu)["ok"]


def test_lr_examples():
    assert lr_coefficient((2, 1), (2,), (1,)) == 1
    assert lr_coefficient((1, 1), (1,), (1,)) == 1
    assert lr_coefficient((3, 2, 1), (2, 1), (2, 1)) == 2
    with pytest.raises(ValueError):
        hive_polytope((2,), (2,), (1,))


def test_lr_vs_bruteforce_small():
    for n in range(1, 5):
        for lam in partitions(n):
            for k in range(n + 1):
                for mu in partitions(k):
                    for nu in partitions(n - k):
                        assert lr_coefficient(lam, mu, nu) == lr_bruteforce(lam, mu, nu)


def test_lr_identity_examples():
    r = lr_identity_check((2, 1), (1,), (1, 1))
    assert r["lhs"] == r["rhs"] == r["lifted"] == 2
    r = lr_identity_check((2, 1), (), (1, 1, 1))
    assert r["ok"] and r["lhs"] == kostka((2, 1), (1, 1, 1))
    assert lr_identity_check((2, 2), (1,), (1, 1, 1))["ok"]
    with pytest.raises(ValueError):
        lr_identity_check((2,), (1, 1), (1,))


def test_skew_kostka():
    assert skew_kostka_bruteforce((2, 1), (1,), (1, 1)) == 2
    assert skew_kostka_bruteforce((2, 2), (), (2, 2)) == 1


def test_newell_littlewood_examples():
    assert newell_littlewood((1,), (1,), ()) == 1
    assert newell_littlewood((1,), (1,), (1,)) == 0
    assert newell_littlewood((2,), (1,), ()) == 0
    assert newell_littlewood((1,), (1,), (2,)) == 1
