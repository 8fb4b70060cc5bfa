"""Numerical semigroups containing m, in Kunz coordinates.

A semigroup S containing m is determined by its Apéry set: for each residue
i = 1..m-1 the least element of S congruent to i mod m is ``k_i m + i``.  The
genus is ``sum k_i``, and the vectors k that arise are exactly the lattice
points of the Kunz polytope below.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional

from ..counter import DEFAULT, EnumConfig, count
from ..lifting import CUBE, compile_polynomial, weighted_sum
from ..polynomial import Polynomial
from ..polytope import HPolytope, standardize


def kunz_polytope(m: int, g: int) -> HPolytope:
    """``P_{m,g}`` in variables ``x_1..x_{m-1}`` (index 0 holds x_1)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if g < 0:
        raise ValueError("genus must be nonnegative")
    n = m - 1
    G, h = [], []
    for i in range(1, m):
        for j in range(i, m):
            row = [0] * n
            if i + j < m:
                row[i - 1] -= 1
                row[j - 1] -= 1
                row[i + j - 1] += 1
                G.append(row)
                h.append(0)
            elif i + j > m:
                row[i - 1] -= 1
                row[j - 1] -= 1
                row[i + j - m - 1] += 1
                G.append(row)
                h.append(1)
    for i in range(n):
        row = [0] * n
        row[i] = -1
        G.append(row)
        h.append(0)
    return HPolytope(G, h, [[1] * n], [g], n)


def semigroup_weight_poly(m: int, genus: Optional[int] = None) -> Polynomial:
    """``(m/2) sum k_i(k_i - 1) + sum i k_i - (1/2)(sum k)(1 + sum k)``.

    With ``genus`` given, ``sum k`` is replaced by that constant, which agrees
    with the full polynomial on ``P_{m,genus}`` and has far fewer terms.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    n = m - 1
    k = [Polynomial.var(i, n) for i in range(n)]
    total = sum(k, Polynomial(n)) if genus is None else Polynomial.const(genus, n)
    w = Polynomial(n)
    for i, ki in enumerate(k, start=1):
        w = w + Fraction(m, 2) * ki * (ki - 1) + i * ki
    return w - Fraction(1, 2) * total * (total + 1)


def semigroup_stats(m: int, g: int, basis: str = CUBE, cfg: EnumConfig = DEFAULT) -> dict:
    """Count and total weight of the semigroups containing m of genus g."""
    P, change = standardize(kunz_polytope(m, g))
    n = count(P, cfg).count
    if n == 0:
        return {"m": m, "g": g, "count": 0, "total_weight": Fraction(0)}
    W = compile_polynomial(change.transform_polynomial(semigroup_weight_poly(m, g)), basis)
    return {"m": m, "g": g, "count": n, "total_weight": weighted_sum(P, W, 1, cfg)}


def semigroup_series(m: int, g_max: int, g_min: int = 1, basis: str = CUBE, cfg: EnumConfig = DEFAULT) -> list[dict]:
    """Rows (m, g, count, total_weight, average, average/g^2) for g = g_min..g_max."""
    rows = []
    for g in range(g_min, g_max + 1):
        s = semigroup_stats(m, g, basis, cfg)
        avg = s["total_weight"] / s["count"] if s["count"] else None
        s["average"] = avg
        s["average_over_g2"] = avg / (g * g) if avg is not None and g else None
        rows.append(s)
    return rows


# -- brute force over the semigroup tree ------------------------------------


def _children(gaps: frozenset) -> list[frozenset]:
    """Remove one minimal generator larger than the Frobenius number."""
    frob = max(gaps, default=-1)
    mult = next(x for x in itertools.count(1) if x not in gaps)
    out = []
    for x in range(max(frob + 1, 1), frob + mult + 2):
        decomposable = any(y not in gaps and (x - y) not in gaps for y in range(1, x))
        if not decomposable:
            out.append(gaps | {x})
    return out


def semigroups_of_genus(g: int) -> list[frozenset]:
    """Gap sets of all numerical semigroups of genus g (tree search from N_0)."""
    level = [frozenset()]
    for _ in range(g):
        level = [c for s in level for c in _children(s)]
    return level


def semigroups_bruteforce(m: int, g: int) -> list[frozenset]:
    """Gap sets of the genus-g semigroups that contain m."""
    return [gaps for gaps in semigroups_of_genus(g) if m not in gaps]


def gap_weight(gaps) -> int:
    """``(sum of gaps) - (1 + 2 + ... + g)``."""
    g = len(gaps)
    return sum(gaps) - g * (g + 1) // 2


def kunz_coordinates(gaps, m: int) -> tuple[int, ...]:
    """``k_i`` with ``k_i m + i`` the least element of S congruent to i mod m."""
    out = []
    for i in range(1, m):
        x = i
        while x in gaps:
            x += m
        out.append((x - i) // m)
    return tuple(out)
