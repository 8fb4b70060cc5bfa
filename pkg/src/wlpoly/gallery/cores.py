"""Simultaneous (a, b)-core partitions as lattice points of a rational simplex.

A vector ``c = (c_0, ..., c_{a-1})`` with ``sum c = 0`` encodes an a-core by its
abacus charges.  The a-core is also a b-core exactly when

    c_{(i+b) mod a} - c_i <= floor((b+i)/a)    for i = 0..a-1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

from ..counter import DEFAULT, EnumConfig, count
from ..lifting import CUBE, compile_polynomial, weighted_sum
from ..polynomial import Polynomial
from ..polytope import HPolytope, standardize


def _check_pair(a: int, b: int):
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if math.gcd(a, b) != 1:
        raise ValueError(f"a={a} and b={b} are not coprime")


def core_polytope(a: int, b: int) -> HPolytope:
    """The a-variable H-polytope whose lattice points are the (a, b)-cores."""
    _check_pair(a, b)
    G, h = [], []
    for i in range(a):
        row = [0] * a
        row[(i + b) % a] += 1
        row[i] -= 1
        G.append(row)
        h.append((b + i) // a)
    return HPolytope(G, h, [[1] * a], [0], a)


def core_size_weight(a: int) -> Polynomial:
    """Size of the a-core with charge vector c: ``(a/2) sum c_i^2 + sum i c_i``."""
    size = Polynomial(a)
    for i in range(a):
        ci = Polynomial.var(i, a)
        size = size + Fraction(a, 2) * ci * ci + i * ci
    return size


def core_statistics(a: int, b: int, basis: str = CUBE, cfg: EnumConfig = DEFAULT) -> dict:
    """Number of (a, b)-cores and their total and average size, by lattice counting."""
    P, change = standardize(core_polytope(a, b))
    n = count(P, cfg).count
    W = compile_polynomial(change.transform_polynomial(core_size_weight(a)), basis)
    total = weighted_sum(P, W, 1, cfg)
    return {"a": a, "b": b, "count": n, "total_size": total, "average": total / n}


def anderson_count(a: int, b: int) -> int:
    return math.comb(a + b, a) // (a + b)


def johnson_average(a: int, b: int) -> Fraction:
    return Fraction((a + b + 1) * (a - 1) * (b - 1), 24)


# -- brute force on partitions ----------------------------------------------


def partitions_up_to(n_max: int) -> Iterator[tuple[int, ...]]:
    """All partitions of size <= n_max (empty partition included)."""
    def rec(remaining, largest, prefix):
        yield tuple(prefix)
        for part in range(min(remaining, largest), 0, -1):
            prefix.append(part)
            yield from rec(remaining - part, part, prefix)
            prefix.pop()
    yield from rec(n_max, n_max, [])


def hook_lengths(lam) -> list[int]:
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    return [lam[i] - j - 1 + conj[j] - i - 1 + 1 for i in range(len(lam)) for j in range(lam[i])]


def is_core(lam, a: int) -> bool:
    return all(h % a for h in hook_lengths(lam))


def cores_bruteforce(a: int, b: int) -> list[tuple[int, ...]]:
    """All (a, b)-cores, searching sizes up to the largest possible, (a^2-1)(b^2-1)/24."""
    _check_pair(a, b)
    bound = (a * a - 1) * (b * b - 1) // 24
    return [lam for lam in partitions_up_to(bound) if is_core(lam, a) and is_core(lam, b)]
