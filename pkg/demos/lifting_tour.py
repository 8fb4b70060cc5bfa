"""A short walk through weight lifting on the segment x1 + x2 = t.

Run with ``python3 demos/lifting_tour.py``.
"""

from fractions import Fraction

from wlpoly import (
    compile_polynomial,
    count,
    ehrhart_qp,
    integrate,
    lift,
    parse_polynomial,
    simplex,
    weighted_ehrhart_qp,
    weighted_sum,
    weighted_sum_bruteforce,
)
from wlpoly.lifting import RISING


def main():
    seg = simplex(2)  # {x1 + x2 = 1, x >= 0}
    poly = parse_polynomial("x1^2", 2)
    W = compile_polynomial(poly)
    fam = W.terms[0].family
    print(f"x1^2 compiles to {len(W.terms)} family with m = {fam.m} extra variables")

    L = lift(seg, fam)
    print("lifted polytope rows:")
    for row, b in zip(L.polytope.A, L.polytope.b):
        print("   ", row, "=", b)
    print("lattice points of the lift:", count(L.polytope).count, "(x1^2 summed over the segment is 1)")

    for t in range(1, 6):
        fast = weighted_sum(seg, W, t)
        slow = weighted_sum_bruteforce(seg, W, t)
        print(f"t={t}: lifted count {fast}, direct sum {slow}")

    qp, rep = weighted_ehrhart_qp(seg, W)
    print("weighted Ehrhart polynomial:", qp.to_string())
    print("  counting calls:", rep.counting_calls, "period source:", rep.period_source)
    print("plain Ehrhart polynomial of the triangle:", ehrhart_qp(simplex(3))[0].to_string())

    for basis in ("cube", "rising", "falling"):
        print(f"integral of x1^2 over the segment via {basis}:", integrate(seg, poly, basis=basis))
    assert integrate(seg, poly) == Fraction(1, 3)
    W_rising = compile_polynomial(poly, RISING)
    print("rising basis terms:", [(str(t.coeff), t.family.m) for t in W_rising.terms])


if __name__ == "__main__":
    main()
