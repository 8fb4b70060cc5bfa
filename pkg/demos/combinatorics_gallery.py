"""Core partitions, Kostka numbers and the RSK identity, by lattice-point counting."""

import math

from wlpoly.gallery.cores import anderson_count, core_statistics, johnson_average
from wlpoly.gallery.tableaux import kostka, kostka_max, lr_coefficient, partitions, rsk_check


def cores_table(limit=9):
    print(" a  b  cores  avg size  (closed forms)")
    for a in range(2, limit):
        for b in range(a + 1, limit + 1):
            if math.gcd(a, b) != 1:
                continue
            s = core_statistics(a, b)
            print(f"{a:2d} {b:2d} {s['count']:6d} {str(s['average']):>9}  "
                  f"({anderson_count(a, b)}, {johnson_average(a, b)})")


def kostka_demo():
    lam = (3, 2, 1)
    print("K_{(3,2,1), alpha} for a few contents alpha:")
    for alpha in [(1,) * 6, (2, 2, 2), (3, 2, 1), (2, 1, 1, 1, 1)]:
        print("   ", alpha, kostka(lam, alpha))
    cert = kostka_max((2, 2, 1), 3)
    print(f"max over alpha in 3 parts of K_(2,2,1),alpha = {cert.maximum} (k = {cert.k}, bounds {cert.bounds})")


def rsk_demo(n=4):
    print(f"RSK identity for n = {n}:")
    for mu in partitions(n):
        for nu in partitions(n):
            r = rsk_check(mu, nu)
            print(f"    {mu} {nu}: {r['lhs']} {r['rhs']} {r['lifted']}")


if __name__ == "__main__":
    cores_table()
    kostka_demo()
    rsk_demo()
    print("c^(3,2,1)_(2,1),(2,1) =", lr_coefficient((3, 2, 1), (2, 1), (2, 1)))
