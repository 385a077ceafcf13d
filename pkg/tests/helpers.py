"""Independent oracles shared by the test modules.

These deliberately take different routes from the package implementation:
HNF-candidate enumeration instead of subgroup lifting, closed-form subgroup
counts instead of breadth-first enumeration, and the hand-expanded Jacobian
matrix for the Borel family.
"""

import itertools
from math import gcd

from divimat.endo import borel_power_sum
from divimat.intmat import IMat, right_divides
from divimat.poly import SPoly


def divisors(n):
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def random_unimodular(d, rng, steps=12):
    m = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for _ in range(steps):
        op = rng.randrange(3)
        i, j = rng.sample(range(d), 2)
        if op == 0:
            c = rng.randint(-3, 3)
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
        elif op == 1:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-x for x in m[i]]
    return IMat(m)


def hnf_divisor_enumeration(m):
    """All right divisor classes of m by exhaustive HNF candidate testing."""
    d = m.rows
    det = abs(m.det())
    assert det != 0
    found = []
    for pivots in itertools.product(divisors(det), repeat=d):
        prod = 1
        for p in pivots:
            prod *= p
        if det % prod != 0:
            continue
        above = [(i, j) for j in range(d) for i in range(j)]
        ranges = [range(pivots[j]) for (_, j) in above]
        for fill in itertools.product(*ranges):
            h = [[0] * d for _ in range(d)]
            for k in range(d):
                h[k][k] = pivots[k]
            for (pos, val) in zip(above, fill):
                h[pos[0]][pos[1]] = val
            cand = IMat(h)
            if right_divides(cand, m) is not None:
                found.append(cand)
    return sorted(found, key=lambda r: r.entries)


def subgroup_count_formula(divisors_list):
    """Closed-form subgroup counts for abelian groups of rank at most 3.

    Cyclic: number of divisors.  Rank 2 (Z_m x Z_n): sum of gcd(a, b) over
    divisor pairs.  Rank 3: the Hampejs-Toth triple-sum formula.
    """
    ds = [d for d in divisors_list if d > 1]
    if len(ds) == 0:
        return 1
    if len(ds) == 1:
        return len(divisors(ds[0]))
    if len(ds) == 2:
        m, n = ds
        return sum(gcd(a, b) for a in divisors(m) for b in divisors(n))
    if len(ds) == 3:
        m, n, r = ds

        def big_p(k):
            return sum(gcd(i, k) for i in range(1, k + 1))

        total = 0
        for a, b, c in itertools.product(divisors(m), divisors(n), divisors(r)):
            aa = gcd(a, n // b)
            bb = gcd(b, r // c)
            cc = gcd(a, r // c)
            abc = aa * bb * cc
            x = abc // gcd(a * r // c, abc)
            total += abc // x**2 * big_p(x)
        return total
    raise NotImplementedError("rank > 3")


def displayed_borel_jacobian(n):
    """The closed-form 3×3 Borel Jacobian with the quotient entries expanded.

    P(X, Z) = (nX^{n−1}(X−Z) − (Xⁿ−Zⁿ))/(X−Z)² expands to Σ i·X^{i−1}Z^{n−1−i}.
    """
    vars = ("X", "Y", "Z")
    X, Y, Z = (SPoly.var(vars, v) for v in vars)
    zero = SPoly.zero(vars)
    p_xz = SPoly(vars, {(i - 1, 0, n - 1 - i): i for i in range(1, n)})
    p_zx = SPoly(vars, {(n - 1 - i, 0, i - 1): i for i in range(1, n)})
    s = borel_power_sum(n)
    return (
        (n * X ** (n - 1), zero, zero),
        (Y * p_xz, s, Y * p_zx),
        (zero, zero, n * Z ** (n - 1)),
    )
