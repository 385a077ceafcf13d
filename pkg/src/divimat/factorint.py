"""Integer factorization: trial division, Miller-Rabin, Pollard rho (Brent).

The primitivity scan only ever factors numbers that have already been
stripped of all prime factors shared with earlier sequence terms, so the
inputs here are modest; still, rho carries an iteration budget and callers
must cope with an incomplete factorization.
"""

from __future__ import annotations

import random
from math import gcd, isqrt

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]

# deterministic Miller-Rabin witness set for n < 3.3·10^24
_MR_WITNESSES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


def is_probable_prime(n: int, rounds: int = 24) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, random witnesses above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        witnesses = _MR_WITNESSES
    else:
        rng = random.Random(n)
        witnesses = [rng.randrange(2, n - 1) for _ in range(rounds)]
    for a in witnesses:
        x = pow(a % n, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random, budget: int) -> int | None:
    """One Brent-cycle attempt; returns a nontrivial factor or None on budget."""
    if n % 2 == 0:
        return 2
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g, r, q = 1, 1, 1
    x = ys = y
    used = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
        used += r
        if used > budget:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def factorize(n: int, trial_limit: int = 100_000, rho_budget: int = 2_000_000, seed: int = 1):
    """Factor n ≥ 1 into {prime: exponent}, plus an unfactored remainder.

    Returns (factors, remainder): remainder is 1 on success, otherwise a
    composite cofactor whose factorization exceeded the rho budget.
    """
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    factors: dict[int, int] = {}
    d = 2
    while d <= trial_limit and d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n == 1:
        return factors, 1
    rng = random.Random(seed)
    stack = [n]
    remainder = 1
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        f = None
        for _ in range(8):
            f = _pollard_brent(m, rng, rho_budget)
            if f is not None and 1 < f < m:
                break
            f = None
        if f is None:
            remainder *= m
            continue
        stack.append(f)
        stack.append(m // f)
    return factors, remainder


def smallest_prime_factor(n: int, **kwargs) -> int | None:
    """A prime factor of n > 1 if one can be found within budget, else None."""
    factors, _ = factorize(n, **kwargs)
    return min(factors) if factors else None
