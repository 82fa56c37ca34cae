"""Exact integer utilities: primality, factorization, CRT, p-adic data.

Primality is a deterministic Miller-Rabin with a witness set valid below
2^64, so there are no probabilistic failures at the scales this package
works at.  Factorization is trial division up to 10^6 followed by Brent's
variant of Pollard rho.
"""

import math
from dataclasses import dataclass

# Witnesses proving primality for all n < 3.3 * 10^24 (covers 2^64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 10**6


def is_prime(n):
    """Deterministic Miller-Rabin (exact for n < 2^64)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n, seed=1):
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    c = seed
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


@dataclass(frozen=True)
class Factorization:
    """value = prod p^e over factors, primes strictly increasing."""

    value: int
    factors: tuple

    def recompose(self):
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


def factorize(n):
    """Factor a positive integer; factorize(1) has an empty factor list."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    value = n
    fac = {}
    for p in (2, 3, 5):
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
    d = 7
    increments = (4, 2, 4, 2, 4, 6, 2, 6)  # wheel mod 30
    i = 0
    while d * d <= n and d <= _TRIAL_LIMIT:
        while n % d == 0:
            fac[d] = fac.get(d, 0) + 1
            n //= d
        d += increments[i]
        i = (i + 1) % 8
    # Remaining cofactor: prime, or split recursively with rho.
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            fac[m] = fac.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return Factorization(value, tuple(sorted(fac.items())))


@dataclass(frozen=True)
class PAdicContext:
    """tau is the exact p-adic valuation of 3k; gamma = 2*tau + 1."""

    p: int
    k: int
    tau: int
    gamma: int


def padic_context(p, k):
    """The (tau, gamma) pair attached to prime p and exponent k >= 2."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    m = 3 * k
    tau = 0
    while m % p == 0:
        tau += 1
        m //= p
    return PAdicContext(p, k, tau, 2 * tau + 1)


def crt_combine(residues):
    """Combine congruences x = r_i (mod m_i) with pairwise coprime moduli.

    Returns (x, M) with 0 <= x < M = prod m_i.
    """
    if not residues:
        raise ValueError("need at least one congruence")
    x, m = residues[0]
    x %= m
    for r, n in residues[1:]:
        g = math.gcd(m, n)
        if g != 1:
            raise ValueError(f"moduli {m} and {n} are not coprime (gcd {g})")
        # x + m*t = r (mod n)
        t = ((r - x) * pow(m, -1, n)) % n
        x = x + m * t
        m = m * n
    return x % m, m
