"""The arithmetic series attached to the representation problem.

For modulus q and s variables,

    S_n(q)   = sum_{(a,q)=1} (q^{-3} S(q,a))^s e_q(-n a),
    S*_s(q)  = sum_{(a,q)=1} |q^{-3} S(q,a)|^s,

and the singular series is the (conditionally truncated) sum

    SS(n) = sum_q S_n(q) = prod_p sigma(p),    sigma(p) = sum_l S_n(p^l).

Both the q-sum and the Euler product are computed independently; their
difference is itself a convergence diagnostic.  Truncation tails are always
reported, never silently dropped.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import expsums

DEFAULT_Q = 50
DEFAULT_LEVEL = 2
LEVEL_MODULUS_CAP = 4096  # largest prime power fed to the exponential sums


def primes_up_to(n):
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].tolist()


@dataclass(frozen=True)
class SeriesTerm:
    q: int
    n: int
    s: int
    k: int
    value: complex  # S_n(q); real up to rounding by conjugate pairing
    abs_value: float  # S*_s(q)


@lru_cache(maxsize=16384)
def _unit_powers(q, s, k, guard_scale=1.0):
    """(units a, (q^{-3} S(q,a))^s for those a) with a read-only value array."""
    vals = expsums.triple_sum_units(q, k, guard_scale=guard_scale)
    a = np.array(expsums.units(q), dtype=np.int64)
    z = (vals[a % q] / q**3) ** s
    z.setflags(write=False)
    a.setflags(write=False)
    return a, z


def series_term(q, n, s, k, guard_scale=1.0):
    n = int(n)
    a, z = _unit_powers(q, s, k, guard_scale)
    phases = expsums._unity(q)[(-n * a) % q]
    value = complex((z * phases).sum())
    return SeriesTerm(q, n % q, s, k, value, float(np.abs(z).sum()))


def sstar(q, s, k, guard_scale=1.0):
    """S*_s(q) alone (cheap; used by tail and decay diagnostics)."""
    _, z = _unit_powers(q, s, k, guard_scale)
    return float(np.abs(z).sum())


@dataclass(frozen=True)
class SigmaP:
    p: int
    n: int
    s: int
    k: int
    level: int
    value: float  # sum_{l<=level} S_n(p^l)
    tail_estimate: float  # heuristic p^{(level+1)(1-s/k)}
    terms: tuple  # S_n(p^l) for l = 0..level


def sigma_p(p, n, s, k, L=DEFAULT_LEVEL, guard_scale=1.0):
    """Partial local density sum_{l<=L} S_n(p^l) with a reported tail estimate.

    The tail heuristic comes from the prime-power decay |S(p^l, a)| being
    O(p^{3l - l/k}) for l >= 2, which makes |S_n(p^l)| decay like
    p^{l(1 - s/k)}; the first omitted level sets the scale.
    """
    from . import arith

    if not arith.is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    terms = []
    for l in range(L + 1):
        terms.append(series_term(p**l, n, s, k, guard_scale).value.real)
    tail = float(p) ** ((L + 1) * (1 - s / k))
    return SigmaP(p, n % p ** max(L, 1), s, k, L, float(sum(terms)), tail, tuple(terms))


@dataclass(frozen=True)
class SingularSeriesResult:
    n: int
    s: int
    k: int
    truncation_Q: int
    partial_sum: float
    euler_product: float
    tail_bound: float
    positive: bool
    imag_max: float  # largest |Im S_n(q)| seen (real-valuedness diagnostic)


def singular_series(n, s, k, Q=DEFAULT_Q, level_cap=LEVEL_MODULUS_CAP, guard_scale=1.0):
    """Truncated singular series, by q-sum and by Euler product.

    partial_sum = sum_{q<=Q} S_n(q); euler_product runs over primes p <= Q
    with each local factor summed to the deepest level l with p^l within
    level_cap (default: the exponential-sum cost guard).  tail_bound is the
    heuristic Q^{-1/k} scale of the omitted moduli; the partial/product gap
    is itself a convergence diagnostic and stays below tail_bound.
    """
    partial = 0.0
    imag_max = 0.0
    for q in range(1, Q + 1):
        t = series_term(q, n, s, k, guard_scale)
        partial += t.value.real
        imag_max = max(imag_max, abs(t.value.imag))
    product = 1.0
    for p in primes_up_to(Q):
        lmax = 1
        while p ** (lmax + 1) <= level_cap * guard_scale:
            lmax += 1
        product *= sigma_p(p, n, s, k, lmax, guard_scale).value
    tail = float(Q) ** (-1.0 / k)
    return SingularSeriesResult(
        n, s, k, Q, partial, product, tail, partial > 0, imag_max
    )


@lru_cache(maxsize=64)
def _partial_tables(s, k, Q, guard_scale=1.0):
    """Per-q tables U_q with U_q[n mod q] = Re S_n(q), for q = 1..Q."""
    tables = []
    for q in range(1, Q + 1):
        a, z = _unit_powers(q, s, k, guard_scale)
        g = np.zeros(q, dtype=complex)
        g[a % q] = z
        # fft gives sum_a g[a] e^{-2 pi i a j / q} = S_j(q)
        u = np.fft.fft(g).real
        u.setflags(write=False)
        tables.append(u)
    return tuple(tables)


def singular_series_values(n_values, s, k, Q=DEFAULT_Q, guard_scale=1.0):
    """Vectorized sum_{q<=Q} S_n(q) for an array of n (float64 array out)."""
    n = np.asarray(n_values, dtype=np.int64)
    out = np.zeros(n.shape, dtype=np.float64)
    for q, table in enumerate(_partial_tables(s, k, Q, guard_scale), start=1):
        out += table[n % q]
    return out


def sstar_partial_sums(Qs, s, k, guard_scale=1.0):
    """sum_{q<=Q} S*_s(q) for each Q in Qs (assumed increasing)."""
    out = []
    acc = 0.0
    q = 1
    for Q in Qs:
        while q <= Q:
            acc += sstar(q, s, k, guard_scale)
            q += 1
        out.append(acc)
    return out
