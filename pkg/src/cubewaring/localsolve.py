"""Residue-class structure of sums of three cubes and local solution counts.

Objects:

  * M33(p^h) = { T(x) mod p^h : x in (Z/p^h)^3, gcd(x1, p) = 1 } -- the
    residues hit by a sum of three cubes with a unit first coordinate.
  * M_n(p^h)  = # { Y in [1, p^h]^{3s} : sum_i T(y_i)^k = n mod p^h },
    and the starred count M*_n(p^h) restricting the first triple to have
    p not dividing y_{1,1} and p not dividing T(y_1) (the Hensel-ready
    solutions).
  * N(q, P) = solutions of T(x_1)^k + .. + T(x_h)^k = T(y_1)^k + .. (mod q)
    over the box 0 <= x, y <= P.  Note the box includes 0 here, unlike the
    triple counts elsewhere in the package which use 1..floor(P).

All counts are exact integers; s-fold counts are assembled by cyclic
convolution of single-triple residue histograms in unbounded Python ints.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import arith, expsums, guards, kernels, series

M33_MAX_MODULUS = 100_000
LOCAL_MAX_MODULUS = 4096
LOCAL_MAX_S = 12
CONGRUENCE_MAX_BOX = 300


@dataclass(frozen=True)
class ResidueSet:
    modulus: int
    members: np.ndarray  # bool, length modulus

    def as_set(self):
        return set(np.nonzero(self.members)[0].tolist())


@dataclass(frozen=True)
class LocalCount:
    p: int
    h: int
    s: int
    n: int
    k: int
    count: int
    count_star: int


def _bool_sumset(a, b, q):
    """Indicator of {x + y mod q : a[x], b[y]} via FFT (exact: counts <= q^2)."""
    n = 1
    while n < 2 * q:
        n <<= 1
    fa = np.fft.rfft(a.astype(np.float64), n)
    fb = np.fft.rfft(b.astype(np.float64), n)
    conv = np.fft.irfft(fa * fb, n)[: 2 * q - 1]
    counts = np.zeros(q)
    np.add.at(counts, np.arange(2 * q - 1) % q, conv)
    return counts > 0.5


def _cube_indicators(q, p):
    """(unit-cube indicator, all-cube indicator) of {x^3 mod q}."""
    x = np.arange(q, dtype=np.int64)
    cubes = (x * x % q) * x % q
    all_ind = np.zeros(q, dtype=bool)
    all_ind[cubes] = True
    unit_ind = np.zeros(q, dtype=bool)
    unit_ind[cubes[x % p != 0]] = True
    return unit_ind, all_ind


def m33_set(p, h, guard_scale=1.0):
    """Exact membership array of M33(p^h)."""
    if not arith.is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    q = p**h
    guards.check("m33_set modulus", q, M33_MAX_MODULUS, guard_scale)
    unit_ind, all_ind = _cube_indicators(q, p)
    members = _bool_sumset(_bool_sumset(unit_ind, all_ind, q), all_ind, q)
    return ResidueSet(q, members)


def _cyclic_conv_int(u, v, q):
    """Cyclic convolution mod q of two length-q lists of Python ints (exact)."""
    out = [0] * q
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        for j, vj in enumerate(v):
            if vj:
                t = i + j
                if t >= q:
                    t -= q
                out[t] += ui * vj
    return out


def _triple_hists(p, h, k):
    """(all, star) histograms of T(y)^k mod p^h over single triples y."""
    q = p**h
    x = np.arange(q, dtype=np.int64)
    cubes = (x * x % q) * x % q
    c3 = np.bincount(cubes, minlength=q).astype(np.int64)
    c3u = np.bincount(cubes[x % p != 0], minlength=q).astype(np.int64)

    def cyc(u, v):
        f = np.convolve(u, v)
        out = np.zeros(q, dtype=np.int64)
        np.add.at(out, np.arange(f.size) % q, f)
        return out

    t_all = cyc(cyc(c3, c3), c3)
    t_star = cyc(cyc(c3u, c3), c3)
    t_star[x % p == 0] = 0  # require p not dividing T(y_1)
    pm = expsums._power_map(q, k)
    h_all = np.zeros(q, dtype=np.int64)
    h_star = np.zeros(q, dtype=np.int64)
    np.add.at(h_all, pm, t_all)
    np.add.at(h_star, pm, t_star)
    return h_all, h_star


def local_count(p, h, s, n, k, guard_scale=1.0):
    """Exact M_n(p^h) and M*_n(p^h) by s-fold residue convolution."""
    if not arith.is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    q = p**h
    guards.check("local_count modulus", q, LOCAL_MAX_MODULUS, guard_scale)
    guards.check("local_count variable count", s, LOCAL_MAX_S, guard_scale)
    h_all, h_star = _triple_hists(p, h, k)
    all_list = [int(v) for v in h_all]
    acc = [1] + [0] * (q - 1)  # convolution identity
    for _ in range(s - 1):
        acc = _cyclic_conv_int(acc, all_list, q)
    star = _cyclic_conv_int(acc, [int(v) for v in h_star], q)
    full = _cyclic_conv_int(acc, all_list, q)
    return LocalCount(p, h, s, n % q, k, full[n % q], star[n % q])


def orthogonality_check(p, h, s, n, k, guard_scale=1.0):
    """Compare sum_{l<=h} S_n(p^l) against M_n(p^h) p^{h(1-3s)}.

    Returns (lhs complex, rhs float, discrepancy float).  The two sides come
    from independent routes: exponential sums on the left, exact residue
    counting on the right.
    """
    lhs = 0j
    for l in range(h + 1):
        lhs += series.series_term(p**l, n, s, k, guard_scale=guard_scale).value
    count = local_count(p, h, s, n, k, guard_scale=guard_scale).count
    rhs_exact = Fraction(count, p ** (h * (3 * s - 1)))
    rhs = float(rhs_exact)
    return lhs, rhs, abs(lhs - rhs)


def residue_coverage(k, u, guard_scale=1.0):
    """Whether u-fold sums of k-th powers of M33(3^k) cover all of Z/3^k."""
    q = 3**k
    guards.check("residue_coverage modulus", q, M33_MAX_MODULUS, guard_scale)
    members = m33_set(3, k, guard_scale=guard_scale).members
    pm = expsums._power_map(q, k)
    powers = np.zeros(q, dtype=bool)
    powers[pm[np.nonzero(members)[0]]] = True
    covered = np.zeros(q, dtype=bool)
    covered[0] = True  # empty sum
    for _ in range(u):
        covered = _bool_sumset(covered, powers, q)
    return bool(covered.all())


def _box_pow_hist(q, pfloor, k):
    """Histogram of T(x)^k mod q over the box x in {0..pfloor}^3."""
    tvals = kernels.t_value_counts(pfloor, include_zero=True)
    folded = np.zeros(q, dtype=np.int64)
    np.add.at(folded, np.arange(tvals.size) % q, tvals)
    out = np.zeros(q, dtype=np.int64)
    np.add.at(out, expsums._power_map(q, k), folded)
    return out


def congruence_count(q, P, h, k, guard_scale=1.0):
    """Exact N(q, P): 2h-tuple solutions of the k-th-power congruence."""
    pfloor = int(math.floor(P))
    guards.check("congruence_count box", pfloor, CONGRUENCE_MAX_BOX, guard_scale)
    guards.check("congruence_count modulus", q, LOCAL_MAX_MODULUS, guard_scale)
    if q == 1:
        return (pfloor + 1) ** (6 * h)
    c = [int(v) for v in _box_pow_hist(q, pfloor, k)]
    acc = [1] + [0] * (q - 1)
    for _ in range(h):
        acc = _cyclic_conv_int(acc, c, q)
    return sum(v * v for v in acc)


def moment_identity(q, P, h, k, guard_scale=1.0):
    """Check sum_{a=1..q} |f(a/q)|^{2h} = q N(q, P) over the 0..floor(P) box.

    Left side by complex evaluation of the box exponential sum at the
    rationals a/q, right side by exact convolution counting.  Returns
    (lhs, rhs, relative discrepancy).
    """
    pfloor = int(math.floor(P))
    guards.check("moment_identity box", pfloor, CONGRUENCE_MAX_BOX, guard_scale)
    guards.check("moment_identity modulus", q, LOCAL_MAX_MODULUS, guard_scale)
    c = _box_pow_hist(max(q, 1), pfloor, k) if q > 1 else None
    if q == 1:
        lhs = float((pfloor + 1) ** (6 * h))
    else:
        w = expsums._unity(q)
        t = np.arange(q, dtype=np.int64)
        lhs = 0.0
        for a in range(1, q + 1):
            f = (c * w[(a % q) * t % q]).sum()
            lhs += abs(f) ** (2 * h)
    rhs = q * congruence_count(q, P, h, k, guard_scale=guard_scale)
    return lhs, rhs, abs(lhs - rhs) / rhs
