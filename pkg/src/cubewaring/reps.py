"""Exact representation counting by convolution of triple-count weights.

The weight r_3(x) counts ordered triples x = (x1, x2, x3) in [1, P]^3 with
x1^3 + x2^3 + x3^3 = x; s_3(x) is the same count with x1, x2 restricted to
P^eta-smooth numbers.  The representation counts

    R(n)      = # s-tuples of triples with sum of k-th powers of T-values n
              = s-fold convolution of the pushforward weight m = x^k -> r_3(x),
    r(n)      = same with indicator weights (values in the three-cube set),
    R_eta(n)  = same with s_3 weights,

are computed exactly in integers.  A float64 spectrum variant exists for
ranges where the exact counts exceed 64-bit (used by the large sanity
experiments; its FFT rounding error is many orders below the bands those
experiments check).
"""

import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.fft

from . import guards, kernels

WEIGHT_MAX_PFLOOR = 2000
SIEVE_MAX_LIMIT = 100_000_000
EXACT_CONV_MASS_BITS = 49  # FFT-exact threshold: (sum w)^s below 2^49
SMOOTH_L2_EXPONENT = 0.08290523  # exponent nu in the smooth L^2 moment bound

@dataclass(frozen=True)
class SmoothSieve:
    limit: int
    bound: float
    least_prime_factor: np.ndarray
    membership: np.ndarray  # membership[m] for 0 <= m <= limit; [0] is False

    def members(self):
        return np.nonzero(self.membership)[0]


def smooth_sieve(X, R, guard_scale=1.0):
    """The R-smooth numbers up to X by least-prime-factor sieve."""
    X = int(X)
    guards.check("smooth_sieve limit", X, SIEVE_MAX_LIMIT, guard_scale)
    if X < 1:
        raise ValueError("X must be >= 1")
    lpf = kernels.lpf_sieve(X)
    membership = np.ones(X + 1, dtype=bool)
    membership[0] = False
    idx = np.arange(X + 1)
    primes = idx[(lpf == idx) & (idx >= 2)]
    for p in primes[primes > R]:
        membership[p::p] = False
    return SmoothSieve(X, float(R), lpf, membership)


@dataclass(frozen=True)
class WeightTable:
    P: float
    eta: float | None
    weights: np.ndarray  # int64, index x = T value, length 3*floor(P)^3 + 1

    @property
    def pfloor(self):
        return int(math.floor(self.P))

    def total_mass(self):
        return int(self.weights.sum())


def weight_table(P, eta=None, guard_scale=1.0):
    """r_3 (eta None) or s_3 (coords 1,2 restricted to P^eta-smooth) table."""
    pfloor = int(math.floor(P))
    if pfloor < 1:
        raise ValueError("P must be >= 1")
    guards.check("weight_table box", pfloor, WEIGHT_MAX_PFLOOR, guard_scale)
    mask = None
    if eta is not None:
        R = float(P) ** eta
        mask = smooth_sieve(pfloor, R, guard_scale).membership
    return WeightTable(float(P), eta, kernels.t_value_counts(pfloor, mask12=mask))


def _pushforward(weights, k, n_max):
    """Base array c with c[x^k] += weights[x], truncated to indices <= n_max."""
    x = np.nonzero(weights)[0]
    m = [int(v) ** k for v in x]  # python ints: x^k can pass 2^63 pre-truncation
    keep = [i for i, v in enumerate(m) if v <= n_max]
    c = np.zeros(n_max + 1, dtype=np.int64)
    for i in keep:
        c[m[i]] += weights[x[i]]
    return c


def _conv_trunc_exact(a, b, n_max, mass_bound):
    """Exact truncated integer convolution; FFT route is provably roundable
    because every coefficient is bounded by mass_bound < 2^49."""
    if a.size * b.size <= 5 * 10**7:
        return np.convolve(a, b)[: n_max + 1].astype(np.int64)
    n = scipy.fft.next_fast_len(a.size + b.size - 1)
    fa = scipy.fft.rfft(a.astype(np.float64), n)
    fb = scipy.fft.rfft(b.astype(np.float64), n)
    conv = scipy.fft.irfft(fa * fb, n)[: n_max + 1]
    out = np.rint(conv).astype(np.int64)
    if np.abs(conv - out).max() > 1e-3:
        raise AssertionError("FFT convolution rounding failed its error budget")
    return out


@dataclass(frozen=True)
class RepresentationTable:
    N: int
    s: int
    k: int
    mode: str  # weighted | unweighted | smooth
    P: float
    eta: float | None
    counts: np.ndarray  # int64, counts[n] for 0 <= n <= N

    def to_csv(self, path, nonzero_only=False):
        with open(path, "w") as fh:
            fh.write("n,count\n")
            for n, c in enumerate(self.counts):
                if nonzero_only and c == 0:
                    continue
                fh.write(f"{n},{int(c)}\n")

    def to_json(self, path=None):
        payload = {
            "N": self.N,
            "s": self.s,
            "k": self.k,
            "mode": self.mode,
            "P": self.P,
            "eta": self.eta,
            "counts": [int(c) for c in self.counts],
        }
        if path is None:
            return payload
        with open(path, "w") as fh:
            json.dump(payload, fh)


def _mode_weights(P, mode, eta, guard_scale):
    if mode == "weighted":
        return weight_table(P, None, guard_scale).weights
    if mode == "unweighted":
        return (weight_table(P, None, guard_scale).weights > 0).astype(np.int64)
    if mode == "smooth":
        if eta is None:
            raise ValueError("mode='smooth' requires eta")
        return weight_table(P, eta, guard_scale).weights
    raise ValueError(f"unknown mode {mode!r}")


def representation_table(P, s, k, mode="weighted", eta=None, n_max=None, guard_scale=1.0):
    """Exact counts R(n) / r(n) / R_eta(n) for 0 <= n <= n_max.

    n_max defaults to the full range s * (3 floor(P)^3)^k.  Counts are exact
    integers; ranges whose counts cannot be certified exact in 64-bit raise
    a guard (use representation_spectrum for those experiments).
    """
    w = _mode_weights(P, mode, eta, guard_scale)
    pfloor = int(math.floor(P))
    full_n = s * (3 * pfloor**3) ** k
    if n_max is None:
        n_max = full_n
    guards.check("representation_table length", n_max + 1, 2 * 10**8, guard_scale)
    mass = int(w.sum())
    if mass**s > 1 << EXACT_CONV_MASS_BITS:
        raise guards.GuardViolation(
            "representation_table exact mass", mass**s, 1 << EXACT_CONV_MASS_BITS
        )
    c = _pushforward(w, k, n_max)
    acc = None
    base = c
    e = s
    while e:  # binary powering, truncating to n_max + 1 each multiply
        if e & 1:
            acc = base.copy() if acc is None else _conv_trunc_exact(acc, base, n_max, mass**s)
        e >>= 1
        if e:
            base = _conv_trunc_exact(base, base, n_max, mass**s)
    return RepresentationTable(n_max, s, k, mode, float(P), eta, acc)


def representation_spectrum(P, s, k, n_max, mode="weighted", eta=None, guard_scale=1.0):
    """Float64 representation counts up to n_max by truncated FFT convolution.

    Relative accuracy is set by FFT roundoff (~1e-12); intended for the
    order-of-magnitude ratio experiments where exact counts overflow."""
    w = _mode_weights(P, mode, eta, guard_scale)
    guards.check("representation_spectrum length", n_max + 1, 10**8, guard_scale)
    c = _pushforward(w, k, n_max).astype(np.float64)
    n = scipy.fft.next_fast_len(2 * n_max + 1)

    def conv(a, b):
        fa = scipy.fft.rfft(a, n)
        fb = scipy.fft.rfft(b, n)
        return scipy.fft.irfft(fa * fb, n)[: n_max + 1]

    acc = None
    base = c
    e = s
    while e:
        if e & 1:
            acc = base.copy() if acc is None else conv(acc, base)
        e >>= 1
        if e:
            base = conv(base, base)
    return np.maximum(acc, 0.0)


@dataclass(frozen=True)
class L2Moment:
    P: float
    eta: float | None
    sum_of_squares: int
    fitted_exponent: float
    points: tuple  # (support bound X, exact sum) pairs used in the fit


def l2_moment(P, eta=None, doublings=3, guard_scale=1.0):
    """Exact sum of squared weights, with a log-log slope across P/2^j.

    The slope is the least-squares fit of log(sum w^2) against log X with
    X = 3 floor(P_j)^3 the support bound, over P_j = P / 2^doublings .. P.
    """
    points = []
    for j in range(doublings, -1, -1):
        Pj = P / 2**j
        if math.floor(Pj) < 1:
            continue
        w = weight_table(Pj, eta, guard_scale).weights
        ssq = float(np.dot(w.astype(np.float64), w.astype(np.float64)))
        if ssq < 2**52:  # exact int64 accumulation is certified below 2^52
            ssq = int(np.dot(w, w))
        else:
            ssq = int((w.astype(object) ** 2).sum())
        points.append((3 * int(math.floor(Pj)) ** 3, ssq))
    xs = np.log([float(p[0]) for p in points])
    ys = np.log([float(p[1]) for p in points])
    slope = float(np.polyfit(xs, ys, 1)[0]) if len(points) > 1 else float("nan")
    return L2Moment(float(P), eta, points[-1][1], slope, tuple(points))


@dataclass(frozen=True)
class MultiplicityTail:
    P: float
    k: int
    eta: float
    K: float
    n: float
    threshold: float  # K * n^theta with theta = nu / k
    tail_mass: int
    chebyshev_bound: float
    holds: bool


def multiplicity_tail(P, k, eta, K, guard_scale=1.0):
    """Mass of high-multiplicity smooth values m <= n^{1/k}, n = P^{3k}.

    tail_mass sums s_3(m) over m with s_3(m) > K n^theta; the Chebyshev
    side K^{-1} n^{-theta} sum s_3(m)^2 over the same m dominates it
    pointwise (s_3 > K n^theta there), so holds is an exact inequality.
    """
    n = float(P) ** (3 * k)
    theta = SMOOTH_L2_EXPONENT / k
    threshold = K * n**theta
    w = weight_table(P, eta, guard_scale).weights
    mmax = int(math.floor(P ** 3 + 1e-9))
    s3 = w[: mmax + 1]
    sel = s3 > threshold
    tail_mass = int(s3[sel].sum())
    cheb = float((s3[sel].astype(np.float64) ** 2).sum()) / (K * n**theta)
    return MultiplicityTail(
        float(P), k, eta, K, n, threshold, tail_mass, cheb, tail_mass <= cheb
    )
