"""Complete exponential sums attached to k-th powers of sums of three cubes.

Notation (e(x) = exp(2*pi*i*x), e_q(x) = e(x/q), T(r) = r1^3 + r2^3 + r3^3):

    S_k(q, a)    = sum_{r=1..q} e_q(a r^k)                    ("power")
    S_k(q, a, b) = sum_{r=1..q} e_q(a r^k + b r)              ("twisted")
    S(q, a)      = sum_{r in [1,q]^3} e_q(a T(r)^k)           ("triple")

Two evaluation routes are provided for S(q, a):

  * triple_sum_direct enumerates all q^3 triples (cost q^3, guarded);
  * triple_sum_fast uses the orthogonality identity
        S(q, a) = q^{-1} sum_{u=1..q} S_3(q, u)^3 S_k(q, a, -u),
    evaluated with length-q DFTs (cost O(q log q) per unit a).

Phases are always reduced modulo q in exact integer arithmetic before any
root-of-unity lookup, so there is no phase drift for large arguments.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import guards, kernels

TRIPLE_DIRECT_MAX_Q = 300
TRIPLE_UNITS_MAX_Q = 4096


@dataclass(frozen=True)
class ExpSumValue:
    re: float
    im: float
    q: int
    a: int
    kind: str

    @property
    def value(self):
        return complex(self.re, self.im)

    def __complex__(self):
        return complex(self.re, self.im)


@lru_cache(maxsize=256)
def _unity(q):
    """e_q(j) for j = 0..q-1 (read-only)."""
    w = np.exp(2j * np.pi * np.arange(q) / q)
    w.setflags(write=False)
    return w


@lru_cache(maxsize=4096)
def _cube_hist(q):
    """Histogram of r^3 mod q over r = 1..q."""
    r = np.arange(1, q + 1, dtype=np.int64)
    c = (r * r % q) * r % q
    h = np.bincount(c, minlength=q)
    h.setflags(write=False)
    return h

@lru_cache(maxsize=4096)
def _power_map(q, k):
    """t -> t^k mod q for t = 0..q-1."""
    t = np.arange(q, dtype=np.int64)
    out = t.copy()
    for _ in range(k - 1):
        out = out * t % q
    out.setflags(write=False)
    return out


@lru_cache(maxsize=512)
def _tpow_hist_direct(q, k):
    """Histogram of T(r)^k mod q by direct enumeration of the q^3 triples."""
    ht = kernels.t_mod_hist(q)
    out = np.zeros(q, dtype=np.int64)
    np.add.at(out, _power_map(q, k), ht)
    out.setflags(write=False)
    return out


def _phase_dot(hist, q, a):
    """sum_t hist[t] e_q(a t) with exact integer phase reduction."""
    a = a % q
    t = np.arange(q, dtype=np.int64)
    return complex((hist * _unity(q)[(a * t) % q]).sum())


def power_sum(q, a, k):
    """S_k(q, a) by the direct q-term sum."""
    if q < 1:
        raise ValueError("q must be >= 1")
    r = np.arange(1, q + 1, dtype=np.int64)
    phase = (a % q) * _power_map(q, k)[r % q] % q
    val = complex(_unity(q)[phase].sum())
    return ExpSumValue(val.real, val.imag, q, a % q, "power")


def twisted_sum(q, a, b, k):
    """S_k(q, a, b) by the direct q-term sum."""
    if q < 1:
        raise ValueError("q must be >= 1")
    r = np.arange(1, q + 1, dtype=np.int64)
    phase = ((a % q) * _power_map(q, k)[r % q] + (b % q) * r) % q
    val = complex(_unity(q)[phase].sum())
    return ExpSumValue(val.real, val.imag, q, a % q, "twisted")


def triple_sum_direct(q, a, k, guard_scale=1.0):
    """S(q, a) summed over all q^3 triples (cost q^3, guarded)."""
    guards.check("triple_sum_direct modulus", q, TRIPLE_DIRECT_MAX_Q, guard_scale)
    val = _phase_dot(_tpow_hist_direct(q, k), q, a)
    return ExpSumValue(val.real, val.imag, q, a % q, "triple")


def triple_sum_fast(q, a, k):
    """S(q, a) through the twisted-sum identity, cost O(q log q)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    a = a % q
    # S_3(q, u) = conj(F3[u]) where F3 = DFT of the cube histogram.
    f3 = np.conj(np.fft.fft(_cube_hist(q)))
    w = _unity(q)[a * _power_map(q, k) % q]
    wk = np.fft.fft(w)  # wk[u] = S_k(q, a, -u), with r = q folded into r = 0
    val = complex((f3**3 * wk).sum()) / q
    return ExpSumValue(val.real, val.imag, q, a, "triple")


@lru_cache(maxsize=512)
def triple_sum_units(q, k, guard_scale=1.0):
    """S(q, a) for every a = 0..q-1 at once (read-only complex array).

    The triple histogram is assembled exactly by cyclic self-convolution of
    the cube histogram (cost O(q^2)), then all values follow from one DFT.
    Agrees with triple_sum_fast / triple_sum_direct to rounding error.
    """
    guards.check("triple_sum_units modulus", q, TRIPLE_UNITS_MAX_Q, guard_scale)
    c3 = _cube_hist(q)

    def cyc(u, v):
        f = np.convolve(u, v)
        out = np.zeros(q, dtype=np.int64)
        np.add.at(out, np.arange(f.size) % q, f)
        return out

    ht = cyc(cyc(c3, c3), c3)
    hist = np.zeros(q, dtype=np.int64)
    np.add.at(hist, _power_map(q, k), ht)
    # S(q, a) = sum_t hist[t] e_q(+a t) = conj(DFT(hist))[a]
    vals = np.conj(np.fft.fft(hist))
    vals.setflags(write=False)
    return vals


def tpow_hist(q, k, guard_scale=1.0):
    """Exact histogram of T(r)^k mod q (convolution route, cost O(q^2))."""
    guards.check("tpow_hist modulus", q, TRIPLE_UNITS_MAX_Q, guard_scale)
    c3 = _cube_hist(q)

    def cyc(u, v):
        f = np.convolve(u, v)
        out = np.zeros(q, dtype=np.int64)
        np.add.at(out, np.arange(f.size) % q, f)
        return out

    ht = cyc(cyc(c3, c3), c3)
    hist = np.zeros(q, dtype=np.int64)
    np.add.at(hist, _power_map(q, k), ht)
    return hist


def units(q):
    """Residues a in [1, q] with gcd(a, q) = 1 (a = q -> 1 appears as q for q = 1)."""
    if q == 1:
        return [1]
    return [a for a in range(1, q) if math.gcd(a, q) == 1]
