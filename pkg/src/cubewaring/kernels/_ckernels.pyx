# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels (hot loops of the package).

Signature-for-signature twin of `_pykernels`; outputs are identical int64
arrays.  See that module for the contracts.
"""

import numpy as np


def lpf_sieve(long long limit):
    if limit < 1:
        raise ValueError("limit must be >= 1")
    out = np.zeros(limit + 1, dtype=np.int64)
    cdef long long[::1] lpf = out
    cdef long long i, p
    for p in range(2, limit + 1):
        if lpf[p] == 0:
            lpf[p] = p
            if p <= limit // p:
                for i in range(p * p, limit + 1, p):
                    if lpf[i] == 0:
                        lpf[i] = p
    return out


def t_value_counts(long long pmax, bint include_zero=False, mask12=None):
    if pmax < 1:
        raise ValueError("pmax must be >= 1")
    cdef long long lo = 0 if include_zero else 1
    out = np.zeros(3 * pmax * pmax * pmax + 1, dtype=np.int64)
    cdef long long[::1] counts = out
    cubes_arr = np.arange(pmax + 1, dtype=np.int64) ** 3
    cdef long long[::1] cubes = cubes_arr
    cdef unsigned char[::1] allowed
    if mask12 is not None:
        allowed = np.ascontiguousarray(np.asarray(mask12, dtype=bool).view(np.uint8))
    else:
        allowed = np.ones(pmax + 1, dtype=np.uint8)
    cdef long long x1, x2, x3, c12
    for x1 in range(lo, pmax + 1):
        if not allowed[x1]:
            continue
        for x2 in range(lo, pmax + 1):
            if not allowed[x2]:
                continue
            c12 = cubes[x1] + cubes[x2]
            for x3 in range(lo, pmax + 1):
                counts[c12 + cubes[x3]] += 1
    return out


def t_mod_hist(long long q):
    if q < 1:
        raise ValueError("q must be >= 1")
    out = np.zeros(q, dtype=np.int64)
    cdef long long[::1] hist = out
    cmod_arr = np.empty(q, dtype=np.int64)
    cdef long long[::1] cmod = cmod_arr
    cdef long long r, x1, x2, x3, c12, t
    for r in range(q):
        x1 = r + 1
        cmod[r] = ((x1 * x1 % q) * x1) % q
    for x1 in range(q):
        for x2 in range(q):
            c12 = cmod[x1] + cmod[x2]
            if c12 >= q:
                c12 -= q
            for x3 in range(q):
                t = c12 + cmod[x3]
                if t >= q:
                    t -= q
                hist[t] += 1
    return out
