"""NumPy implementations of the enumeration kernels.

These are the fallback backend: every function here has a signature-identical
twin in the compiled extension (`_ckernels`).  The package selects whichever
is importable at load time, so all results must agree exactly (integer
outputs, no floating point).
"""

import numpy as np

# Keep per-chunk scratch arrays below ~16M entries.
_CHUNK_BUDGET = 1 << 24


def lpf_sieve(limit):
    """Least-prime-factor table for 0..limit (0 for 0 and 1)."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    lpf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, int(limit**0.5) + 1):
        if lpf[p] == 0:
            lpf[p * p :: p][lpf[p * p :: p] == 0] = p
    unmarked = lpf == 0
    unmarked[:2] = False
    lpf[unmarked] = np.nonzero(unmarked)[0]
    return lpf


def t_value_counts(pmax, include_zero=False, mask12=None):
    """Counts of ordered triples x with T(x) = x1^3 + x2^3 + x3^3 = value.

    Coordinates range over 1..pmax (0..pmax when include_zero).  When mask12
    is given (boolean array of length pmax+1), coordinates 1 and 2 are
    restricted to x with mask12[x] true; coordinate 3 is unrestricted.
    Returns an int64 array of length 3*pmax**3 + 1 indexed by the T value.
    """
    if pmax < 1:
        raise ValueError("pmax must be >= 1")
    lo = 0 if include_zero else 1
    xs = np.arange(lo, pmax + 1, dtype=np.int64)
    cubes3 = xs**3
    if mask12 is not None:
        allowed = np.asarray(mask12, dtype=bool)
        xs12 = xs[allowed[xs]]
    else:
        xs12 = xs
    cubes12 = xs12**3
    out = np.zeros(3 * pmax**3 + 1, dtype=np.int64)
    if cubes12.size == 0:
        return out
    pair = (cubes12[:, None] + cubes12[None, :]).ravel()
    step = max(1, _CHUNK_BUDGET // max(1, cubes3.size))
    for i in range(0, pair.size, step):
        t = (pair[i : i + step, None] + cubes3[None, :]).ravel()
        out += np.bincount(t, minlength=out.size)
    return out


def t_mod_hist(q):
    """Histogram of T(r) mod q over all q**3 triples r in [1,q]^3.

    Direct enumeration (cost q**3); the calling layer is responsible for the
    cost guard.  Returns an int64 array of length q.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    r = np.arange(1, q + 1, dtype=np.int64)
    c = (r * r % q) * r % q
    pair = (c[:, None] + c[None, :]).ravel() % q
    out = np.zeros(q, dtype=np.int64)
    step = max(1, _CHUNK_BUDGET // q)
    for i in range(0, pair.size, step):
        t = (pair[i : i + step, None] + c[None, :]).ravel() % q
        out += np.bincount(t, minlength=q)
    return out
