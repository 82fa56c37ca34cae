"""Dickman's function and smooth-number counts in progressions.

rho is defined by rho(x) = 0 for x < 0, rho(x) = 1 on [0, 1], continuity,
and the delay ODE x rho'(x) = -rho(x - 1) for x > 1.  Integrating the ODE
once gives the equivalent averaging identity

    x rho(x) = int_{x-1}^{x} rho(t) dt,

which is what the evaluator advances, one unit interval at a time, with
composite Simpson steps on a fine mesh and a fixed-point sweep for the
self-referencing part (contraction factor (x-j)/x < 1 on [j, j+1]).  All
quantities in the identity are positive, so there is no cancellation and
the relative error stays at the Simpson level deep into the tail, where
naive marching of the subtractive ODE form loses positivity near the
float64 noise floor.  Values between mesh nodes use cubic Hermite pieces
whose node derivatives -rho(x-1)/x are exact consequences of the ODE; the
derivative kinks at integers are exactly the panel boundaries.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import guards, reps

DEFAULT_MAX_X = 20
MAX_SUPPORTED_X = 64
_STEP = 1e-3


class DickmanEvaluator:
    """Piecewise cubic-Hermite representation of rho on [0, max_x]."""

    def __init__(self, max_x=DEFAULT_MAX_X, step=_STEP):
        self.max_x = int(math.ceil(max_x))
        self.step = step
        n = int(round(1.0 / step))
        self._n = n
        h = 1.0 / n
        self._h = h
        # vals[j][i] = rho(j + i*h), ders[j][i] = rho'(j + i*h); j = 0 is [0,1].
        vals = [np.ones(n + 1)]
        ders = [np.zeros(n + 1)]
        for j in range(1, self.max_x):
            x = j + h * np.arange(n + 1)
            prev_v = vals[j - 1]
            prev_d = ders[j - 1]
            d = -prev_v / x  # exact ODE relation at the nodes
            # per-step Simpson integrals of the previous interval, and their
            # reversed cumulative sums: tail[i] = int_{x_i - 1}^{j} rho
            prev_mid = self._hermite(prev_v, prev_d, h)
            prev_steps = (h / 6.0) * (prev_v[:-1] + 4.0 * prev_mid + prev_v[1:])
            tail = np.concatenate((np.cumsum(prev_steps[::-1])[::-1], [0.0]))
            # fixed-point sweep for x_i v_i = tail_i + int_j^{x_i} rho
            v = np.full(n + 1, prev_v[-1])
            for _ in range(200):
                mid = self._hermite(v, d, h)
                steps = (h / 6.0) * (v[:-1] + 4.0 * mid + v[1:])
                new = (tail + np.concatenate(([0.0], np.cumsum(steps)))) / x
                delta = np.abs(new - v).max()
                v = new
                if delta <= 1e-18 * max(v[0], 1e-300):
                    break
            vals.append(v)
            ders.append(d)
        self._vals = vals
        self._ders = ders

    @staticmethod
    def _hermite(v, d, h):
        """Midpoint values of the cubic Hermite pieces defined by (v, d)."""
        v0, v1 = v[:-1], v[1:]
        d0, d1 = d[:-1], d[1:]
        return 0.5 * (v0 + v1) + 0.125 * h * (d0 - d1)

    def rho(self, x):
        """rho at a scalar or array argument (0 for x < 0)."""
        scalar = np.isscalar(x)
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        if x.size and np.nanmax(x) > self.max_x:
            raise guards.GuardViolation("dickman argument", float(np.nanmax(x)), self.max_x)
        out = np.zeros(x.shape)
        out[(x >= 0) & (x <= 1)] = 1.0
        sel = (x > 1) & (x <= self.max_x)
        if sel.any():
            xs = x[sel]
            j = np.minimum(xs.astype(np.int64), self.max_x - 1)
            frac = (xs - j) / self._h
            i = np.minimum(frac.astype(np.int64), self._n - 1)
            t = frac - i
            res = np.empty(xs.shape)
            for jj in np.unique(j):
                m = j == jj
                v = self._vals[jj]
                d = self._ders[jj]
                ii = i[m]
                tt = t[m]
                h = self._h
                v0, v1 = v[ii], v[ii + 1]
                d0, d1 = d[ii], d[ii + 1]
                t2 = tt * tt
                t3 = t2 * tt
                res[m] = (
                    v0 * (2 * t3 - 3 * t2 + 1)
                    + d0 * h * (t3 - 2 * t2 + tt)
                    + v1 * (-2 * t3 + 3 * t2)
                    + d1 * h * (t3 - t2)
                )
            out[sel] = res
        return float(out[0]) if scalar else out


_default = None


def rho(x):
    """Module-level rho with a shared evaluator (grown on demand)."""
    global _default
    need = DEFAULT_MAX_X
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if arr.size:
        top = float(np.nanmax(arr))
        if top > MAX_SUPPORTED_X:
            raise guards.GuardViolation("dickman argument", top, MAX_SUPPORTED_X)
        need = max(need, int(math.ceil(top)))
    if _default is None or _default.max_x < need:
        _default = DickmanEvaluator(max_x=need)
    return _default.rho(x)


@dataclass(frozen=True)
class SmoothProgressionCount:
    m: int
    q: int
    r: int
    eta: float
    P: float
    actual: int
    predicted: float
    residual_ratio: float
    hypothesis_ok: bool  # q <= P^eta and P^eta < m <= P


def smooth_progression_count(m, q, r, eta, P, guard_scale=1.0):
    """Count of P^eta-smooth x <= m with x = r (mod q) vs its rho prediction.

    predicted = m rho(log m / (eta log P)) / q; residual_ratio rescales the
    error by log(m)/m, matching the expected m/log m error term.  Hypothesis
    violations (q too large, m outside (P^eta, P]) are reported, not fatal.
    """
    R = float(P) ** eta
    sieve = reps.smooth_sieve(m, R, guard_scale)
    members = sieve.members()
    actual = int((members % q == r % q).sum())
    u = math.log(m) / (eta * math.log(P))
    predicted = m * rho(u) / q
    residual_ratio = abs(actual - predicted) * math.log(m) / m
    ok = q <= R and R < m <= P
    return SmoothProgressionCount(
        m, q, r % q, eta, float(P), actual, predicted, residual_ratio, ok
    )
