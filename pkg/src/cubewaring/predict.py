"""Closed-form main terms, lower-bound assembly, and the variable-count table.

The singular integral has the closed form

    J(n) = Gamma(4/3)^{3s} Gamma(1 + 1/k)^s Gamma(s/k)^{-1} n^{s/k - 1},

and the predicted main term multiplies it by the (truncated) singular series
and, for the smooth-restricted count, by rho(1/eta)^{2s}.  The appendix-style
parameter system for the minimal variable counts solves the fixed point

    xi0 = 1 - 1/(t - 2h + 1),   p = 1 + r/(4 xi0),  q = p/(p-1),
    t = r/p + 3k(3k+1)/q,       s = ceil(t),

with r = 2^k (k <= 3) or k(k+1) (4 <= k <= 7) and h = floor((k+1)/2); xi0 is
found by bisection, which sidesteps expanding the equivalent quadratic.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import dickman, guards, reps, series
from .circle import v_beta_grid


def h_of_k(k):
    """Variable-count threshold 9k^2 - k + 2."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return 9 * k * k - k + 2


def gamma_factor(k, s):
    """Gamma(4/3)^{3s} Gamma(1+1/k)^s / Gamma(s/k), via log-gamma."""
    return math.exp(
        3 * s * math.lgamma(4.0 / 3.0)
        + s * math.lgamma(1.0 + 1.0 / k)
        - math.lgamma(s / k)
    )


def singular_integral(k, s, n):
    """J(n) in closed form (s >= k + 1 for the integral to converge)."""
    if s < k + 1:
        raise ValueError("singular integral requires s >= k + 1")
    return gamma_factor(k, s) * float(n) ** (s / k - 1.0)


def singular_integral_quadrature(k, s, P, n, B=0.5, min_samples=None):
    """J(n) by truncated quadrature of int_{|beta|<=B} v(beta)^s e(-beta n).

    Independent of the closed form: v comes from the level-set density and
    the beta integral is a Simpson rule on a grid fine enough for the
    integrand bandwidth s*(3P^3)^k + n.  Exact agreement needs n <= P^{3k}
    (so the box constraint does not bite) and a B large enough that the
    stationary-phase tail is below the comparison tolerance.
    """
    tmax = (3.0 * float(P) ** 3) ** k
    bandwidth = s * tmax + n
    if min_samples is None:
        min_samples = int(4 * B * bandwidth) + 16
    betas, vals = v_beta_grid(P, k, B, min_samples=min_samples)
    integrand = vals**s * np.exp(-2j * np.pi * betas * float(n))
    m = len(betas) if len(betas) % 2 == 1 else len(betas) - 1
    w = np.ones(m)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w *= (betas[1] - betas[0]) / 3.0
    return 2.0 * float((w * integrand[:m].real).sum())


@dataclass(frozen=True)
class MainTermSpec:
    k: int
    s: int
    n: float
    eta: float | None
    gamma_factor: float
    smooth_factor: float
    series_value: float
    value: float


def main_term(k, s, n, eta=None, Q=series.DEFAULT_Q, guard_scale=1.0):
    """Assembled prediction gamma * rho(1/eta)^{2s} * SS_Q(n) * n^{s/k-1}."""
    g = gamma_factor(k, s)
    smooth = 1.0 if eta is None else float(dickman.rho(1.0 / eta)) ** (2 * s)
    sv = series.singular_series(int(round(n)), s, k, Q=Q, guard_scale=guard_scale).partial_sum
    return MainTermSpec(k, s, float(n), eta, g, smooth, sv, g * smooth * sv * float(n) ** (s / k - 1.0))


@dataclass(frozen=True)
class RatioExperiment:
    k: int
    s: int
    P: float
    Q: int
    n_lo: int
    n_hi: int
    mean_ratio: float
    median_ratio: float
    min_series: float


def main_term_ratio_experiment(k=2, s=8, P=18.0, Q=30, lo_frac=0.5, guard_scale=1.0):
    """Mean of R(n)/main_term over the top of the range n <= P^{3k}.

    R(n) comes from the float spectrum (the exact counts overflow 64-bit
    here); its FFT error is ~1e-10 relative, far below the heuristic band
    this experiment reports against.
    """
    n_max = int(round(float(P) ** (3 * k)))
    spectrum = reps.representation_spectrum(P, s, k, n_max, guard_scale=guard_scale)
    n_lo = int(math.ceil(lo_frac * n_max))
    n = np.arange(n_lo, n_max + 1, dtype=np.int64)
    sv = series.singular_series_values(n, s, k, Q=Q, guard_scale=guard_scale)
    mt = gamma_factor(k, s) * sv * n.astype(np.float64) ** (s / k - 1.0)
    ratio = spectrum[n_lo:] / mt
    return RatioExperiment(
        k, s, float(P), Q, n_lo, n_max,
        float(ratio.mean()), float(np.median(ratio)), float(sv.min()),
    )


def comparison_report(k, s, P, n_lo=None, n_hi=None, eta=None, Q=series.DEFAULT_Q, guard_scale=1.0):
    """Rows (n, R, main_term, ratio) comparing counts against predictions.

    Uses the exact table when its mass certificate allows, otherwise the
    float spectrum.  Rows with R = main_term = 0 are omitted.
    """
    pfloor = int(math.floor(P))
    if n_hi is None:
        n_hi = int(round(float(P) ** (3 * k)))
    if n_lo is None:
        n_lo = max(1, n_hi // 2)
    mode = "weighted" if eta is None else "smooth"
    try:
        counts = reps.representation_table(
            P, s, k, mode=mode, eta=eta, n_max=n_hi, guard_scale=guard_scale
        ).counts.astype(np.float64)
    except guards.GuardViolation:
        counts = reps.representation_spectrum(
            P, s, k, n_hi, mode=mode, eta=eta, guard_scale=guard_scale
        )
    n = np.arange(n_lo, n_hi + 1, dtype=np.int64)
    sv = series.singular_series_values(n, s, k, Q=Q, guard_scale=guard_scale)
    smooth = 1.0 if eta is None else float(dickman.rho(1.0 / eta)) ** (2 * s)
    mt = gamma_factor(k, s) * smooth * sv * n.astype(np.float64) ** (s / k - 1.0)
    rows = []
    for i, nn in enumerate(n):
        r_val = counts[nn]
        if r_val == 0 and mt[i] == 0:
            continue
        ratio = r_val / mt[i] if mt[i] != 0 else float("nan")
        rows.append((int(nn), float(r_val), float(mt[i]), float(ratio)))
    return rows


@dataclass(frozen=True)
class LowerBoundReport:
    k: int
    s: int
    P: float
    eta: float
    K: float
    theta: float
    n: int | None
    bound: float
    witness: int
    all_hold: bool
    checked: int
    worst_margin: float  # min over n of witness - bound


def lower_bound_r(k, s, P, eta, K, n=None, guard_scale=1.0):
    """Exact counting lower bound (R_eta(n) - R_1(n)) / (K n^theta)^s <= r(n).

    R_1 is the contribution of tuples with some coordinate of multiplicity
    s_3 above K n^theta; removing it and dividing by the maximal allowed
    multiplicity product bounds the multiplicity-free count r(n) from
    below.  The inequality is a finite counting identity, checked exactly
    for every n (or the single requested n).
    """
    theta = reps.SMOOTH_L2_EXPONENT / k
    witness_table = reps.representation_table(
        P, s, k, mode="unweighted", guard_scale=guard_scale
    ).counts
    smooth_w = reps.weight_table(P, eta, guard_scale).weights
    n_full = witness_table.size - 1
    ns = np.array([n], dtype=np.int64) if n is not None else np.arange(1, n_full + 1)
    thresholds = K * ns.astype(np.float64) ** theta
    bounds = np.zeros(ns.size)
    max_mult = int(smooth_w.max())
    # Group n by the integer part of the threshold: the truncated weight
    # table (and hence R_0) only changes when K n^theta crosses an integer.
    caps = np.minimum(np.floor(thresholds).astype(np.int64), max_mult)
    for cap in np.unique(caps):
        sel = caps == cap
        if cap <= 0:
            continue  # R_0 empty, bound stays 0
        w0 = np.where(smooth_w <= cap, smooth_w, 0)
        mass = int(w0.sum())
        if mass == 0:
            continue
        c = reps._pushforward(w0, k, n_full)
        acc = c
        for _ in range(s - 1):
            acc = reps._conv_trunc_exact(acc, c, n_full, mass**s)
        bounds[sel] = acc[ns[sel]] / thresholds[sel] ** s
    witnesses = witness_table[ns]
    margins = witnesses - bounds
    all_hold = bool((margins >= 0).all())
    i = int(np.argmin(margins))
    if n is not None:
        return LowerBoundReport(
            k, s, float(P), eta, K, theta, int(n),
            float(bounds[0]), int(witnesses[0]), all_hold, 1, float(margins[0]),
        )
    return LowerBoundReport(
        k, s, float(P), eta, K, theta, None,
        float(bounds[i]), int(witnesses[i]), all_hold, ns.size, float(margins[i]),
    )


@dataclass(frozen=True)
class AppendixParams:
    k: int
    r: int
    h: int
    xi0: float
    p_exp: float
    q_exp: float
    t: float
    s: int


def table1_params(k):
    """Solve the minimal-variable-count parameter system for k in 2..7."""
    if not 2 <= k <= 7:
        raise ValueError("table1_params is defined for k in 2..7")
    r = 2**k if k <= 3 else k * (k + 1)
    h = (k + 1) // 2

    def t_of(xi):
        p = 1.0 + r / (4.0 * xi)
        q = p / (p - 1.0)
        return r / p + 3.0 * k * (3.0 * k + 1.0) / q

    def resid(xi):
        return xi - (1.0 - 1.0 / (t_of(xi) - 2.0 * h + 1.0))

    lo, hi = 1e-9, 1.0 - 1e-9
    flo = resid(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = resid(mid)
        if (flo < 0) == (fm < 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    xi0 = 0.5 * (lo + hi)
    p = 1.0 + r / (4.0 * xi0)
    q = p / (p - 1.0)
    t = t_of(xi0)
    return AppendixParams(k, r, h, xi0, p, q, t, math.ceil(t))
