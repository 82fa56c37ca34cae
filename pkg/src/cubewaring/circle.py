"""Generating exponential sums, arc dissections, and arc integrals.

The generating sum over triples in the box [1, P]^3 is

    f(alpha) = sum_{x <= P} e(alpha T(x)^k)
             = sum_m r_3(m) e(alpha m^k),

and g(alpha) is the same with the smooth-restricted weights s_3.  The
representation count is recovered by orthogonality as

    R(n) = int_0^1 f(alpha)^s e(-alpha n) d alpha,

which on a uniform M-point grid is an exact DFT identity once M exceeds the
spectral support s * max(m^k).  Arc dissections come in two regimes:

  * width-xi regime: denominators q <= P^xi, arcs |alpha - a/q| <= P^xi/(q n);
  * log-power regime: q <= (log P)^kappa, width q^{-1} (log P)^kappa P^{-3k},
    with kappa defaulting to 1/5.

Phases are computed through extended precision (80-bit) reductions mod 1, and
grid evaluations fold the weights modulo M so a single FFT gives f on the
whole grid exactly.
"""

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.fft
import scipy.special

from . import dickman, expsums, guards, reps
from ._density import box_oscillatory, triple_density, v_reduced

F_EVAL_MAX_PFLOOR = 500
WEYL_MAX_X = 1_000_000
GRID_MAX_M = 1 << 26
DEFAULT_KAPPA = 0.2

# ---------------------------------------------------------------------------
# generating sums


@lru_cache(maxsize=64)
def _support(P, k, eta, mode):
    """(m values as longdouble, weights) for sum_m w(m) e(alpha m^k)."""
    w = reps.weight_table(P, eta).weights
    if mode == "unweighted":
        w = (w > 0).astype(np.int64)
    x = np.nonzero(w)[0]
    m = [int(v) ** k for v in x]
    if m and max(m) >= 2**63:
        raise guards.GuardViolation("f_eval phase magnitude", max(m), 2**63)
    return np.array(m, dtype=np.longdouble), w[x].astype(np.float64)


def f_eval(alpha, P, k, eta=None, mode="weighted", guard_scale=1.0):
    """f(alpha) (or g(alpha) when eta is set) through the weight table."""
    pfloor = int(math.floor(P))
    guards.check("f_eval box", pfloor, F_EVAL_MAX_PFLOOR, guard_scale)
    m, w = _support(float(P), k, eta, mode)
    phase = np.asarray((np.longdouble(alpha) * m) % 1.0, dtype=np.float64)
    return complex((w * np.exp(2j * np.pi * phase)).sum())


def g_eval(alpha, P, k, eta, guard_scale=1.0):
    """Smooth-restricted generating sum (coords 1, 2 of each triple smooth)."""
    return f_eval(alpha, P, k, eta=eta, guard_scale=guard_scale)


def f_grid(P, k, M, eta=None, mode="weighted", guard_scale=1.0):
    """f(j/M) for j = 0..M-1 by folding the weights mod M and one FFT."""
    pfloor = int(math.floor(P))
    guards.check("f_grid box", pfloor, F_EVAL_MAX_PFLOOR, guard_scale)
    guards.check("f_grid length", M, GRID_MAX_M, guard_scale)
    w = reps.weight_table(P, eta).weights
    if mode == "unweighted":
        w = (w > 0).astype(np.int64)
    x = np.nonzero(w)[0]
    folded = np.zeros(M, dtype=np.float64)
    for v in x:
        folded[pow(int(v), k, M)] += w[v]
    # f(j/M) = sum_m folded[m] e(+ j m / M) = conj(FFT(folded))[j]
    return np.conj(scipy.fft.fft(folded))


def weyl_sum(alphas, X, cubes=False):
    """Weyl sum sum_{1<=x<=X} e(alpha_1 x + ... + alpha_k x^k).

    With cubes=True the monomials are x^3, x^6, ..., x^{3k} instead.
    """
    guards.check("weyl_sum length", X, WEYL_MAX_X)
    xmax = int(math.floor(X))
    if xmax < 1:
        return 0j
    x = np.arange(1, xmax + 1, dtype=np.longdouble)
    phase = np.zeros(xmax, dtype=np.longdouble)
    for j, aj in enumerate(alphas, start=1):
        e = 3 * j if cubes else j
        phase = (phase + (np.longdouble(aj) * x**e) % 1.0) % 1.0
    return complex(np.exp(2j * np.pi * np.asarray(phase, dtype=np.float64)).sum())


# ---------------------------------------------------------------------------
# the oscillatory integral v(beta)


@dataclass(frozen=True)
class OscIntegral:
    beta: float
    P: float
    k: int
    value: complex
    method: str


def v_beta(beta, P, k, method="reduced-1d"):
    """v(beta) = int_{[0,P]^3} e(beta T(x)^k) dx.

    method "reduced-1d" integrates the level-set density of T in one
    dimension with phase-adaptive panels; "direct-3d" is a tensor-product
    quadrature of the raw triple integral, valid while its node budget
    holds (it refuses rather than degrade).
    """
    if method == "reduced-1d":
        val = v_reduced(beta, float(P), k)
    elif method == "direct-3d":
        box = ((0.0, float(P)),) * 3
        val = box_oscillatory(beta, k, box)
    else:
        raise ValueError(f"unknown method {method!r}")
    return OscIntegral(float(beta), float(P), k, val, method)


def v_beta_grid(P, k, beta_max, min_samples=200_000):
    """v on a uniform beta grid [0, beta_max] (k = 2 only).

    Splits v(beta) = V1 * int_0^{P^3} e(beta u^2) du  +  FFT tail of the
    smooth part of the T^k-density.  The first term is a closed-form
    Fresnel integral, the second one FFT over a Simpson-weighted t-grid.
    Returns (betas, values).
    """
    if k != 2:
        raise ValueError("v_beta_grid implements the k = 2 Fresnel reduction only")
    dens = triple_density(float(P))
    u1 = dens.u1
    t0, tmax = u1**k, (3 * u1) ** k
    dt = min(0.05 / max(beta_max, 1e-12), (tmax - t0) / 4096)
    nt = int(math.ceil((tmax - t0) / dt)) | 1  # odd count for Simpson
    tgrid = np.linspace(t0, tmax, nt)
    dt = tgrid[1] - tgrid[0]
    u = tgrid ** (1.0 / k)
    wdens = dens.density(u) * u ** (1.0 - k) / k
    simpson = np.ones(nt)
    simpson[1:-1:2] = 4.0
    simpson[2:-1:2] = 2.0
    simpson *= dt / 3.0
    nfft = scipy.fft.next_fast_len(max(4 * nt, int(min_samples / (beta_max * dt)) + 1))
    dbeta = 1.0 / (nfft * dt)
    count = int(beta_max / dbeta) + 1
    padded = np.zeros(nfft, dtype=complex)
    padded[:nt] = simpson * wdens
    spectrum = scipy.fft.ifft(padded) * nfft  # sum_i c_i e(+ m i / nfft)
    betas = dbeta * np.arange(count)
    tail = spectrum[:count] * np.exp(2j * np.pi * betas * t0)
    # Fresnel head: V1 * int_0^{u1} e(beta u^2) du
    c = 2.0 * np.pi * betas
    z = u1 * np.sqrt(2.0 * c / np.pi)
    s_f, c_f = scipy.special.fresnel(z)
    head = np.empty(count, dtype=complex)
    head[0] = u1
    head[1:] = np.sqrt(np.pi / (2.0 * c[1:])) * (c_f[1:] + 1j * s_f[1:])
    from ._density import V1

    return betas, V1 * head + tail


# ---------------------------------------------------------------------------
# major-arc approximants


def major_approx_V(alpha, q, a, P, k):
    """V(alpha, q, a) = q^{-3} S(q, a) v(alpha - a/q); requires gcd(a,q)=1."""
    if math.gcd(a, q) != 1:
        raise ValueError(f"major_approx_V requires gcd(a, q) = 1, got ({a}, {q})")
    beta = alpha - a / q
    s = expsums.triple_sum_units(q, k)[a % q]
    return s / q**3 * v_reduced(beta, float(P), k)


def major_approx_W(alpha, q, a, P, k, eta):
    """W = V scaled by rho(1/eta)^2 (the smooth-restriction factor)."""
    return major_approx_V(alpha, q, a, P, k) * dickman.rho(1.0 / eta) ** 2


@dataclass(frozen=True)
class BoxSumValue:
    value: complex
    approximant: complex | None
    box_count: int


def g_Qm_eval(alpha, Q, m, k, eta, C1, C2, C3, q=None, a=None, guard_scale=1.0):
    """Exponential sum over the dilated smooth box, and its approximant.

    The sum runs over x with C1 Q < x1 <= C2 Q and x2, x3 smooth up to
    C3 Q with bound Q^eta, with phases alpha T(m x)^k.  When (q, a) is
    given (gcd(a,q)=1, gcd(m,q)=1), the approximant
    q^{-3} S(q,a) rho(1/eta)^2 * int_box e(beta T(m x)^k) dx is returned
    alongside.
    """
    x1_lo = int(math.floor(C1 * Q)) + 1
    x1_hi = int(math.floor(C2 * Q))
    x23_hi = int(math.floor(C3 * Q))
    guards.check("g_Qm box", max(x1_hi, x23_hi), F_EVAL_MAX_PFLOOR, guard_scale)
    smooth = reps.smooth_sieve(max(x23_hi, 1), float(Q) ** eta).membership
    xs = np.nonzero(smooth)[0]
    xs = xs[xs >= 1]
    x1 = np.arange(x1_lo, x1_hi + 1, dtype=np.int64)
    if x1.size == 0 or xs.size == 0:
        return BoxSumValue(0j, None, 0)
    pair = (xs[:, None] ** 3 + xs[None, :] ** 3).ravel()
    total = 0j
    count = 0
    scale = np.longdouble(alpha) * np.longdouble(m) ** (3 * k)
    for c1 in x1.astype(object) ** 3:
        t = np.asarray(pair + c1, dtype=np.longdouble)
        phase = np.asarray((scale * t**k) % 1.0, dtype=np.float64)
        total += np.exp(2j * np.pi * phase).sum()
        count += pair.size
    approx = None
    if q is not None:
        if math.gcd(a, q) != 1 or math.gcd(m, q) != 1:
            raise ValueError("approximant requires gcd(a,q) = gcd(m,q) = 1")
        beta = alpha - a / q
        beta_eff = beta * float(m) ** (3 * k)
        box = ((C1 * Q, C2 * Q), (0.0, C3 * Q), (0.0, C3 * Q))
        integral = box_oscillatory(beta_eff, k, box)
        s = expsums.triple_sum_units(q, k)[a % q]
        approx = s / q**3 * dickman.rho(1.0 / eta) ** 2 * integral
    return BoxSumValue(complex(total), approx, count)


# ---------------------------------------------------------------------------
# arc dissections


@dataclass(frozen=True)
class Arc:
    a: int
    q: int
    center: float
    half_width: float


@dataclass
class ArcDissection:
    regime: str  # "xi" or "kappa"
    parameter: float
    n: float
    P: float
    k: int
    s: int | None
    arcs: list = field(default_factory=list)

    def total_measure(self):
        return sum(2 * arc.half_width for arc in self.arcs)

    def verify_disjoint(self):
        """Pairwise disjointness of the arcs as intervals mod 1."""
        ivs = sorted((a.center - a.half_width, a.center + a.half_width) for a in self.arcs)
        for (lo1, hi1), (lo2, hi2) in zip(ivs, ivs[1:]):
            if hi1 > lo2:
                return False
        if len(ivs) >= 2:  # wrap-around between last and first
            if ivs[-1][1] - 1.0 > ivs[0][0]:
                return False
        return True

    def classify(self, alphas):
        """Boolean mask: True where alpha lies on a major arc (mod 1)."""
        alphas = np.atleast_1d(np.asarray(alphas, dtype=np.float64))
        mask = np.zeros(alphas.shape, dtype=bool)
        for arc in self.arcs:
            d = np.abs(((alphas - arc.center + 0.5) % 1.0) - 0.5)
            mask |= d <= arc.half_width
        return mask

    def to_json(self, path=None):
        payload = {
            "regime": self.regime,
            "parameter": self.parameter,
            "n": self.n,
            "P": self.P,
            "k": self.k,
            "s": self.s,
            "arcs": [
                {"a": a.a, "q": a.q, "center": a.center, "half_width": a.half_width}
                for a in self.arcs
            ],
        }
        if path is None:
            return payload
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=1)


def dissect(regime, P, k, xi=None, s=None, kappa=DEFAULT_KAPPA, n=None):
    """Build the major-arc list for either regime (n defaults to P^{3k}).

    Arcs are centered at fractions a/q with 0 <= a <= q and gcd(a, q) = 1;
    the pair (0/1, 1/1) is stored once as the wrapped arc at 0.  The xi
    regime requires s and validates xi < s/(s+2).
    """
    P = float(P)
    if n is None:
        n = P ** (3 * k)
    if regime == "xi":
        if xi is None or s is None:
            raise ValueError("xi regime requires xi and s")
        if not 0 < xi < s / (s + 2):
            raise ValueError(f"xi must lie in (0, s/(s+2)) = (0, {s/(s+2):.4f})")
        qmax = int(math.floor(P**xi))
        width = lambda q: P**xi / (q * n)
        parameter = xi
    elif regime == "kappa":
        if kappa <= 0 or kappa >= 1:
            raise ValueError("kappa must lie in (0, 1)")
        qmax = int(math.floor(math.log(P) ** kappa))
        width = lambda q: math.log(P) ** kappa / (q * P ** (3 * k))
        parameter = kappa
    else:
        raise ValueError(f"unknown regime {regime!r}")
    dis = ArcDissection(regime, parameter, float(n), P, k, s)
    for q in range(1, max(qmax, 1) + 1):
        w = width(q)
        if q == 1:
            dis.arcs.append(Arc(0, 1, 0.0, w))
            continue
        for a in range(1, q):
            if math.gcd(a, q) == 1:
                dis.arcs.append(Arc(a, q, a / q, w))
    if not dis.verify_disjoint():
        raise ValueError("arc parameters produce overlapping arcs")
    return dis


# ---------------------------------------------------------------------------
# arc integration


@dataclass(frozen=True)
class ArcIntegral:
    major_part: float
    minor_part: float
    total: float
    M: int
    resolved: bool  # M exceeded the spectral support (DFT identity exact)
    richardson_delta: float
    major_share: float


def arc_integral(P, s, k, n, dissection, M=None, eta=None, guard_scale=1.0):
    """Split int_0^1 f^s e(-alpha n) over a dissection via grid sampling.

    With M above the spectral support s*(3 floor(P)^3)^k the grid sum is an
    exact DFT inversion and total = R(n) to rounding; below it the result
    is the alias-averaged estimate from the sampled grid and `resolved` is
    False.  The Richardson delta compares against the half-resolution grid.
    """
    pfloor = int(math.floor(P))
    support = s * (3 * pfloor**3) ** k
    if M is None:
        M = scipy.fft.next_fast_len(support + 1)
    guards.check("arc_integral grid", M, GRID_MAX_M, guard_scale)
    fj = f_grid(P, k, M, eta=eta, guard_scale=guard_scale)
    powers = fj**s
    phases = np.exp(-2j * np.pi * (n % M) * np.arange(M) / M)
    terms = powers * phases
    mask = dissection.classify(np.arange(M) / M)
    major = terms[mask].sum() / M
    minor = terms[~mask].sum() / M
    total = terms.sum() / M
    half = terms[::2].sum() / (M / 2) if M % 2 == 0 else total
    out_total = float(total.real)
    share = float(major.real / out_total) if out_total != 0 else float("nan")
    return ArcIntegral(
        float(major.real),
        float(minor.real),
        out_total,
        M,
        M > support,
        float(abs(total - half)),
        share,
    )
