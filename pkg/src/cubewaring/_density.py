"""Level-set density of T(x) = x1^3 + x2^3 + x3^3 over the box [0, P]^3.

Writing u1 = P^3, the volume density D(u) = d/du vol{x in [0,P]^3 : T(x) <= u}
is the triple convolution of the single-cube density f(v) = (1/3) v^{-2/3}
on (0, u1].  It is piecewise:

    D(u) = Gamma(4/3)^3              on [0, u1]   (exact),
    D(u) = int_0^P A2'(u - z^3) dz   on (u1, 3u1] (quadrature),

where A2' is the two-cube density

    A2'(w) = (2 C2 / 3) w^{-1/3}                                 (w <= u1)
    A2'(w) = (1/9) int_{w-u1}^{u1} v^{-2/3} (w-v)^{-2/3} dv      (u1 < w <= 2u1)

with C2 = Gamma(4/3)^2 / Gamma(5/3).  D has algebraic kinks at u1 and 2u1,
so the two outer pieces are sampled and splined in the variables
(u - u1)^{1/3} and (u - 2u1)^{1/3} where they are smooth.

The one-dimensional reduction of the oscillatory integral

    v(beta) = int_{[0,P]^3} e(beta T(x)^k) dx = int_0^{3u1} D(u) e(beta u^k) du

is evaluated with phase-adaptive panels (panel length at most a quarter
period of the local phase derivative) carrying Gauss-Legendre nodes.
"""

import math
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicSpline

GAMMA_4_3 = math.gamma(4.0 / 3.0)
V1 = GAMMA_4_3**3  # vol{x >= 0 : T(x) <= 1}
C2 = GAMMA_4_3**2 / math.gamma(5.0 / 3.0)  # area{x >= 0 : x1^3 + x2^3 <= 1}

_GL_CACHE = {}


def _gl(n):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def _panel_nodes(edges, order):
    """Gauss-Legendre nodes/weights across consecutive panels given by edges."""
    x, w = _gl(order)
    a = edges[:-1]
    b = edges[1:]
    mid = 0.5 * (a + b)[:, None]
    half = 0.5 * (b - a)[:, None]
    return (mid + half * x[None, :]).ravel(), (half * w[None, :]).ravel()


def _graded_edges(a, b, n, power, toward_b):
    """n panel edges on [a, b], clustered at b (or at a) with given grading."""
    t = np.linspace(0.0, 1.0, n + 1) ** power
    return b - (b - a) * t[::-1] if toward_b else a + (b - a) * t


def _a2prime_mid(w, u1, order=24, panels=8):
    """Two-cube density on (u1, 2u1]: (1/9) int v^{-2/3}(w-v)^{-2/3} dv.

    The integrand is symmetric about v = w/2 with equal steep endpoints, so
    integrate twice the upper half with panels graded into the endpoint.
    """
    w = np.atleast_1d(w)
    out = np.zeros(w.shape)
    for i, wi in enumerate(w):
        lo, hi = wi / 2.0, u1
        if hi <= wi - u1:
            continue
        edges = _graded_edges(lo, hi, panels, 2.0, toward_b=True)
        x, wt = _panel_nodes(edges, order)
        out[i] = 2.0 * (wt * x ** (-2.0 / 3.0) * (wi - x) ** (-2.0 / 3.0)).sum() / 9.0
    return out


def _density_point(u, P, order=24):
    """D(u) for u in (u1, 3u1] by quadrature over the third coordinate."""
    u1 = P**3
    z_hi = min(P, u ** (1.0 / 3.0))
    z_lo = max(u - 2 * u1, 0.0) ** (1.0 / 3.0)
    acc = 0.0
    # branch where u - z^3 > u1 (two-cube density by quadrature)
    z_mid = min(z_hi, max(u - u1, 0.0) ** (1.0 / 3.0))
    if z_mid > z_lo:
        edges = _graded_edges(z_lo, z_mid, 6, 2.0, toward_b=True)
        x, wt = _panel_nodes(edges, order)
        acc += (wt * _a2prime_mid(u - x**3, u1)).sum()
    # branch where u - z^3 <= u1 (exact power law), steep toward z = z_hi
    if z_hi > z_mid:
        edges = _graded_edges(z_mid, z_hi, 10, 3.0, toward_b=True)
        x, wt = _panel_nodes(edges, order)
        acc += (wt * (2.0 * C2 / 3.0) * (u - x**3) ** (-1.0 / 3.0)).sum()
    return acc


class TripleDensity:
    """Piecewise representation of D(u) on [0, 3P^3]."""

    def __init__(self, P, samples=400):
        self.P = float(P)
        u1 = self.P**3
        self.u1 = u1
        # piece (u1, 2u1]: spline in m = (u - u1)^{1/3}
        m2 = np.linspace(0.0, u1 ** (1.0 / 3.0), samples)
        d2 = np.empty(samples)
        d2[0] = V1
        for i in range(1, samples):
            d2[i] = _density_point(u1 + m2[i] ** 3, self.P)
        self._s2 = CubicSpline(m2, d2)
        # piece (2u1, 3u1]: spline in m = (u - 2u1)^{1/3}
        m3 = np.linspace(0.0, u1 ** (1.0 / 3.0), samples)
        d3 = np.empty(samples)
        d3[0] = d2[-1]
        d3[-1] = 0.0
        for i in range(1, samples - 1):
            d3[i] = _density_point(2 * u1 + m3[i] ** 3, self.P)
        self._s3 = CubicSpline(m3, d3)

    def density(self, u):
        """D(u), vectorized; zero outside [0, 3 P^3]."""
        u = np.atleast_1d(np.asarray(u, dtype=np.float64))
        out = np.zeros(u.shape)
        u1 = self.u1
        sel = (u >= 0) & (u <= u1)
        out[sel] = V1
        sel = (u > u1) & (u <= 2 * u1)
        out[sel] = self._s2((u[sel] - u1) ** (1.0 / 3.0))
        sel = (u > 2 * u1) & (u <= 3 * u1)
        out[sel] = self._s3((u[sel] - 2 * u1) ** (1.0 / 3.0))
        return out

    def mass(self, order=32, panels_per_piece=40):
        """int_0^{3u1} D(u) du; equals P^3 up to construction error."""
        u1 = self.u1
        total = V1 * u1
        for lo, hi in ((u1, 2 * u1), (2 * u1, 3 * u1)):
            edges = np.linspace(lo, hi, panels_per_piece + 1)
            x, w = _panel_nodes(edges, order)
            total += (w * self.density(x)).sum()
        return total


@lru_cache(maxsize=32)
def triple_density(P):
    return TripleDensity(float(P))


def _phase_edges(beta, k, lo, hi, max_panels=2_000_000):
    """Panel edges on [lo, hi] with phase increments <= pi/2.

    The phase is psi(u) = 2 pi |beta| u^k, so equal-phase edges are
    psi^{-1} of a uniform grid; a floor of 8 panels keeps the smooth case
    accurate.
    """
    psi_lo = abs(beta) * lo**k
    psi_hi = abs(beta) * hi**k
    n = int(min(max_panels, max(8, math.ceil((psi_hi - psi_lo) * 8))))
    psis = np.linspace(psi_lo, psi_hi, n + 1)
    if abs(beta) == 0:
        return np.linspace(lo, hi, n + 1)
    edges = (psis / abs(beta)) ** (1.0 / k)
    edges[0], edges[-1] = lo, hi
    return edges


def v_reduced(beta, P, k, order=8):
    """v(beta) through the one-dimensional density reduction."""
    dens = triple_density(P)
    u1 = dens.u1
    total = 0.0 + 0.0j
    for lo, hi in ((0.0, u1), (u1, 2 * u1), (2 * u1, 3 * u1)):
        edges = _phase_edges(beta, k, lo, hi)
        x, w = _panel_nodes(edges, order)
        total += (w * dens.density(x) * np.exp(2j * np.pi * beta * x**k)).sum()
    return total


def box_oscillatory(beta, k, box, node_budget=80_000_000, order=8):
    """int_box e(beta T(x)^k) dx by tensor Gauss-Legendre panels.

    box is ((a1,b1),(a2,b2),(a3,b3)).  Panel counts per axis follow the
    phase derivative bound; exceeding node_budget raises (the caller should
    use the reduced route instead of accepting a low-accuracy value).
    """
    from . import guards

    tmax = sum(max(abs(a), abs(b)) ** 3 for a, b in box)
    axes = []
    total_nodes = 1
    for a, b in box:
        # max |d phase / dx| = 2 pi |beta| k T^{k-1} 3 x^2 on the axis
        periods = abs(beta) * k * tmax ** (k - 1) * 3 * max(abs(a), abs(b)) ** 2 * (b - a)
        panels = int(max(2, math.ceil(1.3 * periods + 2)))
        nodes = panels * order
        total_nodes *= nodes
        axes.append((a, b, panels))
    guards.check("direct-3d quadrature nodes", total_nodes, node_budget)
    grids = []
    for a, b, panels in axes:
        x, w = _panel_nodes(np.linspace(a, b, panels + 1), order)
        grids.append((x, w))
    x1, w1 = grids[0]
    x2, w2 = grids[1]
    x3, w3 = grids[2]
    c2 = x2**3
    c3 = x3**3
    total = 0.0 + 0.0j
    inner = c2[:, None] + c3[None, :]
    winner = w2[:, None] * w3[None, :]
    for xi, wi in zip(x1, w1):
        t = xi**3 + inner
        total += wi * (winner * np.exp(2j * np.pi * beta * t**k)).sum()
    return total
