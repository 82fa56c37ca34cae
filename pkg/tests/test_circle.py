import cmath
import math

import numpy as np
import pytest

from cubewaring import circle, guards, reps


def brute_f(alpha, P, k):
    pf = int(math.floor(P))
    total = 0j
    for x in range(1, pf + 1):
        for y in range(1, pf + 1):
            for z in range(1, pf + 1):
                total += cmath.exp(2j * cmath.pi * alpha * (x**3 + y**3 + z**3) ** k)
    return total


def test_f_eval_trivial_phases():
    assert abs(circle.f_eval(0.0, 2, 2) - 8) < 1e-12
    assert abs(circle.f_eval(1.0, 2, 2) - 8) < 1e-9
    assert abs(circle.f_eval(0.0, 7.9, 3) - 343) < 1e-12


@pytest.mark.parametrize("alpha", [0.1234, 0.618, 0.999])
def test_f_eval_against_brute(alpha):
    assert abs(circle.f_eval(alpha, 3, 2) - brute_f(alpha, 3, 2)) < 1e-8


def test_f_periodicity_and_conjugation():
    rng = np.random.default_rng(7)
    for alpha in rng.random(20):
        f = circle.f_eval(alpha, 3, 2)
        assert abs(f - circle.f_eval(alpha + 1.0, 3, 2)) < 1e-9
        assert abs(np.conj(f) - circle.f_eval(-alpha, 3, 2)) < 1e-9


def test_dft_inversion_example():
    M = 1201
    fj = circle.f_grid(2, 2, M)
    val = (fj**2 * np.exp(-2j * np.pi * 109 * np.arange(M) / M)).sum() / M
    assert abs(val - 6) < 1e-6


def test_g_eval():
    wt = reps.weight_table(9, eta=0.5)
    assert abs(circle.g_eval(0.0, 9, 2, 0.5) - wt.total_mass()) < 1e-9
    # eta with P^eta >= P removes the restriction
    for alpha in (0.2, 0.77):
        assert abs(circle.g_eval(alpha, 5, 2, 1.0) - circle.f_eval(alpha, 5, 2)) < 1e-9
    rng = np.random.default_rng(11)
    g0 = circle.g_eval(0.0, 9, 2, 0.5).real
    for alpha in rng.random(100):
        assert abs(circle.g_eval(alpha, 9, 2, 0.5)) <= g0 + 1e-9


def test_weyl_sum():
    assert abs(circle.weyl_sum((0.0, 0.0, 0.0), 11) - 11) < 1e-12
    assert abs(circle.weyl_sum((0.5,), 4)) < 1e-12
    rng = np.random.default_rng(3)
    for _ in range(100):
        al = tuple(rng.random(2))
        assert abs(circle.weyl_sum(al, 40)) <= 40 + 1e-9
    # cubes variant: brute check (the float64 oracle itself carries ~1e-8
    # phase error at x^6 ~ 6e7, so the tolerance reflects the oracle)
    al = (0.3, 0.71)
    brute = sum(cmath.exp(2j * cmath.pi * (0.3 * x**3 + 0.71 * x**6)) for x in range(1, 21))
    assert abs(circle.weyl_sum(al, 20, cubes=True) - brute) < 1e-6


def test_v_beta_zero():
    assert abs(circle.v_beta(0.0, 5.0, 2).value - 125) <= 1e-4 * 125
    assert abs(circle.v_beta(0.0, 4.0, 3, "direct-3d").value - 64) < 1e-9


def test_v_beta_two_methods():
    for beta in (1e-5, 1e-4):
        vr = circle.v_beta(beta, 5.0, 2).value
        vd = circle.v_beta(beta, 5.0, 2, "direct-3d").value
        assert abs(vr - vd) <= 1e-4 * 125
        assert abs(vr) <= 125 * (1 + 1e-6)  # |v| <= P^3 always


def test_v_beta_direct_budget_guard():
    with pytest.raises(guards.GuardViolation):
        circle.v_beta(0.5, 10.0, 2, "direct-3d")


def test_v_beta_decay():
    n = 10.0**6
    for j in (0, 4, 9, 12):
        beta = 2**j / n
        v = circle.v_beta(beta, 10.0, 2).value
        assert abs(v) * (1 + n * beta) ** 0.5 / 1000.0 <= 10.0


def test_v_beta_grid_matches_pointwise():
    betas, vals = circle.v_beta_grid(4.0, 2, 1e-3, min_samples=500)
    for i in (1, len(betas) // 2, len(betas) - 1):
        ref = circle.v_beta(float(betas[i]), 4.0, 2).value
        assert abs(vals[i] - ref) < 1e-3 * 64


def test_major_approx_V():
    assert abs(circle.major_approx_V(0.0, 1, 0, 5.0, 2) - 125) <= 1e-2
    v1 = circle.major_approx_V(1 / 3 + 1e-7, 3, 1, 5.0, 2)
    v2 = circle.major_approx_V(2 / 3 - 1e-7, 3, 2, 5.0, 2)
    assert abs(v1 - np.conj(v2)) < 1e-6
    with pytest.raises(ValueError):
        circle.major_approx_V(0.5, 4, 2, 5.0, 2)


def test_major_approx_V_residual():
    """|f - V| <= 50 P^2 q (1 + n |beta|) at sampled major-arc points."""
    P, k = 15.0, 2
    n = P ** (3 * k)
    dis = circle.dissect("xi", P, k, xi=0.3, s=8)
    rng = np.random.default_rng(5)
    for _ in range(20):
        arc = dis.arcs[rng.integers(len(dis.arcs))]
        beta = float((2 * rng.random() - 1) * arc.half_width)
        alpha = arc.center + beta
        f = circle.f_eval(alpha % 1.0, P, k)
        V = circle.major_approx_V(alpha, arc.q, arc.a, P, k)
        assert abs(f - V) <= 50.0 * P**2 * arc.q * (1 + n * abs(beta))


def test_major_approx_W():
    V = circle.major_approx_V(1e-7, 1, 0, 6.0, 2)
    W = circle.major_approx_W(1e-7, 1, 0, 6.0, 2, eta=2.0)
    assert abs(W - V) < 1e-12  # rho(1/eta) = 1 for eta >= 1
    W = circle.major_approx_W(1e-7, 1, 0, 6.0, 2, eta=0.5)
    assert abs(W - V * (1 - math.log(2)) ** 2) < 1e-9


def test_g_Qm_trivial_cases():
    gq = circle.g_Qm_eval(0.0, 12, 1, 2, 0.5, 0.0, 1.0, 1.0)
    smooth = reps.smooth_sieve(12, 12**0.5).members()
    assert abs(gq.value - 12 * smooth.size**2) < 1e-9
    alpha = 0.4321
    gq = circle.g_Qm_eval(alpha, 10, 1, 2, 0.5, 0.0, 1.0, 1.0)
    assert abs(gq.value - circle.g_eval(alpha, 10, 2, 0.5)) < 1e-6


def test_g_Qm_approximant_on_major_arc():
    alpha = 1 / 3 + 1e-9
    gq = circle.g_Qm_eval(alpha, 15, 2, 2, 0.5, 0.25, 1.0, 1.0, q=3, a=1)
    E = 15.0**3 * math.log(15.0) ** (circle.DEFAULT_KAPPA - 1) * math.log(math.log(15.0))
    assert gq.approximant is not None
    assert abs(gq.value - gq.approximant) / E < 50.0  # residual report stays sane
    with pytest.raises(ValueError):
        circle.g_Qm_eval(alpha, 15, 3, 2, 0.5, 0.25, 1.0, 1.0, q=3, a=1)


def test_dissect_xi():
    dis = circle.dissect("xi", 100, 2, xi=0.5, s=8)
    assert dis.verify_disjoint()
    qs = sorted({arc.q for arc in dis.arcs})
    assert qs == list(range(1, 11))
    # P^xi < 2 leaves only the q = 1 arc
    dis = circle.dissect("xi", 40, 2, xi=0.1, s=8)
    assert all(arc.q == 1 for arc in dis.arcs)
    with pytest.raises(ValueError):
        circle.dissect("xi", 100, 2, xi=0.9, s=8)


def test_dissect_kappa_measure():
    dis = circle.dissect("kappa", 1e4, 2)
    assert dis.verify_disjoint()
    qs = [arc.q for arc in dis.arcs]
    bound = 2 * math.log(1e4) ** (3 * circle.DEFAULT_KAPPA) * 1e4 ** (-6.0) * len(qs)
    assert dis.total_measure() <= bound
    assert dis.total_measure() <= 1e-6


def test_dissect_classify():
    dis = circle.dissect("xi", 50, 2, xi=0.3, s=8)
    arc = dis.arcs[-1]
    inside = np.array([arc.center, arc.center + 0.5 * arc.half_width])
    outside = np.array([arc.center + 10 * arc.half_width])
    assert dis.classify(inside).all()
    assert not dis.classify(outside).any()
    # wrap-around of the arc at 0
    w = dis.arcs[0].half_width
    assert dis.classify(np.array([1.0 - w / 2])).all()


def test_arc_integral_matches_counts():
    dis = circle.dissect("xi", 2, 2, xi=0.4, s=3)
    ai = circle.arc_integral(2, 2, 2, 109, dis)
    assert ai.resolved
    assert abs(ai.total - 6) < 0.05
    assert abs(ai.major_part + ai.minor_part - ai.total) < 1e-9
    ai = circle.arc_integral(2, 2, 2, 11, dis)
    assert abs(ai.total) < 0.05


def test_arc_integral_unresolved_grid_reports():
    dis = circle.dissect("xi", 3, 2, xi=0.4, s=3)
    ai = circle.arc_integral(3, 2, 2, 500, dis, M=2048)
    assert not ai.resolved
    assert np.isfinite(ai.richardson_delta)


def test_to_json(tmp_path):
    dis = circle.dissect("xi", 20, 2, xi=0.3, s=8)
    path = tmp_path / "arcs.json"
    dis.to_json(path)
    import json

    data = json.loads(path.read_text())
    assert data["regime"] == "xi"
    assert len(data["arcs"]) == len(dis.arcs)
