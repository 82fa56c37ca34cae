import itertools
import json

import numpy as np
import pytest

from cubewaring import guards, reps


def brute_smooth(X, R):
    def ok(n):
        m, p = n, 2
        while m > 1:
            while m % p == 0:
                if p > R:
                    return False
                m //= p
            p += 1
            if p * p > m and m > 1:
                return m <= R
        return True

    return {n for n in range(1, X + 1) if ok(n)}


def test_smooth_sieve_examples():
    assert set(reps.smooth_sieve(10, 2).members().tolist()) == {1, 2, 4, 8}
    assert set(reps.smooth_sieve(10, 10).members().tolist()) == set(range(1, 11))
    assert set(reps.smooth_sieve(10, 1).members().tolist()) == {1}


def test_smooth_sieve_against_brute():
    got = set(reps.smooth_sieve(500, 7).members().tolist())
    assert got == brute_smooth(500, 7)


def test_smooth_sieve_lpf_field():
    sv = reps.smooth_sieve(100, 5)
    assert sv.least_prime_factor[97] == 97
    assert sv.least_prime_factor[98] == 2
    assert sv.least_prime_factor[99] == 3


def test_weight_table_examples():
    assert reps.weight_table(1).weights[3] == 1
    assert reps.weight_table(3).weights[10] == 3
    assert reps.weight_table(7.5).total_mass() == 343


def test_weight_table_brute():
    P = 4
    wt = reps.weight_table(P)
    counts = {}
    for c in itertools.product(range(1, P + 1), repeat=3):
        t = sum(v**3 for v in c)
        counts[t] = counts.get(t, 0) + 1
    for t, c in counts.items():
        assert wt.weights[t] == c
    assert wt.weights.sum() == P**3


def test_smooth_weight_restriction():
    wt = reps.weight_table(10, eta=0.5)  # bound 10^0.5 ~ 3.16: smooth = {1,2,3,4,6,8,9}
    full = reps.weight_table(10)
    assert (wt.weights <= full.weights).all()
    smooth = set(reps.smooth_sieve(10, 10**0.5).members().tolist())
    expect = sum(1 for a in smooth for b in smooth for _ in range(10))
    assert wt.total_mass() == expect


def brute_representation(P, s, k, weights):
    xs = np.nonzero(weights)[0]
    counts = {}
    for combo in itertools.product(xs.tolist(), repeat=s):
        n = sum(int(x) ** k for x in combo)
        w = 1
        for x in combo:
            w *= int(weights[x])
        counts[n] = counts.get(n, 0) + w
    return counts


def test_representation_examples():
    t = reps.representation_table(2, 2, 2)
    assert t.counts[18] == 1
    assert t.counts[109] == 6
    r = reps.representation_table(2, 2, 2, mode="unweighted")
    assert r.counts[109] == 2
    assert reps.representation_table(3, 3, 2).counts.sum() == 3**9
    assert reps.representation_table(7.5, 2, 2).counts.sum() == 7**6
    assert reps.representation_table(4, 2, 3).counts.sum() == 4**6


@pytest.mark.parametrize("P,s,k", [(2, 2, 2), (3, 3, 2), (2, 3, 3), (3, 2, 3)])
def test_representation_against_brute(P, s, k):
    for mode in ("weighted", "unweighted"):
        w = reps.weight_table(P).weights
        if mode == "unweighted":
            w = (w > 0).astype(np.int64)
        oracle = brute_representation(P, s, k, w)
        table = reps.representation_table(P, s, k, mode=mode).counts
        for n, c in oracle.items():
            assert table[n] == c
        assert table.sum() == sum(oracle.values())


def test_representation_domination():
    full = reps.representation_table(3, 2, 2).counts
    plain = reps.representation_table(3, 2, 2, mode="unweighted").counts
    smooth = reps.representation_table(3, 2, 2, mode="smooth", eta=0.8).counts
    assert (plain <= full).all()
    assert (smooth <= full).all()
    assert ((plain >= 1) == (full >= 1)).all()


def test_representation_truncation():
    full = reps.representation_table(3, 2, 2).counts
    part = reps.representation_table(3, 2, 2, n_max=500).counts
    assert (part == full[:501]).all()


def test_spectrum_matches_exact():
    exact = reps.representation_table(3, 3, 2).counts
    spec = reps.representation_spectrum(3, 3, 2, exact.size - 1)
    assert np.abs(spec - exact).max() < 1e-6


def test_exact_guard_on_overflowing_mass():
    with pytest.raises(guards.GuardViolation):
        reps.representation_table(18, 8, 2)


def test_l2_moment_values():
    assert reps.l2_moment(1, doublings=0).sum_of_squares == 1
    assert reps.l2_moment(2, doublings=0).sum_of_squares == 20
    m = reps.l2_moment(20, doublings=2)
    assert 1.0 < m.fitted_exponent < 1.4


def test_export_roundtrip(tmp_path):
    t = reps.representation_table(2, 2, 2)
    csv = tmp_path / "t.csv"
    t.to_csv(csv, nonzero_only=True)
    rows = csv.read_text().strip().splitlines()
    assert rows[0] == "n,count"
    assert "109,6" in rows
    payload = t.to_json()
    assert payload["counts"][109] == 6
    jf = tmp_path / "t.json"
    t.to_json(jf)
    assert json.loads(jf.read_text())["counts"][109] == 6


def test_multiplicity_tail():
    mt = reps.multiplicity_tail(10.0, 2, 0.4, 1e9)
    assert mt.tail_mass == 0 and mt.holds
    mt = reps.multiplicity_tail(4.0, 2, 0.5, 1e-4)
    assert mt.holds
    mt = reps.multiplicity_tail(10.0, 2, 0.4, 1.0)
    assert mt.holds
    # brute recomputation of both sides
    w = reps.weight_table(10.0, eta=0.4).weights
    n = 10.0**6
    thr = n ** (reps.SMOOTH_L2_EXPONENT / 2)
    tail = sum(int(w[m]) for m in range(1, 1001) if w[m] > thr)
    assert tail == mt.tail_mass
