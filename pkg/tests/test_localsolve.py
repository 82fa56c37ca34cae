import itertools
import math

import pytest

from cubewaring import guards, localsolve


def brute_m33(p, h):
    q = p**h
    out = set()
    for x1 in range(q):
        if x1 % p == 0:
            continue
        for x2 in range(q):
            for x3 in range(q):
                out.add((x1**3 + x2**3 + x3**3) % q)
    return out


def brute_local(p, h, s, n, k):
    q = p**h
    count = count_star = 0
    triples = list(itertools.product(range(1, q + 1), repeat=3))
    tvals = [pow(x**3 + y**3 + z**3, k, q) for (x, y, z) in triples]
    for combo in itertools.product(range(len(triples)), repeat=s):
        if sum(tvals[i] for i in combo) % q == n % q:
            count += 1
            x1, _, _ = triples[combo[0]]
            t1 = sum(c**3 for c in triples[combo[0]])
            if x1 % p != 0 and t1 % p != 0:
                count_star += 1
    return count, count_star


def test_m33_examples():
    assert localsolve.m33_set(3, 2).as_set() == set(range(9)) - {4, 5}
    assert localsolve.m33_set(7, 1).as_set() == set(range(7))
    assert localsolve.m33_set(3, 1).as_set() == set(range(3))


@pytest.mark.parametrize("p,h", [(2, 2), (3, 2), (5, 1), (2, 3)])
def test_m33_against_enumeration(p, h):
    assert localsolve.m33_set(p, h).as_set() == brute_m33(p, h)


def test_m33_guard():
    with pytest.raises(guards.GuardViolation):
        localsolve.m33_set(2, 18)


def test_local_count_examples():
    assert localsolve.local_count(2, 1, 1, 0, 2).count == 4
    assert localsolve.local_count(2, 1, 1, 1, 2).count == 4
    expect, expect_star = brute_local(3, 1, 1, 0, 2)
    lc = localsolve.local_count(3, 1, 1, 0, 2)
    assert (lc.count, lc.count_star) == (expect, expect_star)


@pytest.mark.parametrize("p,h,s,n,k", [(2, 2, 1, 3, 2), (3, 1, 2, 2, 2), (2, 1, 2, 1, 3)])
def test_local_count_against_enumeration(p, h, s, n, k):
    lc = localsolve.local_count(p, h, s, n, k)
    assert (lc.count, lc.count_star) == brute_local(p, h, s, n, k)


def test_local_count_sum_rule():
    for (p, h, s, k) in ((3, 2, 2, 2), (2, 3, 1, 3)):
        q = p**h
        total = sum(localsolve.local_count(p, h, s, n, k).count for n in range(q))
        assert total == p ** (3 * s * h)


def test_orthogonality_examples():
    for (p, h, s, n, k, tol) in (
        (2, 1, 1, 0, 2, 1e-9),
        (3, 1, 1, 1, 2, 1e-9),
        (5, 1, 2, 3, 2, 1e-8),
    ):
        _, _, disc = localsolve.orthogonality_check(p, h, s, n, k)
        assert disc < tol


def test_residue_coverage():
    assert localsolve.residue_coverage(2, 5) is True
    assert localsolve.residue_coverage(2, 1) is False
    assert localsolve.residue_coverage(2, 0) is False
    # threshold u >= ceil(9k/4) covers; check the k = 2 boundary value
    assert localsolve.residue_coverage(2, math.ceil(9 * 2 / 4)) is True


def brute_congruence(q, P, h, k):
    pts = range(int(math.floor(P)) + 1)
    tvals = [pow(x**3 + y**3 + z**3, k, q) for x in pts for y in pts for z in pts]
    count = 0
    for combo in itertools.product(tvals, repeat=2 * h):
        if (sum(combo[:h]) - sum(combo[h:])) % q == 0:
            count += 1
    return count


def test_congruence_count():
    assert localsolve.congruence_count(1, 4.0, 2, 2) == 5**12
    assert localsolve.congruence_count(2, 2, 1, 2) == brute_congruence(2, 2, 1, 2)
    assert localsolve.congruence_count(3, 1, 1, 3) == brute_congruence(3, 1, 1, 3)


def test_moment_identity():
    lhs, rhs, rel = localsolve.moment_identity(3, 3, 1, 2)
    assert rel < 1e-6
    lhs, rhs, rel = localsolve.moment_identity(5, 2, 2, 2)
    assert rel < 1e-6


def test_hensel_growth_at_threshold():
    """Hensel-ready solutions mod p^gamma force M_n(p^{gamma+1}) to grow by
    the full factor p^{3s-1}."""
    for (p, k, s) in ((2, 2, 5), (3, 2, 5), (5, 2, 3)):
        from cubewaring import arith

        gamma = arith.padic_context(p, k).gamma
        h = gamma + 1
        for n in range(0, p**h, max(1, p**h // 9)):
            assert localsolve.local_count(p, h, s, n, k).count >= p ** (3 * s - 1)


def test_rejects_composite_p():
    import pytest

    with pytest.raises(ValueError):
        localsolve.m33_set(6, 1)
    with pytest.raises(ValueError):
        localsolve.local_count(9, 1, 1, 0, 2)
