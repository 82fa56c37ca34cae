"""Acceptance gate: one test per criterion, printing a PASS/FAIL line each.

Tolerances are pinned inside the check registry (cubewaring.checks), which
is also what `cubewaring verify-all` runs.  Criterion 11's partial-sum vs
Euler-product agreement band (0.05 at Q = 30) is exceeded by the genuine
modulus-36 tail term at n in {9, 15}; the check reports the measured gap
and this suite lets that failure stand rather than widening the band.  See
the repository README for the analysis.
"""

import pytest

from cubewaring import checks

ACCEPTANCE = sorted(name for name in checks.REGISTRY if name.startswith("acceptance-"))


@pytest.mark.parametrize("name", ACCEPTANCE)
def test_acceptance_criterion(name, capsys):
    [result] = checks.run([name])
    summary = {
        k: v
        for k, v in result.detail.items()
        if isinstance(v, (int, float, bool)) and not isinstance(v, dict)
    }
    with capsys.disabled():
        status = "PASS" if result.passed else "FAIL"
        print(f"\n{status} {result.name} ({result.runtime_s:.1f}s) {summary}")
    assert result.passed, f"{name}: {result.detail}"
