"""Module invariant suites, through the same registry verify-all uses."""

import pytest

from cubewaring import checks

INVARIANTS = sorted(name for name in checks.REGISTRY if name.startswith("invariant-"))


@pytest.mark.parametrize("name", INVARIANTS)
def test_invariant(name):
    [result] = checks.run([name])
    assert result.passed, f"{name}: {result.detail}"
