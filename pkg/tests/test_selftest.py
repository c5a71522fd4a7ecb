import pytest

from tapediag.selftest import SUITES, run_all


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_small(name):
    result = SUITES[name](5, seed=3)
    assert result.ok, result.failures
    assert result.total >= 5 and result.line().startswith(f"{name}: ok")


def test_transcript_reproducible():
    first, second = [], []
    assert run_all(11, 0.02, first.append)
    assert run_all(11, 0.02, second.append)
    assert first == second
