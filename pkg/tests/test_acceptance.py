"""The twelve acceptance criteria at full size; one pass/fail line each."""
import pytest

from dglapair.acceptance import CRITERIA, run


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    res = run(number)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
