"""Criteria 1-11, one printed pass/fail line each (run with -s to see them)."""

import pytest

from betamatch import verify

LINES = {}  # shown in the terminal summary by conftest
BUDGET = {1: 1, 2: 5, 3: 5, 4: 1, 5: 1, 6: 120, 7: 600, 8: 1800, 9: 120, 10: 60, 11: 300}


@pytest.mark.parametrize("number", [n if n < 7 else pytest.param(n, marks=pytest.mark.slow)
                                    for n in range(1, 12)])
def test_criterion(number):
    res = verify.run_check(verify.CHECKS[number - 1])
    print(res.line())
    LINES[number] = res.line()
    assert res.number == number
    assert res.passed, res.detail
    assert res.seconds < BUDGET[number], f"took {res.seconds:.1f} s"
