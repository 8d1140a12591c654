"""The ten acceptance criteria at full size.

Each test records a one-line verdict that is repeated in the terminal
summary under "acceptance criteria".
"""

import time

import pytest

from puiseux_tree import checks

# criterion number -> wall-clock limit in seconds (None when unbounded)
LIMITS = {1: 10, 2: 10, 3: 20, 4: None, 5: None, 6: 30, 7: None, 8: None, 9: None, 10: None}


@pytest.mark.parametrize("number", sorted(checks.CRITERIA))
def test_criterion(number, acceptance_log):
    start = time.perf_counter()
    result = checks.run_criterion(number, seed=0)
    elapsed = time.perf_counter() - start
    line = f"{result.line()} in {elapsed:.2f}s"
    limit = LIMITS[number]
    if limit is not None and elapsed >= limit:
        line += f" [over the {limit}s limit]"
    acceptance_log[number] = line
    print(line)
    assert result.passed, result.failures[:5]
    if limit is not None:
        assert elapsed < limit


def test_every_criterion_is_registered():
    assert sorted(checks.CRITERIA) == list(range(1, 11))
