"""Every acceptance criterion at its stated tolerance; one PASS/FAIL line each (run with -s to see them)."""

import pytest

from orlicz_lambda.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    res = run_criterion(number)
    with capsys.disabled():
        print(f"\ncriterion {res.number:>2} {res.name:<30} {'PASS' if res.passed else 'FAIL'} ({res.seconds:.1f}s) {res.details}")
    assert res.passed, res.details
