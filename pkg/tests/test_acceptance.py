"""Acceptance criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or use
``nimramsey verify-paper`` for the same checks outside pytest.
"""

from __future__ import annotations

import pytest

from nimramsey.verify import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion-{c[0]:02d}" for c in CRITERIA])
def test_criterion(number):
    check = run_criterion(number)
    print(check.line())
    assert check.ok, check.line()
