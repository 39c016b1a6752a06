"""Acceptance gate: every criterion runs at its stated tolerance and prints
one pass/fail line.  Heavy shared computations are cached inside the package
modules, so the suite computes each expensive object once per session."""

import time

import pytest

from digitdens import acceptance

IDS = [f"{num:02d}-{name.replace(' ', '-')}" for num, name, _ in acceptance.CRITERIA]


@pytest.mark.parametrize("number,name,fn", acceptance.CRITERIA, ids=IDS)
def test_criterion(number, name, fn, capsys):
    start = time.perf_counter()
    try:
        detail = fn(4) if number == 5 else fn()
    except AssertionError:
        with capsys.disabled():
            print(f"\nFAIL criterion {number:2d} ({name})")
        raise
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        print(f"\nPASS [{elapsed:7.2f}s] criterion {number:2d} ({name}): {detail}")
