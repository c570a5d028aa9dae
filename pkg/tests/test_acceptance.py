"""Acceptance criteria, one test each.

Every check prints a PASS/FAIL line (visible in ``pytest -v`` output) followed
by one summary line per criterion.  Criterion 1 cannot be met as stated: the
computed MD_4 is <x,y>^2, so <x,y> is not contained in it.  That test is a
strict xfail, so it still runs the unchanged check and would flag an
unexpected pass.  The true ideals are asserted in tests/test_disc.py.
"""

from __future__ import annotations

import time

import pytest

from pidisc.verify import CRITERIA

TOTAL_BUDGET = 300.0
_elapsed: list[float] = []


def _run(k: int, capsys) -> bool:
    t0 = time.perf_counter()
    results = CRITERIA[k]()
    dt = time.perf_counter() - t0
    _elapsed.append(dt)
    ok = all(r.passed for r in results)
    with capsys.disabled():
        print()
        for r in results:
            print("   ", r.line())
        print(f"CRITERION {k}: {'PASS' if ok else 'FAIL'} ({sum(r.passed for r in results)}/{len(results)} checks, {dt:.1f}s)")
    return ok


@pytest.mark.xfail(strict=True, reason="MD_4 = <x,y>^2 and D_4 = <x^2,y^2>; neither contains <x,y>")
def test_criterion_1_matrix_order_example(capsys):
    assert _run(1, capsys)


def test_criterion_2_quantum_affine_example(capsys):
    assert _run(2, capsys)


def test_criterion_3_weyl_discriminant_formula(capsys):
    assert _run(3, capsys)


def test_criterion_4_azumaya_locus(capsys):
    assert _run(4, capsys)


def test_criterion_5_level_stratification(capsys):
    assert _run(5, capsys)


def test_criterion_6_trace_decomposition(capsys):
    assert _run(6, capsys)


def test_criterion_7_property_suites(capsys):
    assert _run(7, capsys)


def test_criterion_8_singular_locus(capsys):
    assert _run(8, capsys)


def test_total_runtime(capsys):
    total = sum(_elapsed)
    with capsys.disabled():
        print(f"\nACCEPTANCE RUNTIME: {total:.1f}s for {len(_elapsed)} criteria (budget {TOTAL_BUDGET:.0f}s)")
    assert len(_elapsed) == 8 and total < TOTAL_BUDGET
