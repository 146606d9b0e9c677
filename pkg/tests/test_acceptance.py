"""Acceptance gate: every verification suite passes within its time budget.

Each test prints one line, ``criterion N (<suite>): pass|fail``, then
asserts the suite result and the wall-clock budget.
"""

import pytest

from jetcartan.suites import run_suite

CRITERIA = [
    (1, "graded-algebra", 10),
    (2, "jet-group", 30),
    (3, "ad-action", 30),
    (4, "spencer-exactness", 60),
    (5, "structure-eq", 60),
    (6, "nonlinear-ops", 120),
    (7, "develop-roundtrip", 60),
    (8, "cech-cocycle", 60),
    (9, "lagrangian", 30),
    (10, "serialization", 10),
]


@pytest.mark.parametrize("num,name,budget", CRITERIA,
                         ids=[c[1] for c in CRITERIA])
def test_criterion(num, name, budget, capsys):
    report = run_suite(name)
    verdict = "pass" if report.passed else "fail"
    with capsys.disabled():
        print(f"criterion {num} ({name}): {verdict} "
              f"[{report.elapsed:.1f}s / {budget}s]")
    assert report.passed, f"suite {name} failed:\n{report.render()}"
    assert report.elapsed < budget, (
        f"suite {name} took {report.elapsed:.1f}s, budget {budget}s")
