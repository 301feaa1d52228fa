"""One test per acceptance criterion, each printing a single PASS/FAIL line.

The checks are the same property functions the ``dpd suite`` command runs,
at the default seed 0 and window 20.  Minimum instance counts are enforced
inside each property.
"""

from __future__ import annotations

import pytest

import conftest
from dingpd.suite import PropertyResult, Suite


@pytest.fixture(scope="module")
def suite() -> Suite:
    return Suite(seed=0, window=20)


def _report(n: int, title: str, results: list[PropertyResult]) -> None:
    ok = all(r.passed for r in results)
    detail = "; ".join(f"{r.name}: {r.status}, {r.checked} checked" + (f" ({r.detail})" if r.detail else "") for r in results)
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {title} - {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    for r in results:
        assert r.passed, f"{r.name}: {r.detail} reproducer={r.reproducer}"


def test_criterion_1_fixture_verdicts(suite):
    _report(1, "fixture verdicts", [suite.fixture_verdicts()])


def test_criterion_2_functorial_agreement(suite):
    _report(2, "module and RHom characterisations agree", [suite.functorial_agreement(50)])


def test_criterion_3_identities(suite):
    results = [
        suite.shift_identity(50),
        suite.direct_sum_identity(50),
        suite.stalk_identity(50),
        suite.sandwich(50),
    ]
    _report(3, "shift, direct sum, stalk and sandwich identities", results)


def test_criterion_4_total_acyclicity(suite):
    _report(4, "splices totally acyclic, negative controls rejected", [suite.total_acyclicity()])


def test_criterion_5_lifting_constructions(suite):
    _report(5, "lifts, homotopies and surjectivize", [suite.lifting_constructions()])


def test_criterion_6_ext_rhom_identity(suite):
    _report(6, "Ext of cokernels against RHom homology", [suite.ext_rhom_identity()])


def test_criterion_7_ext_oracle(suite):
    _report(7, "minimal and non-minimal Ext agree", [suite.ext_oracle(100)])


def test_criterion_8_two_of_three(suite):
    _report(8, "two-of-three finiteness on split sequences", [suite.two_of_three(20)])


def test_criterion_9_change_of_rings(suite):
    _report(9, "RHom and tensor inequalities over FIX4", [suite.change_of_rings(20)])


def test_criterion_10_honesty(suite):
    _report(10, "undetermined bounds grow on the radical-square-zero algebra", [suite.honesty()])
