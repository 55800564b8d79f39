import pytest

from infdef.core.errors import SessionError
from infdef.schemas.report import CheckResult, SelftestReport
from infdef.selftest import SUITE, run_selftest


def test_every_fixture_has_checks():
    assert set(SUITE) == {"ex1", "ex2", "ex3_r3", "ex3_r4", "ex3_r5", "ex4", "ex5"}
    assert all(SUITE.values())


def test_loop_fixture_passes():
    report = run_selftest(only=["ex3_r3"])
    assert report.passed, report.text()
    assert {c.fixture for c in report.checks} == {"ex3_r3"}
    assert len(report.checks) == len(SUITE["ex3_r3"])


def test_parallel_run_keeps_order():
    report = run_selftest(only=["ex3_r3", "ex3_r4"], jobs=2)
    assert report.passed
    assert [c.fixture for c in report.checks][0] == "ex3_r3"
    assert [c.fixture for c in report.checks][-1] == "ex3_r4"


def test_unknown_fixture():
    with pytest.raises(SessionError):
        run_selftest(only=["ex9"])


def test_report_text():
    report = SelftestReport(
        checks=[
            CheckResult(fixture="ex1", name="dimension", passed=True, seconds=0.5),
            CheckResult(fixture="ex1", name="star", passed=False, seconds=1.25, detail="boom"),
        ],
        passed=False,
    )
    lines = report.text().splitlines()
    assert lines[0] == "[PASS] ex1: dimension (0.50s)"
    assert lines[1] == "[FAIL] ex1: star (1.25s) - boom"
    assert lines[-1] == "1/2 checks passed"
    assert not report.ok()
