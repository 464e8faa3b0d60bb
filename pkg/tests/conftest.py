import numpy as np
import pytest

from reclindley import RegParams

ACCEPTANCE_TITLES = {
    "test_ac01": "AC1 reduction identities",
    "test_ac02": "AC2 normalization and raw moments",
    "test_ac03": "AC3 variance correction",
    "test_ac04": "AC4 score validity",
    "test_ac05": "AC5 estimator consistency",
    "test_ac06": "AC6 sum distribution",
    "test_ac07": "AC7 sampler fidelity",
    "test_ac08": "AC8 reliability consistency",
    "test_ac09": "AC9 application report",
    "test_ac10": "AC10 K-S oracle",
}

_acceptance_outcomes = {}
_acceptance_notes = []


@pytest.fixture
def note():
    """Record an informational line for the acceptance summary."""
    return _acceptance_notes.append


@pytest.fixture
def table1_params():
    return RegParams(3.0, 0.05, 3)


@pytest.fixture
def rng_np():
    return np.random.default_rng(20261016)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    key = name[:9]
    if key not in ACCEPTANCE_TITLES:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = _acceptance_outcomes.get(key, "PASS")
        outcome = "PASS" if report.outcome == "passed" and prev == "PASS" else "FAIL"
        _acceptance_outcomes[key] = outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance_outcomes):
        terminalreporter.write_line(f"{_acceptance_outcomes[key]}  {ACCEPTANCE_TITLES[key]}")
    for line in _acceptance_notes:
        terminalreporter.write_line(f"  note: {line}")
