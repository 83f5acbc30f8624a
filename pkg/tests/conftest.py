import numpy as np
import pytest
from hypothesis import strategies as st

from gicregion import NormalizedChannel

gain = st.just(0.0) | st.floats(1e-9, 2.0)
cap = st.just(0.0) | st.floats(1e-6, 10.0)
positive_cap = st.floats(1e-3, 10.0, allow_nan=False)
unit = st.floats(0.0, 1.0, allow_nan=False)


@st.composite
def channels(draw, n=2, caps=cap):
    a = np.array([[0.0 if i == j else draw(gain) for j in range(n)] for i in range(n)])
    return NormalizedChannel(a, [draw(caps) for _ in range(n)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
