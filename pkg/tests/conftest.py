import re

import numpy as np
import pytest

from risnga import ChannelSet, SystemConfig, generate_channels


def random_channels(rng, M=3, K=2, N=4, scale=1.0):
    def cn(*shape):
        return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)

    return ChannelSet(h_d=cn(K, M), G=cn(N, M), h_r=cn(K, N))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def small_config():
    return SystemConfig(M=2, K=2, N=4, b=1, seed=7)


@pytest.fixture
def small_channels(small_config):
    return generate_channels(small_config, 0)


# -- acceptance report ------------------------------------------------------

_CRITERION = re.compile(r"test_criterion(\d+)")
_outcomes: dict[int, list[str]] = {}
_notes: dict[int, list[str]] = {}


def _criterion_of(nodeid):
    if "test_acceptance.py" not in nodeid:
        return None
    m = _CRITERION.search(nodeid)
    return int(m.group(1)) if m else None


@pytest.fixture
def note(request):
    """Attach a measured value to the acceptance report line."""
    number = _criterion_of(request.node.nodeid)
    return lambda text: _notes.setdefault(number, []).append(text)


def pytest_runtest_logreport(report):
    number = _criterion_of(report.nodeid)
    if number is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes.setdefault(number, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        results = _outcomes[number]
        passed = sum(r == "passed" for r in results)
        status = "PASS" if passed == len(results) else "FAIL"
        detail = "; ".join(_notes.get(number, []))
        line = f"criterion {number}: {status} [{passed}/{len(results)} checks] {detail}"
        terminalreporter.write_line(line.rstrip())
