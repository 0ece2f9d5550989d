from __future__ import annotations

import json
from pathlib import Path

import pytest

from survnet import apply_modifications, load_sentinel

GOLDEN = Path(__file__).parent / "golden"
ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def sentinel():
    return load_sentinel()


@pytest.fixture(scope="session")
def sentinel_modified(sentinel):
    return apply_modifications(sentinel.architecture, sentinel.modifications)


@pytest.fixture
def golden():
    def load(name: str):
        return json.loads((GOLDEN / name).read_text(encoding="utf-8"))
    return load


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None and report.when == "call":
        number, title = marker.args
        item.config.stash[ACCEPTANCE].append((number, title, report.outcome))


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(ACCEPTANCE, [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(results):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"AC{number} {verdict}  {title}")
