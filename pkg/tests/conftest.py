import stat
import sys
from pathlib import Path

import pytest

SUPPORT = Path(__file__).parent / "support"

_acceptance_lines = []


def _make_solver(tmp_path, *extra):
    script = tmp_path / ("stub_solver" + "".join(extra).replace("-", "_"))
    args = " ".join(extra)
    script.write_text(f'#!/bin/sh\nexec "{sys.executable}" "{SUPPORT / "dpll_solver.py"}" "$1" {args}\n')
    script.chmod(script.stat().st_mode | stat.S_IXUSR | stat.S_IXGRP | stat.S_IXOTH)
    return str(script)


@pytest.fixture
def stub_solver(tmp_path):
    return _make_solver(tmp_path)


@pytest.fixture
def lying_solver(tmp_path):
    return _make_solver(tmp_path, "--lie")


@pytest.fixture(autouse=True)
def _no_ambient_solver(monkeypatch):
    monkeypatch.delenv("XORENC_SAT_SOLVER", raising=False)


DEFAULT_SEED = 20240611


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED,
                     help=f"base seed for randomized suites (default {DEFAULT_SEED})")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(cid, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m is None or rep.when != "call":
        return
    cid, title = m.args
    status = "PASS" if rep.passed else "FAIL"
    _acceptance_lines.append(f"[{status}] {cid}: {title} ({rep.duration:.2f}s)")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_acceptance_lines, key=lambda s: int(s.split("AC")[1].split(":")[0])):
        terminalreporter.write_line(line)
