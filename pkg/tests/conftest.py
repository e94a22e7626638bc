import os
import sys

import pytest
from hypothesis import settings

from paracontact.symbolic import DerivationSpec

settings.register_profile("repo", deadline=None, print_blob=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


def chart_spec(extra_constants=("a", "b")):
    spec = DerivationSpec(["x", "y", "z"])
    for i, name in enumerate("xyz"):
        spec.add_coordinate(name, i)
    for c in extra_constants:
        spec.add_constant(c)
    return spec


@pytest.fixture
def spec():
    return chart_spec()


@pytest.fixture
def pure_python_env(monkeypatch):
    monkeypatch.setenv("PARACONTACT_PURE_PYTHON", "1")
    return dict(os.environ, PARACONTACT_PURE_PYTHON="1")


PYTHON = sys.executable


ACCEPTANCE = []


def record(criterion, passed, detail):
    ACCEPTANCE.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {criterion:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
