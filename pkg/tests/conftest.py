import functools
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "repo", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


@functools.lru_cache(maxsize=None)
def fixture_run(name, transpose=False):
    """Cached pipeline run on a fixture family (optionally its transpose)."""
    from jsrkit.fixtures import FIXTURES
    from jsrkit.pipeline import certify_jsr

    fam = FIXTURES[name]()
    return certify_jsr(fam.transpose() if transpose else fam)


@functools.lru_cache(maxsize=None)
def fixture_norm(name, monotone=False):
    from jsrkit.fixtures import FIXTURES
    from jsrkit.norm import build_barabanov

    return build_barabanov(FIXTURES[name](), monotone=monotone)


@pytest.fixture(scope="session")
def ex1_run():
    return fixture_run("ex1")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
