import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from reif import load_stdlib, run_query  # noqa: E402
from reif.cli import answer_text  # noqa: E402


@pytest.fixture(scope="session")
def stdlib():
    return load_stdlib()


@pytest.fixture(scope="session")
def stdlib_x():
    return load_stdlib(expand=True)


@pytest.fixture
def ask(stdlib):
    """Answer texts plus stats for a query against the library."""

    def run(query, db=None, **kw):
        answers, stats = run_query(db or stdlib, query, **kw)
        return [answer_text(a) for a in answers], answers, stats

    return run


def pytest_terminal_summary(terminalreporter):
    results = sys.modules.get("test_acceptance")
    lines = getattr(results, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
