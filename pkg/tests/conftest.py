import random

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion."""
    lines = []

    def note(text: str):
        lines.append(text)

    yield note
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    title = request.node.function.__doc__.strip().splitlines()[0]
    detail = "; ".join(lines)
    line = f"{'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
