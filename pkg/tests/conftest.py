import pytest

from agmon.graph import Problem, gen_family

# criterion id -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture
def p3():
    return Problem(gen_family({"family": "path", "n": 3}), [3.0, 0.0, 0.0], "p3")


@pytest.fixture
def k2():
    return Problem(gen_family({"family": "complete", "n": 2}), [0.0, 0.0], "k2")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
