import numpy as np
import pytest

from welchkit import frames

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def onb2():
    return frames.onb(2)


@pytest.fixture
def mercedes():
    return frames.mercedes()


@pytest.fixture
def sic():
    return frames.sic_qubit()


def random_hermitian(rng, n):
    B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (B + B.conj().T) / 2


@pytest.fixture
def acceptance():
    """Record one pass/fail line per criterion and fail the test when it fails."""

    def record(criterion: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f" :: {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
