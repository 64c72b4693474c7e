import pytest

from inifair import UeProfile, build_allocation, make_numerology


def make_ues(which, powers, n=120):
    if isinstance(n, int):
        n = [n] * len(powers)
    return [UeProfile(f"{which}-{i}", which, float(p), int(m)) for i, (p, m) in enumerate(zip(powers, n), 1)]


@pytest.fixture
def num1():
    return make_numerology(0, 15.0, 4096, 1 / 16)


@pytest.fixture
def num2():
    return make_numerology(1, 15.0, 4096, 1 / 16)


@pytest.fixture
def case1_alloc(num1, num2):
    return build_allocation(num1, num2, make_ues(1, [0, 0, 0]), make_ues(2, [0, 0, 0]))


@pytest.fixture
def small_alloc():
    """Scaled-down two-numerology layout for fast Monte-Carlo checks."""
    n1 = make_numerology(0, 15.0, 256, 1 / 16)
    n2 = make_numerology(1, 15.0, 256, 1 / 16)
    return build_allocation(n1, n2, make_ues(1, [0, 2, 1], 8), make_ues(2, [3, 0, 1], 8))


ACCEPTANCE_LINES = []


def record(number, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
