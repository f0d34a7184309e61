import random

import pytest

from pwapprox.gen import gen_random_connected

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[c]
        terminalreporter.write_line(f"criterion {c}: {'PASS' if passed else 'FAIL'}  {detail}")


def sandwich_instances(count: int = 510):
    """Seeded random connected graphs, 4 <= n <= 11, p in {0.2, 0.35, 0.5}."""
    out = []
    for i in range(count):
        rng = random.Random(1000 + i)
        n = rng.randint(4, 11)
        p = (0.2, 0.35, 0.5)[i % 3]
        out.append((n, p, gen_random_connected(n, p, seed=1000 + i)))
    return out


@pytest.fixture(scope="session")
def sandwich_corpus():
    return sandwich_instances()
