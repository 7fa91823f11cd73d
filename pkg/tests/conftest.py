import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from kpancake import ColouredPermutation, parse

DATA = Path(__file__).parent / "data"


def P(text, k):
    return parse(text, k)


@st.composite
def coloured_perms(draw, max_n=7, max_k=5):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_k))
    values = draw(st.permutations(range(1, n + 1)))
    colours = draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    return ColouredPermutation(tuple(values), tuple(colours), k)


def random_perm(rng: random.Random, n, k):
    values = list(range(1, n + 1))
    rng.shuffle(values)
    return ColouredPermutation(tuple(values), tuple(rng.randrange(k) for _ in range(n)), k)


@pytest.fixture(scope="session")
def example_3_3():
    perms, flips = [], []
    for line in (DATA / "example_3_3.txt").read_text().splitlines():
        if line.startswith("#"):
            continue
        text, x = line.split("\t")
        perms.append(text)
        flips.append(int(x))
    return perms, flips


ACCEPTANCE: dict[str, tuple[str, bool]] = {}


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion's outcome for the end-of-run summary."""
    def register(key, title):
        ACCEPTANCE[key] = (title, False)
        request.node._criterion = key
    yield register


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    key = getattr(item, "_criterion", None)
    if key is not None and rep.when == "call":
        title, _ = ACCEPTANCE[key]
        ACCEPTANCE[key] = (title, rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda s: int(s[1:])):
        title, ok = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {title}")
