import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dehntetra.geometry import is_nondegenerate

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile("default")

T16 = (17, 15, 17, 15, 16, 6)
# the two tuples of the worked appendix example, reordered from the
# lexicographic edge order (12, 13, 14, 23, 24, 34) into (12, 34, 13, 24, 14, 23)
APPENDIX_LEX = ((13, 16, 14, 16, 8, 12), (13, 13, 11, 19, 12, 11))
APPENDIX = ((13, 12, 16, 8, 14, 16), (13, 11, 13, 12, 11, 19))
H1_HALF = (11, 11, 12, 11, 13, 13)


def valid_tuples(max_edge: int = 30):
    return st.tuples(*[st.integers(1, max_edge)] * 6).filter(is_nondegenerate)


def random_valid_tuples(n: int, max_edge: int = 30, seed: int = 0) -> list[tuple]:
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        t = tuple(rng.randint(1, max_edge) for _ in range(6))
        if is_nondegenerate(t):
            out.append(t)
    return out


@pytest.fixture
def t16():
    return T16


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
