import math

import numpy as np
import pytest
from hypothesis import strategies as st

from sp4exp.expmap import Generator, lie_matrix
from sp4exp.linalg import inf_norm


def series_sum(lam, offset, terms=60):
    """Reference ``sum_n lam^n / (2n + offset)!`` with exact factorials."""
    return math.fsum(lam**n / math.factorial(2 * n + offset) for n in range(terms))


def capped(g, cap):
    norm = inf_norm(lie_matrix(g))
    return g if norm <= cap else g.scaled(cap / norm)


def random_generators(rng, count, cap=3.0):
    return [capped(Generator.from_params(rng.uniform(-1, 1, 10)), cap) for _ in range(count)]


finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
generators = st.lists(finite, min_size=10, max_size=10).map(Generator.from_params)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
