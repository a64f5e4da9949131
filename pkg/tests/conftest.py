import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from wtopo import dmetric
from wtopo.weights import INF

DATA = Path(__file__).resolve().parent.parent / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def data_dir():
    return DATA


def random_space(rng: random.Random, n: int, den: int = 4, p_inf: float = 0.3, labels=None):
    """Random valid delta space: random arcs closed under shortest paths."""
    rows = [[Fraction(0) if i == j else (INF if rng.random() < p_inf else Fraction(rng.randint(0, 3 * den), den))
             for j in range(n)] for i in range(n)]
    closed = dmetric.shortest_paths(rows)
    pts = labels or [str(i) for i in range(n)]
    return dmetric.FiniteDeltaSpace(tuple(pts), closed)


weights = st.one_of(st.just(INF), st.fractions(min_value=0, max_value=5, max_denominator=6))


@st.composite
def spaces(draw, min_size=1, max_size=4):
    n = draw(st.integers(min_size, max_size))
    rows = [[Fraction(0) if i == j else draw(weights) for j in range(n)] for i in range(n)]
    return dmetric.FiniteDeltaSpace(tuple(str(i) for i in range(n)), dmetric.shortest_paths(rows))


# acceptance lines, printed once at the end of the run
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
