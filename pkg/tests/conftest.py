import sys

import pytest
from hypothesis import strategies as st

from mover_eater.engine import ConsumptionVector
from mover_eater.geometry import GoalPair, GridPosition


def P(x, y):
    return GridPosition(x, y)


@pytest.fixture
def line_goals():
    return GoalPair(P(0, 0), P(4, 0))


@pytest.fixture
def offset_goals():
    return GoalPair(P(2, 0), P(6, 0))


@pytest.fixture
def zero():
    return ConsumptionVector()


coords = st.integers(min_value=-12, max_value=12)
positions = st.builds(GridPosition, coords, coords)


@st.composite
def goal_pairs(draw):
    g1 = draw(positions)
    g2 = draw(positions.filter(lambda g: g != g1))
    return GoalPair(g1, g2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
