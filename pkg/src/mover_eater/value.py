"""Consumption-plus-distance bookkeeping and the closed-form equilibrium outcome.

All quantities are integer half-bananas. A unit of grid distance is worth
one banana, i.e. two half-units.
"""

from __future__ import annotations

from .engine import ConsumptionVector, EaterView
from .geometry import GoalPair, GridPosition, manhattan, step_counts


def sgn(v: int) -> int:
    return (v > 0) - (v < 0)


def c_plus(b_i: int, d_i: int) -> int:
    """Complete-information value for one goal: b_i + d_i, in half-units."""
    return b_i + 2 * d_i


def c_hat(b_i: int, d_i_next: int) -> int:
    """Same as :func:`c_plus` but with the distance measured after the Mover's move."""
    return b_i + 2 * d_i_next


def c_factors(p: GridPosition, b: ConsumptionVector, goals: GoalPair) -> tuple[int, int]:
    d1, d2 = goals.distances(p)
    return c_plus(b.b1, d1), c_plus(b.b2, d2)


def delta_c(p: GridPosition, b: ConsumptionVector, goals: GoalPair, i: int) -> int:
    c1, c2 = c_factors(p, b, goals)
    return c1 - c2 if i == 1 else c2 - c1


def delta_c_hat(view: EaterView, i: int) -> int:
    q = view.new_position
    b = view.consumption
    h1 = c_hat(b.b1, manhattan(q, view.goals.g1))
    h2 = c_hat(b.b2, manhattan(q, view.goals.g2))
    return h1 - h2 if i == 1 else h2 - h1


def equilibrium_value(p: GridPosition, b: ConsumptionVector, goals: GoalPair, i: int) -> int:
    """Consumption at goal ``i`` when both sides play the equilibrium pair from (p, b).

    Requires b1 - b2 to be a whole number of bananas, which holds for any
    state reachable from whole-banana initial consumption.
    """
    if (b.b1 - b.b2) % 2:
        raise ValueError("closed form needs a whole-banana consumption difference")
    c_i = c_factors(p, b, goals)[i - 1]
    dc = delta_c(p, b, goals, i)
    n_a = step_counts(p, goals).n_ambiguous
    # Compare n_a <= |dc| in bananas; dc is in half-units.
    if 2 * n_a <= abs(dc):
        return c_i - n_a * (1 + sgn(dc))
    return c_i - n_a - dc // 2


def equilibrium_values(p: GridPosition, b: ConsumptionVector, goals: GoalPair) -> tuple[int, int]:
    return equilibrium_value(p, b, goals, 1), equilibrium_value(p, b, goals, 2)


def eater_equilibrium_value(p: GridPosition, b: ConsumptionVector, goals: GoalPair) -> int:
    return min(equilibrium_values(p, b, goals))


def value_of_information(p: GridPosition, b: ConsumptionVector, goals: GoalPair, i: int) -> int:
    """How much hiding the true goal saves the Mover relative to c_i."""
    return c_factors(p, b, goals)[i - 1] - equilibrium_value(p, b, goals, i)
