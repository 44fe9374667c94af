"""Mover and Eater policies.

A Mover strategy is any callable ``MoverView -> MoveDirection`` and an Eater
strategy any callable ``EaterView -> EaterAction``. Ties between equally good
directions are broken by the fixed order Up > Down > Left > Right.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .engine import (
    EaterAction,
    EaterStrategy,
    EaterView,
    MoverStrategy,
    MoverView,
)
from .geometry import (
    DIRECTIONS,
    GoalPair,
    GridPosition,
    MoveClass,
    MoveDirection,
    classify_move,
    delta_distance,
    step_counts,
)
from .value import delta_c_hat


class PathInvalid(ValueError):
    pass


class ExaggerationUnavailable(ValueError):
    """No explicit move toward the fake goal exists where one was requested."""


def consumption_blind(fn):
    """Mark a Mover strategy whose choice never depends on the consumption vector.

    The oracle uses the mark to skip enumerating Eater actions once the two
    games' observation streams have split.
    """
    fn.consumption_blind = True
    return fn


def is_consumption_blind(strategy) -> bool:
    return bool(getattr(strategy, "consumption_blind", False))


def _ambiguous_approach(p: GridPosition, goals: GoalPair) -> MoveDirection | None:
    for d in DIRECTIONS:
        if delta_distance(p, d, goals.g1) < 0 and delta_distance(p, d, goals.g2) < 0:
            return d
    return None


def _explicit_toward(p: GridPosition, goals: GoalPair, i: int) -> MoveDirection | None:
    target = MoveClass.explicit(i)
    for d in DIRECTIONS:
        if classify_move(p, d, goals) is target:
            return d
    return None


def _equilibrium_move(p: GridPosition, goals: GoalPair, true_goal: int) -> MoveDirection:
    if p == goals.goal(true_goal):
        raise ValueError("Mover is already at the true goal")
    if step_counts(p, goals).n_ambiguous > 0:
        d = _ambiguous_approach(p, goals)
    else:
        d = _explicit_toward(p, goals, true_goal)
    assert d is not None
    return d


@consumption_blind
def equilibrium_mover(view: MoverView) -> MoveDirection:
    """Shortest path to the true goal, spending every ambiguous move first."""
    return _equilibrium_move(view.position, view.goals, view.true_goal)


def equilibrium_eater(view: EaterView) -> EaterAction:
    cls = classify_move(view.prev_position, view.last_mover_action, view.goals)
    if not cls.is_ambiguous:
        return EaterAction.eat(cls.toward)
    # Conservative: eat where consumption-plus-distance is lower.
    dc = delta_c_hat(view, 1)
    if dc < 0:
        return EaterAction.EAT_G1
    if dc > 0:
        return EaterAction.EAT_G2
    return EaterAction.EAT_HALF


def half_half_eater(view: EaterView) -> EaterAction:
    """Exploits explicit moves, but always splits after ambiguous ones."""
    cls = classify_move(view.prev_position, view.last_mover_action, view.goals)
    if cls.is_ambiguous:
        return EaterAction.EAT_HALF
    return EaterAction.eat(cls.toward)


@dataclass(frozen=True)
class ScriptedMover:
    """Replays a fixed direction sequence by step index."""

    path: tuple[MoveDirection, ...]
    consumption_blind = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "path", tuple(self.path))

    def __call__(self, view: MoverView) -> MoveDirection:
        if view.clock >= len(self.path):
            raise PathInvalid(
                f"path of length {len(self.path)} exhausted before reaching the true goal"
            )
        return self.path[view.clock]

    def validate(self, start: GridPosition, goal: GridPosition) -> None:
        walk_path(start, self.path, goal)


def scripted_mover(
    path: Sequence[MoveDirection],
    start: GridPosition | None = None,
    goal: GridPosition | None = None,
) -> ScriptedMover:
    mover = ScriptedMover(path)
    if start is not None and goal is not None:
        mover.validate(start, goal)
    return mover


def walk_path(start: GridPosition, path: Sequence[MoveDirection], goal: GridPosition) -> list[GridPosition]:
    """Return visited positions; raise PathInvalid unless the path ends at ``goal``
    and touches it nowhere earlier."""
    p = start
    visited = [p]
    for t, d in enumerate(path):
        if p == goal:
            raise PathInvalid(f"path reaches the goal early, at step {t}")
        p = p.step(d)
        visited.append(p)
    if p != goal:
        raise PathInvalid(f"path ends at {p.as_tuple()}, not at goal {goal.as_tuple()}")
    return visited


def _walk(p: GridPosition, choose: Callable[[GridPosition], MoveDirection], goal: GridPosition) -> list[MoveDirection]:
    path = []
    while p != goal:
        d = choose(p)
        path.append(d)
        p = p.step(d)
    return path


def equilibrium_path(p0: GridPosition, goals: GoalPair, true_goal: int) -> list[MoveDirection]:
    return _walk(p0, lambda p: _equilibrium_move(p, goals, true_goal), goals.goal(true_goal))


def build_explicit_first_path(p0: GridPosition, goals: GoalPair, true_goal: int) -> list[MoveDirection]:
    """Shortest path taking each explicit move toward the true goal as soon as one exists."""

    def choose(p: GridPosition) -> MoveDirection:
        d = _explicit_toward(p, goals, true_goal)
        if d is None:
            d = _ambiguous_approach(p, goals)
        assert d is not None
        return d

    return _walk(p0, choose, goals.goal(true_goal))


def build_exaggeration_path(
    p0: GridPosition, goals: GoalPair, true_goal: int, k: int
) -> list[MoveDirection]:
    """``k`` explicit moves toward the fake goal, then the equilibrium path."""
    if k < 0:
        raise ValueError("exaggeration depth must be non-negative")
    fake = 3 - true_goal
    path = []
    p = p0
    for j in range(k):
        d = _explicit_toward(p, goals, fake)
        if d is None:
            raise ExaggerationUnavailable(
                f"no explicit move toward goal {fake} from {p.as_tuple()} (move {j + 1} of {k})"
            )
        path.append(d)
        p = p.step(d)
    return path + equilibrium_path(p, goals, true_goal)


# --- name binding for configs and the CLI ---------------------------------

MOVER_NAMES = ("equilibrium", "explicit_first", "exaggeration:k", "path:[...]")
EATER_NAMES = ("equilibrium", "half_half")

_EATERS: dict[str, EaterStrategy] = {
    "equilibrium": equilibrium_eater,
    "half_half": half_half_eater,
}


def make_eater(name: str) -> EaterStrategy:
    try:
        return _EATERS[name.strip()]
    except KeyError:
        raise ValueError(f"unknown Eater strategy {name!r}; expected one of {EATER_NAMES}") from None


def parse_path(text: str) -> list[MoveDirection]:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    return [MoveDirection.parse(tok) for tok in re.split(r"[,\s]+", body) if tok]


def make_mover(name: str, start: GridPosition, goals: GoalPair, true_goal: int) -> MoverStrategy:
    """Bind a Mover strategy name to a concrete policy for one game."""
    name = name.strip()
    if name == "equilibrium":
        return equilibrium_mover
    if name == "explicit_first":
        return ScriptedMover(build_explicit_first_path(start, goals, true_goal))
    if name.startswith("exaggeration:"):
        k = int(name.split(":", 1)[1])
        return ScriptedMover(build_exaggeration_path(start, goals, true_goal, k))
    if name.startswith("path:"):
        return ScriptedMover(parse_path(name.split(":", 1)[1]))
    raise ValueError(f"unknown Mover strategy {name!r}; expected one of {MOVER_NAMES}")
