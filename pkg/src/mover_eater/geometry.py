"""Integer grid arithmetic for the two-goal Mover/Eater game.

Everything here is exact integer math on an unbounded lattice. Axes are
fixed as Up = +y, Down = -y, Left = -x, Right = +x.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple


@dataclass(frozen=True, order=True)
class GridPosition:
    x: int
    y: int

    def step(self, direction: MoveDirection) -> GridPosition:
        return GridPosition(self.x + direction.dx, self.y + direction.dy)

    def as_tuple(self) -> tuple[int, int]:
        return (self.x, self.y)


class MoveDirection(Enum):
    """The four Mover actions, declared in tie-break priority order."""

    UP = "Up"
    DOWN = "Down"
    LEFT = "Left"
    RIGHT = "Right"

    @property
    def dx(self) -> int:
        return _DELTAS[self][0]

    @property
    def dy(self) -> int:
        return _DELTAS[self][1]

    @property
    def code(self) -> int:
        """Small integer index used by the enumeration kernels."""
        return _CODES[self]

    @classmethod
    def from_code(cls, code: int) -> MoveDirection:
        return DIRECTIONS[code]

    @classmethod
    def parse(cls, text: str) -> MoveDirection:
        key = text.strip().lower()
        for d in cls:
            if d.value.lower() == key or d.value[0].lower() == key:
                return d
        raise ValueError(f"unknown move direction {text!r}")


_DELTAS = {
    MoveDirection.UP: (0, 1),
    MoveDirection.DOWN: (0, -1),
    MoveDirection.LEFT: (-1, 0),
    MoveDirection.RIGHT: (1, 0),
}
DIRECTIONS: tuple[MoveDirection, ...] = tuple(MoveDirection)
_CODES = {d: i for i, d in enumerate(DIRECTIONS)}


@dataclass(frozen=True)
class GoalPair:
    g1: GridPosition
    g2: GridPosition

    def __post_init__(self) -> None:
        if self.g1 == self.g2:
            raise ValueError("goals must be distinct")

    @property
    def separation(self) -> int:
        """Manhattan distance D between the two goals."""
        return manhattan(self.g1, self.g2)

    def goal(self, i: int) -> GridPosition:
        if i == 1:
            return self.g1
        if i == 2:
            return self.g2
        raise ValueError(f"goal index must be 1 or 2, got {i!r}")

    def distances(self, p: GridPosition) -> tuple[int, int]:
        return manhattan(p, self.g1), manhattan(p, self.g2)

    @property
    def bounds(self) -> tuple[int, int, int, int]:
        """(xmin, xmax, ymin, ymax) of the goals' bounding rectangle."""
        return (
            min(self.g1.x, self.g2.x),
            max(self.g1.x, self.g2.x),
            min(self.g1.y, self.g2.y),
            max(self.g1.y, self.g2.y),
        )


class MoveClass(Enum):
    AMBIGUOUS = "ambiguous"
    EXPLICIT_1 = "explicit:1"
    EXPLICIT_2 = "explicit:2"

    @property
    def is_ambiguous(self) -> bool:
        return self is MoveClass.AMBIGUOUS

    @property
    def toward(self) -> int | None:
        """Goal index an explicit move approaches; None for ambiguous moves."""
        if self is MoveClass.EXPLICIT_1:
            return 1
        if self is MoveClass.EXPLICIT_2:
            return 2
        return None

    @classmethod
    def explicit(cls, i: int) -> MoveClass:
        return cls.EXPLICIT_1 if i == 1 else cls.EXPLICIT_2


class Region(Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"


class StepCounts(NamedTuple):
    n_ambiguous: int
    n_explicit_1: int
    n_explicit_2: int

    def explicit(self, i: int) -> int:
        return self.n_explicit_1 if i == 1 else self.n_explicit_2


def manhattan(a: GridPosition, b: GridPosition) -> int:
    return abs(a.x - b.x) + abs(a.y - b.y)


def delta_distance(p: GridPosition, direction: MoveDirection, g: GridPosition) -> int:
    """Change in distance to ``g`` caused by moving once from ``p``; always +1 or -1."""
    return manhattan(p.step(direction), g) - manhattan(p, g)


def classify_move(p: GridPosition, direction: MoveDirection, goals: GoalPair) -> MoveClass:
    dd1 = delta_distance(p, direction, goals.g1)
    dd2 = delta_distance(p, direction, goals.g2)
    if dd1 == dd2:
        return MoveClass.AMBIGUOUS
    return MoveClass.EXPLICIT_1 if dd1 < dd2 else MoveClass.EXPLICIT_2


def region_of(p: GridPosition, goals: GoalPair) -> Region:
    xmin, xmax, ymin, ymax = goals.bounds
    x_in = xmin <= p.x <= xmax
    y_in = ymin <= p.y <= ymax
    if x_in and y_in:
        return Region.R1
    if not x_in and not y_in:
        return Region.R3
    return Region.R2


def distance_to_rectangle(p: GridPosition, goals: GoalPair) -> int:
    xmin, xmax, ymin, ymax = goals.bounds
    return max(xmin - p.x, 0, p.x - xmax) + max(ymin - p.y, 0, p.y - ymax)


def step_counts(p: GridPosition, goals: GoalPair) -> StepCounts:
    """Minimum ambiguous and per-goal explicit move counts from ``p``."""
    d1, d2 = goals.distances(p)
    sep = goals.separation
    return StepCounts(
        n_ambiguous=(d1 + d2 - sep) // 2,
        n_explicit_1=(d1 - d2 + sep) // 2,
        n_explicit_2=(d2 - d1 + sep) // 2,
    )
