"""Game state machine: Mover moves, Eater eats, repeat until the true goal.

Consumption is tracked in integer half-bananas throughout; one Eater action
always adds exactly two half-units.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterator

from .geometry import (
    GoalPair,
    GridPosition,
    MoveClass,
    MoveDirection,
    classify_move,
    step_counts,
)

HORIZON_MARGIN = 32


class HorizonExceeded(RuntimeError):
    """The Mover failed to reach the true goal within the step cap."""


class IllegalAction(ValueError):
    pass


class GameOver(ValueError):
    """Raised when stepping a state that is already terminal."""


class EaterAction(Enum):
    EAT_G1 = "EatG1"
    EAT_G2 = "EatG2"
    EAT_HALF = "EatHalf"

    @property
    def increment(self) -> tuple[int, int]:
        return _INCREMENTS[self]

    @classmethod
    def eat(cls, i: int) -> EaterAction:
        return cls.EAT_G1 if i == 1 else cls.EAT_G2


_INCREMENTS = {
    EaterAction.EAT_G1: (2, 0),
    EaterAction.EAT_G2: (0, 2),
    EaterAction.EAT_HALF: (1, 1),
}
EATER_ACTIONS: tuple[EaterAction, ...] = tuple(EaterAction)


@dataclass(frozen=True)
class ConsumptionVector:
    """Per-goal consumption in half-bananas."""

    b1: int = 0
    b2: int = 0

    def __post_init__(self) -> None:
        if self.b1 < 0 or self.b2 < 0:
            raise ValueError("consumption must be non-negative")

    @classmethod
    def from_bananas(cls, b1: int, b2: int) -> ConsumptionVector:
        return cls(2 * b1, 2 * b2)

    def get(self, i: int) -> int:
        if i == 1:
            return self.b1
        if i == 2:
            return self.b2
        raise ValueError(f"goal index must be 1 or 2, got {i!r}")

    def add(self, action: EaterAction) -> ConsumptionVector:
        d1, d2 = action.increment
        return ConsumptionVector(self.b1 + d1, self.b2 + d2)

    @property
    def total(self) -> int:
        return self.b1 + self.b2

    def as_tuple(self) -> tuple[int, int]:
        return (self.b1, self.b2)


@dataclass(frozen=True)
class MoverView:
    position: GridPosition
    consumption: ConsumptionVector
    true_goal: int
    goals: GoalPair
    # Step index; only scripted (open-loop) movers read it.
    clock: int = 0


@dataclass(frozen=True)
class EaterView:
    prev_position: GridPosition
    new_position: GridPosition
    last_mover_action: MoveDirection
    consumption: ConsumptionVector
    goals: GoalPair

    def observation(self) -> tuple:
        """Hashable form of what the Eater sees this step."""
        return (
            self.prev_position.as_tuple(),
            self.new_position.as_tuple(),
            self.last_mover_action,
            self.consumption.as_tuple(),
        )


MoverStrategy = Callable[[MoverView], MoveDirection]
EaterStrategy = Callable[[EaterView], EaterAction]


@dataclass(frozen=True)
class GameState:
    position: GridPosition
    consumption: ConsumptionVector
    goals: GoalPair
    true_goal: int
    clock: int = 0

    def __post_init__(self) -> None:
        if self.true_goal not in (1, 2):
            raise ValueError(f"true_goal must be 1 or 2, got {self.true_goal!r}")

    @property
    def goal_position(self) -> GridPosition:
        return self.goals.goal(self.true_goal)

    def mover_view(self) -> MoverView:
        return MoverView(self.position, self.consumption, self.true_goal, self.goals, self.clock)


@dataclass(frozen=True)
class TranscriptStep:
    mover_action: MoveDirection
    move_class: MoveClass
    eater_action: EaterAction
    consumption_after: ConsumptionVector
    position_after: GridPosition


@dataclass(frozen=True)
class Transcript:
    initial: GameState
    steps: tuple[TranscriptStep, ...] = field(default_factory=tuple)

    @property
    def terminal_time(self) -> int:
        return len(self.steps)

    @property
    def final_consumption(self) -> ConsumptionVector:
        return self.steps[-1].consumption_after if self.steps else self.initial.consumption

    @property
    def final_position(self) -> GridPosition:
        return self.steps[-1].position_after if self.steps else self.initial.position

    def mover_actions(self) -> list[MoveDirection]:
        return [s.mover_action for s in self.steps]

    def eater_actions(self) -> list[EaterAction]:
        return [s.eater_action for s in self.steps]

    def states(self) -> Iterator[GameState]:
        """Yield every recorded state, initial state first."""
        state = self.initial
        yield state
        for s in self.steps:
            state = replace(
                state,
                position=s.position_after,
                consumption=s.consumption_after,
                clock=state.clock + 1,
            )
            yield state

    def replay(self) -> GameState:
        """Re-apply the recorded actions and check every intermediate state.

        Returns the final state; raises ``ValueError`` on any mismatch.
        """
        state = self.initial
        for t, s in enumerate(self.steps):
            if is_terminal(state):
                raise ValueError(f"transcript continues past termination at t={t}")
            state, step = apply_actions(state, s.mover_action, s.eater_action)
            if step != s:
                raise ValueError(f"replay mismatch at t={t}: {step} != {s}")
        if not is_terminal(state):
            raise ValueError("transcript does not end at the true goal")
        return state


def is_terminal(state: GameState) -> bool:
    return state.position == state.goal_position


def apply_actions(
    state: GameState, mover_action: MoveDirection, eater_action: EaterAction
) -> tuple[GameState, TranscriptStep]:
    if is_terminal(state):
        raise GameOver("cannot advance a terminal state")
    if not isinstance(mover_action, MoveDirection):
        raise IllegalAction(f"not a Mover action: {mover_action!r}")
    if not isinstance(eater_action, EaterAction):
        raise IllegalAction(f"not an Eater action: {eater_action!r}")
    new_position = state.position.step(mover_action)
    consumption = state.consumption.add(eater_action)
    step = TranscriptStep(
        mover_action=mover_action,
        move_class=classify_move(state.position, mover_action, state.goals),
        eater_action=eater_action,
        consumption_after=consumption,
        position_after=new_position,
    )
    nxt = replace(state, position=new_position, consumption=consumption, clock=state.clock + 1)
    return nxt, step


def advance(
    state: GameState, mover: MoverStrategy, eater: EaterStrategy
) -> tuple[GameState, TranscriptStep]:
    """Play one full timestep: Mover action, then the Eater's response."""
    if is_terminal(state):
        raise GameOver("cannot advance a terminal state")
    mover_action = mover(state.mover_view())
    if not isinstance(mover_action, MoveDirection):
        raise IllegalAction(f"not a Mover action: {mover_action!r}")
    view = EaterView(
        prev_position=state.position,
        new_position=state.position.step(mover_action),
        last_mover_action=mover_action,
        consumption=state.consumption,
        goals=state.goals,
    )
    return apply_actions(state, mover_action, eater(view))


def default_horizon_cap(position: GridPosition, goals: GoalPair) -> int:
    counts = step_counts(position, goals)
    return counts.n_ambiguous + max(counts.n_explicit_1, counts.n_explicit_2) + HORIZON_MARGIN


def play(
    initial: GameState,
    mover: MoverStrategy,
    eater: EaterStrategy,
    horizon_cap: int | None = None,
) -> Transcript:
    if horizon_cap is None:
        horizon_cap = default_horizon_cap(initial.position, initial.goals)
    if horizon_cap < 1:
        raise ValueError("horizon_cap must be positive")
    state = initial
    steps: list[TranscriptStep] = []
    while not is_terminal(state):
        if len(steps) >= horizon_cap:
            raise HorizonExceeded(
                f"Mover did not reach goal {initial.true_goal} within {horizon_cap} steps"
            )
        state, step = advance(state, mover, eater)
        steps.append(step)
    return Transcript(initial, tuple(steps))


def outcome(transcript: Transcript, i: int) -> int:
    return transcript.final_consumption.get(i)


def eater_payoff(tr1: Transcript, tr2: Transcript) -> int:
    """Worst case over the two games: min(b_1(T) in game 1, b_2(T) in game 2)."""
    a, b = tr1.initial, tr2.initial
    if a.true_goal != 1 or b.true_goal != 2:
        raise ValueError("expected a game-1 transcript and a game-2 transcript")
    if (a.position, a.consumption, a.goals, a.clock) != (b.position, b.consumption, b.goals, b.clock):
        raise ValueError("transcripts start from different initial conditions")
    return min(outcome(tr1, 1), outcome(tr2, 2))
