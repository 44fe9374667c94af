"""JSON-lines persistence for transcripts.

The first line is a header holding the initial state; every following line
is one timestep with the fields
``t, mover_action, move_class, eater_action, b1_half, b2_half, x, y``
(consumption and position *after* the step).
"""

from __future__ import annotations

import json
from typing import IO, Iterable

from .engine import (
    ConsumptionVector,
    EaterAction,
    GameState,
    Transcript,
    TranscriptStep,
)
from .geometry import GoalPair, GridPosition, MoveClass, MoveDirection

STEP_FIELDS = ("t", "mover_action", "move_class", "eater_action", "b1_half", "b2_half", "x", "y")


def header_record(state: GameState) -> dict:
    return {
        "initial": {
            "goals": [list(state.goals.g1.as_tuple()), list(state.goals.g2.as_tuple())],
            "start": list(state.position.as_tuple()),
            "b0_half": list(state.consumption.as_tuple()),
            "true_goal": state.true_goal,
            "clock": state.clock,
        }
    }


def step_record(t: int, step: TranscriptStep) -> dict:
    return {
        "t": t,
        "mover_action": step.mover_action.value,
        "move_class": step.move_class.value,
        "eater_action": step.eater_action.value,
        "b1_half": step.consumption_after.b1,
        "b2_half": step.consumption_after.b2,
        "x": step.position_after.x,
        "y": step.position_after.y,
    }


def transcript_to_records(tr: Transcript) -> list[dict]:
    return [header_record(tr.initial)] + [step_record(t, s) for t, s in enumerate(tr.steps)]


def write_transcript(tr: Transcript, fh: IO[str]) -> None:
    for rec in transcript_to_records(tr):
        fh.write(json.dumps(rec, sort_keys=False) + "\n")


def _state_from_header(h: dict) -> GameState:
    (g1x, g1y), (g2x, g2y) = h["goals"]
    return GameState(
        position=GridPosition(*h["start"]),
        consumption=ConsumptionVector(*h["b0_half"]),
        goals=GoalPair(GridPosition(g1x, g1y), GridPosition(g2x, g2y)),
        true_goal=int(h["true_goal"]),
        clock=int(h.get("clock", 0)),
    )


def transcript_from_records(records: Iterable[dict]) -> Transcript:
    records = list(records)
    if not records or "initial" not in records[0]:
        raise ValueError("transcript is missing its header line")
    initial = _state_from_header(records[0]["initial"])
    steps = []
    for expected_t, rec in enumerate(records[1:]):
        missing = [f for f in STEP_FIELDS if f not in rec]
        if missing:
            raise ValueError(f"step {expected_t} is missing fields {missing}")
        if rec["t"] != expected_t:
            raise ValueError(f"expected t={expected_t}, found t={rec['t']}")
        steps.append(
            TranscriptStep(
                mover_action=MoveDirection(rec["mover_action"]),
                move_class=MoveClass(rec["move_class"]),
                eater_action=EaterAction(rec["eater_action"]),
                consumption_after=ConsumptionVector(rec["b1_half"], rec["b2_half"]),
                position_after=GridPosition(rec["x"], rec["y"]),
            )
        )
    return Transcript(initial, tuple(steps))


def read_transcript(fh: IO[str]) -> Transcript:
    return transcript_from_records(json.loads(line) for line in fh if line.strip())
