"""Mover/Eater deception game on an integer grid.

Deterministic game engine, the equilibrium strategy pair with its closed-form
outcome, and brute-force best-response search that certifies the
equilibrium on bounded instances.
"""

from .engine import (
    ConsumptionVector,
    EaterAction,
    EaterView,
    GameState,
    HorizonExceeded,
    MoverView,
    Transcript,
    advance,
    eater_payoff,
    is_terminal,
    outcome,
    play,
)
from .errors import BoundsExceeded
from .geometry import (
    GoalPair,
    GridPosition,
    MoveClass,
    MoveDirection,
    Region,
    StepCounts,
    classify_move,
    delta_distance,
    manhattan,
    region_of,
    step_counts,
)
from .kernels import BACKEND
from .oracle import eater_best_response, mover_best_response, verify_equilibrium
from .strategies import (
    PathInvalid,
    build_exaggeration_path,
    build_explicit_first_path,
    equilibrium_eater,
    equilibrium_mover,
    half_half_eater,
    scripted_mover,
)
from .value import (
    eater_equilibrium_value,
    equilibrium_value,
    value_of_information,
)

__version__ = "0.1.0"
