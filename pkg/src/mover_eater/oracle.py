"""Exhaustive best-response search and equilibrium certification.

Deviations are searched over finite spaces only: Mover paths up to the
shortest length plus a slack, and Eater plans over observation histories
(which includes every deterministic memoryless Eater strategy). A search
that would exceed its budget raises :class:`BoundsExceeded` instead of
returning a partial answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import kernels
from .engine import (
    EATER_ACTIONS,
    ConsumptionVector,
    EaterAction,
    EaterStrategy,
    EaterView,
    GameState,
    MoverStrategy,
    Transcript,
    apply_actions,
    default_horizon_cap,
    eater_payoff,
    is_terminal,
    outcome,
    play,
)
from .errors import BoundsExceeded
from .geometry import DIRECTIONS, GoalPair, GridPosition, MoveDirection, manhattan
from .strategies import (
    ExaggerationUnavailable,
    ScriptedMover,
    build_exaggeration_path,
    build_explicit_first_path,
    equilibrium_eater,
    equilibrium_mover,
    half_half_eater,
    is_consumption_blind,
)
from .value import equilibrium_value, equilibrium_values

__all__ = [
    "BoundsExceeded",
    "DeviationReport",
    "EquilibriumReport",
    "play_against_plan",
    "play_scripted",
    "eater_best_response",
    "eater_best_response_bruteforce",
    "mover_best_response",
    "verify_equilibrium",
]

DEFAULT_BUDGET = 5_000_000

_KERNEL_EATERS = {
    equilibrium_eater: kernels.EATER_EQUILIBRIUM,
    half_half_eater: kernels.EATER_HALF_HALF,
}


def play_scripted(initial: GameState, mover_actions: Sequence[MoveDirection], eater_actions: Sequence[EaterAction]) -> Transcript:
    if len(mover_actions) != len(eater_actions):
        raise ValueError("action sequences differ in length")
    state = initial
    steps = []
    for a, e in zip(mover_actions, eater_actions):
        state, step = apply_actions(state, a, e)
        steps.append(step)
    if not is_terminal(state):
        raise ValueError("scripted actions do not reach the true goal")
    return Transcript(initial, tuple(steps))


def play_against_plan(initial: GameState, mover: MoverStrategy, eater_actions: Sequence[EaterAction]) -> Transcript:
    """Play ``mover`` while the Eater follows a fixed per-step action list."""
    state = initial
    steps = []
    while not is_terminal(state):
        if len(steps) >= len(eater_actions):
            raise ValueError("Eater plan shorter than the game")
        a = mover(state.mover_view())
        state, step = apply_actions(state, a, eater_actions[len(steps)])
        steps.append(step)
    return Transcript(initial, tuple(steps))


@dataclass
class DeviationReport:
    deviator: str
    checked_count: int
    best_deviation_payoff: int
    equilibrium_payoff: int
    witness: tuple[Transcript, ...] | None = None
    bounds: dict = field(default_factory=dict)

    @property
    def improves(self) -> bool:
        if self.deviator == "eater":
            return self.best_deviation_payoff > self.equilibrium_payoff
        return self.best_deviation_payoff < self.equilibrium_payoff

    def to_dict(self) -> dict:
        from .serialize import transcript_to_records

        return {
            "deviator": self.deviator,
            "checked_count": self.checked_count,
            "best_deviation_payoff_half": self.best_deviation_payoff,
            "equilibrium_payoff_half": self.equilibrium_payoff,
            "improving_deviation": self.improves,
            "bounds": dict(self.bounds),
            "witness": None
            if self.witness is None
            else [transcript_to_records(tr) for tr in self.witness],
        }


def _initial_pair(p0: GridPosition, b0: ConsumptionVector, goals: GoalPair) -> tuple[GameState, GameState]:
    return GameState(p0, b0, goals, 1), GameState(p0, b0, goals, 2)


# --- Eater side --------------------------------------------------------------


def eater_best_response(
    p0: GridPosition,
    b0: ConsumptionVector,
    goals: GoalPair,
    mover_pair: tuple[MoverStrategy, MoverStrategy] = (equilibrium_mover, equilibrium_mover),
    eater: EaterStrategy = equilibrium_eater,
    budget: int = DEFAULT_BUDGET,
    horizon_cap: int | None = None,
) -> DeviationReport:
    """Maximise the worst case over both games against a fixed Mover pair.

    ``eater`` is the candidate whose payoff the maximum is compared with.
    """
    s1, s2 = _initial_pair(p0, b0, goals)
    cap = horizon_cap if horizon_cap is not None else default_horizon_cap(p0, goals)
    m1, m2 = mover_pair
    tr1, tr2 = play(s1, m1, eater, cap), play(s2, m2, eater, cap)
    candidate = eater_payoff(tr1, tr2)

    if is_consumption_blind(m1) and is_consumption_blind(m2):
        moves1 = [a.code for a in tr1.mover_actions()]
        moves2 = [a.code for a in tr2.mover_actions()]
        count, best, seq1, seq2 = kernels.eater_prefix_search(b0.b1, b0.b2, moves1, moves2, budget)
        plan1 = [EATER_ACTIONS[c] for c in seq1]
        plan2 = [EATER_ACTIONS[c] for c in seq2]
        method = "shared-prefix"
    else:
        search = _JointEaterSearch(m1, m2, budget, cap)
        best, plan1, plan2 = search.joint(s1, s2)
        count = search.count
        method = "full-tree"

    report = DeviationReport(
        deviator="eater",
        checked_count=count,
        best_deviation_payoff=best,
        equilibrium_payoff=candidate,
        bounds={"budget": budget, "horizon_cap": cap, "method": method, "backend": kernels.BACKEND},
    )
    if report.improves:
        report.witness = (play_against_plan(s1, m1, plan1), play_against_plan(s2, m2, plan2))
    return report


class _JointEaterSearch:
    """History-dependent Eater search against arbitrary deterministic Movers."""

    def __init__(self, m1: MoverStrategy, m2: MoverStrategy, budget: int, cap: int) -> None:
        self.movers = (m1, m2)
        self.budget = budget
        self.cap = cap
        self.count = 0

    def _leaf(self) -> None:
        self.count += 1
        if self.count > self.budget:
            raise BoundsExceeded(f"more than {self.budget} Eater plans", checked=self.count - 1)

    def _observe(self, state: GameState, mover: MoverStrategy) -> tuple[MoveDirection, tuple]:
        if state.clock >= self.cap:
            raise BoundsExceeded(f"Mover exceeded horizon {self.cap}", checked=self.count)
        a = mover(state.mover_view())
        obs = (state.position, state.position.step(a), a, state.consumption)
        return a, obs

    def single(self, state: GameState, i: int) -> tuple[int, list[EaterAction]]:
        if is_terminal(state):
            self._leaf()
            return state.consumption.get(i), []
        a, _ = self._observe(state, self.movers[i - 1])
        best, plan = None, []
        for e in EATER_ACTIONS:
            nxt, _ = apply_actions(state, a, e)
            v, rest = self.single(nxt, i)
            if best is None or v > best:
                best, plan = v, [e] + rest
        return best, plan

    def joint(self, s1: GameState, s2: GameState) -> tuple[int, list[EaterAction], list[EaterAction]]:
        done1, done2 = is_terminal(s1), is_terminal(s2)
        if done1 and done2:
            self._leaf()
            return min(s1.consumption.b1, s2.consumption.b2), [], []
        if done1:
            v, plan = self.single(s2, 2)
            return min(s1.consumption.b1, v), [], plan
        if done2:
            v, plan = self.single(s1, 1)
            return min(v, s2.consumption.b2), plan, []
        a1, obs1 = self._observe(s1, self.movers[0])
        a2, obs2 = self._observe(s2, self.movers[1])
        if obs1 != obs2:
            v1, p1 = self.single(s1, 1)
            v2, p2 = self.single(s2, 2)
            return min(v1, v2), p1, p2
        best, plan1, plan2 = None, [], []
        for e in EATER_ACTIONS:
            n1, _ = apply_actions(s1, a1, e)
            n2, _ = apply_actions(s2, a2, e)
            v, r1, r2 = self.joint(n1, n2)
            if best is None or v > best:
                best, plan1, plan2 = v, [e] + r1, [e] + r2
        return best, plan1, plan2


def _all_eater_runs(state: GameState, mover: MoverStrategy, cap: int) -> list[tuple[list, list, int]]:
    """Every complete game under ``mover``: (observations, eater actions, payoff)."""
    runs = []

    def rec(s: GameState, obs: list, acts: list) -> None:
        if is_terminal(s):
            runs.append((list(obs), list(acts), s.consumption.get(s.true_goal)))
            return
        if s.clock >= cap:
            raise BoundsExceeded(f"Mover exceeded horizon {cap}")
        a = mover(s.mover_view())
        o = (s.position, s.position.step(a), a, s.consumption)
        for e in EATER_ACTIONS:
            nxt, _ = apply_actions(s, a, e)
            obs.append(o)
            acts.append(e)
            rec(nxt, obs, acts)
            obs.pop()
            acts.pop()

    rec(state, [], [])
    return runs


def eater_best_response_bruteforce(
    p0: GridPosition,
    b0: ConsumptionVector,
    goals: GoalPair,
    mover_pair: tuple[MoverStrategy, MoverStrategy] = (equilibrium_mover, equilibrium_mover),
    max_steps: int = 6,
) -> int:
    """Independent check of :func:`eater_best_response` by raw pairwise enumeration.

    Enumerates all Eater action sequences in each game separately and keeps
    the pairs that agree wherever the observation histories coincide. Only
    for tiny games.
    """
    s1, s2 = _initial_pair(p0, b0, goals)
    runs1 = _all_eater_runs(s1, mover_pair[0], max_steps)
    runs2 = _all_eater_runs(s2, mover_pair[1], max_steps)
    best = None
    for obs1, acts1, v1 in runs1:
        for obs2, acts2, v2 in runs2:
            consistent = True
            for t in range(min(len(obs1), len(obs2))):
                if obs1[t] != obs2[t]:
                    break
                if acts1[t] != acts2[t]:
                    consistent = False
                    break
            if consistent:
                worst = min(v1, v2)
                if best is None or worst > best:
                    best = worst
    return best


# --- Mover side --------------------------------------------------------------


def mover_best_response(
    p0: GridPosition,
    b0: ConsumptionVector,
    goals: GoalPair,
    true_goal: int,
    eater: EaterStrategy = equilibrium_eater,
    slack: int = 2,
    budget: int = DEFAULT_BUDGET,
    mover: MoverStrategy = equilibrium_mover,
) -> DeviationReport:
    """Minimise true-goal consumption over every path of length <= shortest + slack.

    Against a deterministic Eater every deterministic Mover strategy traces
    one such path, so open-loop enumeration covers them all.
    """
    if slack < 0:
        raise ValueError("slack must be non-negative")
    start = GameState(p0, b0, goals, true_goal)
    goal = goals.goal(true_goal)
    max_len = manhattan(p0, goal) + slack
    candidate = outcome(play(start, mover, eater, default_horizon_cap(p0, goals)), true_goal)

    code = _KERNEL_EATERS.get(eater)
    if code is not None:
        count, best, path_codes = kernels.mover_search(
            p0.x, p0.y, b0.b1, b0.b2,
            goals.g1.x, goals.g1.y, goals.g2.x, goals.g2.y,
            true_goal, max_len, code, budget,
        )
        path = [MoveDirection.from_code(c) for c in path_codes]
        method = "kernel"
    else:
        count, best, path = _mover_search_generic(start, eater, max_len, budget)
        method = "generic"

    report = DeviationReport(
        deviator=f"mover:{true_goal}",
        checked_count=count,
        best_deviation_payoff=best,
        equilibrium_payoff=candidate,
        bounds={"slack": slack, "max_len": max_len, "budget": budget, "method": method, "backend": kernels.BACKEND},
    )
    if report.improves:
        report.witness = (play(start, ScriptedMover(path), eater, max(len(path), 1)),)
    return report


def _mover_search_generic(
    start: GameState, eater: EaterStrategy, max_len: int, budget: int
) -> tuple[int, int, list[MoveDirection]]:
    goal = start.goal_position
    if is_terminal(start):
        return 1, start.consumption.get(start.true_goal), []
    count = 0
    best: int | None = None
    best_path: list[MoveDirection] = []
    path: list[MoveDirection] = []

    def rec(s: GameState) -> None:
        nonlocal count, best, best_path
        for d in DIRECTIONS:
            view = EaterView(s.position, s.position.step(d), d, s.consumption, s.goals)
            nxt, _ = apply_actions(s, d, eater(view))
            if is_terminal(nxt):
                count += 1
                if count > budget:
                    raise BoundsExceeded(f"more than {budget} Mover paths", checked=count - 1)
                v = nxt.consumption.get(nxt.true_goal)
                if best is None or v < best:
                    best, best_path = v, [*path, d]
            elif len(path) + 1 + manhattan(nxt.position, goal) <= max_len:
                path.append(d)
                rec(nxt)
                path.pop()

    rec(start)
    if best is None:
        raise ValueError("no goal-reaching path within max_len")
    return count, best, best_path


# --- Certification -----------------------------------------------------------


@dataclass
class EquilibriumReport:
    start: GridPosition
    b0: ConsumptionVector
    goals: GoalPair
    closed_form: tuple[int, int, int]
    payoffs: tuple[int, int, int] | None = None
    game1: DeviationReport | None = None
    game2: DeviationReport | None = None
    eater: DeviationReport | None = None
    inconclusive: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def witnesses(self) -> list[DeviationReport]:
        return [r for r in (self.game1, self.game2, self.eater) if r is not None and r.improves]

    @property
    def passed(self) -> bool:
        return (
            not self.inconclusive
            and not self.witnesses
            and self.payoffs == self.closed_form
        )

    def to_dict(self) -> dict:
        return {
            "start": list(self.start.as_tuple()),
            "b0_half": list(self.b0.as_tuple()),
            "goals": [list(self.goals.g1.as_tuple()), list(self.goals.g2.as_tuple())],
            "closed_form_half": list(self.closed_form),
            "payoffs_half": None if self.payoffs is None else list(self.payoffs),
            "passed": self.passed,
            "inconclusive": self.inconclusive,
            "notes": list(self.notes),
            "game1": None if self.game1 is None else self.game1.to_dict(),
            "game2": None if self.game2 is None else self.game2.to_dict(),
            "eater": None if self.eater is None else self.eater.to_dict(),
        }


def verify_equilibrium(
    p0: GridPosition,
    b0: ConsumptionVector,
    goals: GoalPair,
    slack: int = 2,
    budget: int = DEFAULT_BUDGET,
    mover_pair: tuple[MoverStrategy, MoverStrategy] | None = None,
    eater: EaterStrategy | None = None,
) -> EquilibriumReport:
    """Check both Mover no-deviation conditions and the Eater one.

    Defaults to the equilibrium pair; pass ``mover_pair`` or ``eater`` to
    audit another candidate. Passing requires no improving deviation and
    candidate payoffs equal to the closed-form values.
    """
    movers = mover_pair if mover_pair is not None else (equilibrium_mover, equilibrium_mover)
    eater = eater if eater is not None else equilibrium_eater
    v1, v2 = equilibrium_values(p0, b0, goals)
    report = EquilibriumReport(p0, b0, goals, closed_form=(v1, v2, min(v1, v2)))
    try:
        report.game1 = mover_best_response(p0, b0, goals, 1, eater, slack, budget, movers[0])
        report.game2 = mover_best_response(p0, b0, goals, 2, eater, slack, budget, movers[1])
        report.eater = eater_best_response(p0, b0, goals, movers, eater, budget)
    except BoundsExceeded as exc:
        report.inconclusive = True
        report.notes.append(f"inconclusive: {exc}")
    if not report.inconclusive:
        j1 = report.game1.equilibrium_payoff
        j2 = report.game2.equilibrium_payoff
        report.payoffs = (j1, j2, report.eater.equilibrium_payoff)
    return report


@dataclass(frozen=True)
class PathTriple:
    """A geometry where the three reference Mover paths hit given totals."""

    goals: GoalPair
    true_goal: int
    start: GridPosition
    k: int
    totals: tuple[int, int, int]


def scripted_total(p0: GridPosition, b0: ConsumptionVector, goals: GoalPair, true_goal: int, path) -> int:
    tr = play(GameState(p0, b0, goals, true_goal), ScriptedMover(path), equilibrium_eater, max(len(path), 1))
    return outcome(tr, true_goal)


def search_path_triples(
    target: tuple[int, int, int],
    max_separation: int = 8,
    max_distance: int = 10,
) -> list[PathTriple]:
    """Find geometries where (equilibrium, explicit-first, exaggeration) totals equal ``target``.

    Goal 1 sits at the origin and goal 2 at (dx, dy) with dx, dy >= 0 and
    dx + dy <= ``max_separation`` (other placements are reflections).
    Starts range over cells within ``max_distance`` of the true goal and the
    exaggeration depth k over every value for which the path exists. Hits
    come back in search order: dx, dy, true goal, x, y, k ascending.
    """
    b0 = ConsumptionVector()
    v_eq, v_ef, v_ex = target
    hits = []
    for dx in range(max_separation + 1):
        for dy in range(max_separation + 1 - dx):
            if dx == dy == 0:
                continue
            goals = GoalPair(GridPosition(0, 0), GridPosition(dx, dy))
            for i in (1, 2):
                g = goals.goal(i)
                for x in range(g.x - max_distance, g.x + max_distance + 1):
                    for y in range(g.y - max_distance, g.y + max_distance + 1):
                        p = GridPosition(x, y)
                        if manhattan(p, g) > max_distance or equilibrium_value(p, b0, goals, i) != v_eq:
                            continue
                        if scripted_total(p, b0, goals, i, build_explicit_first_path(p, goals, i)) != v_ef:
                            continue
                        for k in range(1, 2 * max_distance + 2 * max_separation + 2):
                            try:
                                path = build_exaggeration_path(p, goals, i, k)
                            except ExaggerationUnavailable:
                                break
                            if scripted_total(p, b0, goals, i, path) == v_ex:
                                hits.append(PathTriple(goals, i, p, k, target))
    return hits
