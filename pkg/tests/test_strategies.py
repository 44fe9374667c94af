import pytest
from hypothesis import given, strategies as st

from conftest import P, goal_pairs, positions
from mover_eater.engine import (
    ConsumptionVector,
    EaterAction,
    EaterView,
    GameState,
    MoverView,
    play,
)
from mover_eater.geometry import MoveClass, MoveDirection, Region, classify_move, region_of, step_counts
from mover_eater.strategies import (
    ExaggerationUnavailable,
    PathInvalid,
    ScriptedMover,
    build_exaggeration_path,
    build_explicit_first_path,
    equilibrium_eater,
    equilibrium_mover,
    equilibrium_path,
    half_half_eater,
    make_eater,
    make_mover,
    parse_path,
    scripted_mover,
)
from mover_eater.value import delta_c_hat

U, D, L, R = MoveDirection.UP, MoveDirection.DOWN, MoveDirection.LEFT, MoveDirection.RIGHT


def mview(p, goals, i, b=ConsumptionVector()):
    return MoverView(p, b, i, goals)


def eview(p, d, goals, b=ConsumptionVector()):
    return EaterView(p, p.step(d), d, b, goals)


class TestEquilibriumMover:
    def test_examples(self, line_goals):
        assert equilibrium_mover(mview(P(2, 3), line_goals, 1)) is D
        assert equilibrium_mover(mview(P(2, 0), line_goals, 1)) is L
        assert equilibrium_mover(mview(P(2, 0), line_goals, 2)) is R

    def test_tie_break_prefers_up_then_down_then_left(self, line_goals):
        # from (-3, -3) both Up and Right approach the rectangle
        assert equilibrium_mover(mview(P(-3, -3), line_goals, 1)) is U
        assert equilibrium_mover(mview(P(-3, 0), line_goals, 1)) is R

    def test_rejects_start_at_goal(self, line_goals):
        with pytest.raises(ValueError):
            equilibrium_mover(mview(P(0, 0), line_goals, 1))

    @given(goal_pairs(), positions, st.sampled_from([1, 2]))
    def test_path_structure(self, goals, p0, i):
        path = equilibrium_path(p0, goals, i)
        n = step_counts(p0, goals)
        assert len(path) == n.n_ambiguous + n.explicit(i)
        p = p0
        for t, d in enumerate(path):
            cls = classify_move(p, d, goals)
            if t < n.n_ambiguous:
                assert cls is MoveClass.AMBIGUOUS
            else:
                assert cls is MoveClass.explicit(i)
            p = p.step(d)
            if t == n.n_ambiguous - 1:
                # ambiguous prefix ends on the rectangle
                assert region_of(p, goals) is Region.R1
        assert p == goals.goal(i)


class TestEquilibriumEater:
    def test_conservative_branches(self):
        # goals chosen so that after the ambiguous move d(t+1) = (3, 7)
        from mover_eater.geometry import GoalPair

        goals = GoalPair(P(0, 0), P(4, 0))
        v = eview(P(0, 4), D, goals)
        assert (abs(v.new_position.x) + abs(v.new_position.y), 7) == (3, 7)
        assert delta_c_hat(v, 1) == -8
        assert equilibrium_eater(v) is EaterAction.EAT_G1
        mirrored = eview(P(4, 4), D, goals)
        assert equilibrium_eater(mirrored) is EaterAction.EAT_G2

    def test_zero_difference_splits(self, line_goals):
        v = eview(P(2, 3), D, line_goals)
        assert delta_c_hat(v, 1) == 0
        assert equilibrium_eater(v) is EaterAction.EAT_HALF

    def test_explicit_exploits(self, line_goals):
        assert equilibrium_eater(eview(P(2, 0), L, line_goals)) is EaterAction.EAT_G1
        assert equilibrium_eater(eview(P(2, 0), R, line_goals)) is EaterAction.EAT_G2

    def test_consumption_shifts_the_conservative_choice(self, line_goals):
        v = eview(P(2, 3), D, line_goals, ConsumptionVector(0, 4))
        assert equilibrium_eater(v) is EaterAction.EAT_G1


class TestHalfHalfEater:
    def test_examples(self, line_goals):
        assert half_half_eater(eview(P(0, 4), D, line_goals)) is EaterAction.EAT_HALF
        assert half_half_eater(eview(P(2, 0), R, line_goals)) is EaterAction.EAT_G2
        assert half_half_eater(eview(P(2, 3), D, line_goals)) is EaterAction.EAT_HALF

    @given(goal_pairs(), positions, st.sampled_from(list(MoveDirection)), st.integers(0, 8), st.integers(0, 8))
    def test_agrees_with_equilibrium_where_it_should(self, goals, p, d, b1, b2):
        v = EaterView(p, p.step(d), d, ConsumptionVector(2 * b1, 2 * b2), goals)
        cls = classify_move(p, d, goals)
        if not cls.is_ambiguous or delta_c_hat(v, 1) == 0:
            assert half_half_eater(v) is equilibrium_eater(v)


class TestScriptedMover:
    def test_replays_valid_path(self, line_goals, zero):
        m = scripted_mover([D, D, D, L, L], P(2, 3), P(0, 0))
        tr = play(GameState(P(2, 3), zero, line_goals, 1), m, equilibrium_eater)
        assert tr.terminal_time == 5

    def test_path_not_reaching_goal(self):
        with pytest.raises(PathInvalid):
            scripted_mover([U], P(2, 3), P(0, 0))

    def test_path_touching_goal_early(self):
        with pytest.raises(PathInvalid):
            scripted_mover([L, R, L], P(1, 0), P(0, 0))

    def test_exhaustion_during_play(self, line_goals, zero):
        with pytest.raises(PathInvalid):
            play(GameState(P(2, 3), zero, line_goals, 1), ScriptedMover([U]), equilibrium_eater)

    def test_empty_path_at_goal(self, line_goals, zero):
        m = scripted_mover([], P(0, 0), P(0, 0))
        assert play(GameState(P(0, 0), zero, line_goals, 1), m, equilibrium_eater).terminal_time == 0


class TestPathBuilders:
    def test_explicit_first(self, offset_goals):
        assert build_explicit_first_path(P(4, 4), offset_goals, 1) == [L, L, D, D, D, D]

    def test_explicit_first_in_r1_matches_equilibrium(self, offset_goals):
        assert build_explicit_first_path(P(3, 0), offset_goals, 2) == equilibrium_path(P(3, 0), offset_goals, 2)

    def test_explicit_first_in_r3_without_explicit_moves(self, line_goals):
        # from (10, 10) the game-2 path needs no explicit move
        assert step_counts(P(10, 10), line_goals).n_explicit_2 == 0
        assert build_explicit_first_path(P(10, 10), line_goals, 2) == equilibrium_path(P(10, 10), line_goals, 2)

    def test_exaggeration(self, offset_goals):
        assert build_exaggeration_path(P(4, 4), offset_goals, 1, 1) == [R, D, D, D, D, L, L, L]
        assert build_exaggeration_path(P(4, 4), offset_goals, 1, 0) == equilibrium_path(P(4, 4), offset_goals, 1)

    def test_exaggeration_needs_an_explicit_move(self, line_goals):
        with pytest.raises(ExaggerationUnavailable):
            build_exaggeration_path(P(10, 10), line_goals, 1, 1)

    @given(goal_pairs(), positions, st.sampled_from([1, 2]))
    def test_explicit_first_is_shortest(self, goals, p0, i):
        path = build_explicit_first_path(p0, goals, i)
        n = step_counts(p0, goals)
        assert len(path) == n.n_ambiguous + n.explicit(i)


class TestNames:
    def test_bindings(self, offset_goals):
        p0 = P(4, 4)
        assert make_mover("equilibrium", p0, offset_goals, 1) is equilibrium_mover
        assert make_mover("explicit_first", p0, offset_goals, 1).path == (L, L, D, D, D, D)
        assert make_mover("exaggeration:1", p0, offset_goals, 1).path[0] is R
        assert make_mover("path:[Down,Down,Left]", p0, offset_goals, 1).path == (D, D, L)
        assert make_eater("half_half") is half_half_eater
        assert make_eater("equilibrium") is equilibrium_eater

    def test_unknown_names(self, offset_goals):
        with pytest.raises(ValueError):
            make_mover("sneaky", P(0, 0), offset_goals, 1)
        with pytest.raises(ValueError):
            make_eater("greedy")

    def test_parse_path_forms(self):
        assert parse_path("[Up, down,L]") == [U, D, L]
        assert parse_path("") == []
