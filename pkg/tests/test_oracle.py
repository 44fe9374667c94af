import pytest

from conftest import P
from mover_eater.engine import ConsumptionVector, EaterAction, GameState, outcome, play
from mover_eater.errors import BoundsExceeded
from mover_eater.geometry import GoalPair, MoveDirection
from mover_eater.oracle import (
    eater_best_response,
    eater_best_response_bruteforce,
    mover_best_response,
    verify_equilibrium,
)
from mover_eater.strategies import (
    ScriptedMover,
    ExaggerationUnavailable,
    build_exaggeration_path,
    build_explicit_first_path,
    equilibrium_eater,
    equilibrium_mover,
    half_half_eater,
    make_mover,
)
from mover_eater.value import c_factors, eater_equilibrium_value, equilibrium_value


def unmarked(strategy):
    """Same policy without the consumption-blind mark, forcing full-tree search."""
    return lambda view: strategy(view)


def greedy_mover(view):
    """A Mover that reacts to consumption: detours once while it is behind."""
    if view.consumption.b1 < view.consumption.b2 and view.position.y > 0:
        return MoveDirection.UP if view.clock == 1 else equilibrium_mover(view)
    return equilibrium_mover(view)


def left_feeds_g2(view):
    if view.last_mover_action is MoveDirection.LEFT:
        return EaterAction.EAT_G2
    return equilibrium_eater(view)


class TestEaterBestResponse:
    def test_equilibrium_pair(self, line_goals, zero):
        rep = eater_best_response(P(2, 3), zero, line_goals)
        assert rep.best_deviation_payoff == 7 == eater_equilibrium_value(P(2, 3), zero, line_goals)
        assert rep.equilibrium_payoff == 7
        assert rep.witness is None
        assert rep.checked_count == 27

    def test_r1_start(self, line_goals, zero):
        rep = eater_best_response(P(2, 0), zero, line_goals)
        assert rep.best_deviation_payoff == 4 == min(c_factors(P(2, 0), zero, line_goals))
        assert not rep.improves

    def test_explicit_first_movers_are_exploitable(self, line_goals, zero):
        p = P(2, 3)
        pair = tuple(make_mover("explicit_first", p, line_goals, i) for i in (1, 2))
        rep = eater_best_response(p, zero, line_goals, pair)
        assert rep.best_deviation_payoff == 10
        assert rep.equilibrium_payoff == 9
        tr1, tr2 = rep.witness
        assert tr1.replay() and tr2.replay()
        assert min(outcome(tr1, 1), outcome(tr2, 2)) == rep.best_deviation_payoff
        # the greedy completion after the split agrees with raw enumeration
        assert eater_best_response_bruteforce(p, zero, line_goals, pair) == 10

    def test_half_half_candidate_is_beaten(self, line_goals, zero):
        rep = eater_best_response(P(0, 3), zero, line_goals, eater=half_half_eater)
        assert rep.equilibrium_payoff == 3
        assert rep.best_deviation_payoff == 6
        assert rep.improves

    @pytest.mark.parametrize("start", [(2, 3), (2, 2), (3, 1), (1, -2), (2, 0), (2, -3)])
    def test_factorised_search_matches_raw_enumeration(self, line_goals, zero, start):
        p = P(*start)
        fast = eater_best_response(p, zero, line_goals).best_deviation_payoff
        tree = eater_best_response(
            p, zero, line_goals, (unmarked(equilibrium_mover), unmarked(equilibrium_mover))
        ).best_deviation_payoff
        raw = eater_best_response_bruteforce(p, zero, line_goals)
        assert fast == tree == raw == eater_equilibrium_value(p, zero, line_goals)

    @pytest.mark.parametrize("start", [(2, 3), (1, 2), (3, 2)])
    def test_consumption_aware_mover(self, line_goals, zero, start):
        p = P(*start)
        pair = (greedy_mover, greedy_mover)
        rep = eater_best_response(p, zero, line_goals, pair)
        assert rep.bounds["method"] == "full-tree"
        raw = eater_best_response_bruteforce(p, zero, line_goals, pair, max_steps=8)
        assert rep.best_deviation_payoff == raw

    def test_budget(self, line_goals, zero):
        with pytest.raises(BoundsExceeded):
            eater_best_response(P(2, 6), zero, line_goals, budget=100)


class TestMoverBestResponse:
    def test_no_improvement_against_equilibrium_eater(self, line_goals, zero):
        rep = mover_best_response(P(2, 3), zero, line_goals, 1, slack=2)
        assert rep.best_deviation_payoff == 7
        assert rep.witness is None

    def test_reference_paths(self, offset_goals, zero):
        p0 = P(4, 4)
        s = GameState(p0, zero, offset_goals, 1)
        ef = outcome(play(s, ScriptedMover(build_explicit_first_path(p0, offset_goals, 1)), equilibrium_eater), 1)
        ex = outcome(play(s, ScriptedMover(build_exaggeration_path(p0, offset_goals, 1, 1)), equilibrium_eater), 1)
        assert (ef, ex) == (10, 9)
        rep = mover_best_response(p0, zero, offset_goals, 1, slack=2)
        assert rep.best_deviation_payoff == 8 == equilibrium_value(p0, zero, offset_goals, 1)
        assert ef > 8 and ex >= 8

    def test_generic_search_matches_kernel(self, line_goals, zero):
        for start in [(2, 3), (-1, 2), (6, 1)]:
            for i in (1, 2):
                a = mover_best_response(P(*start), zero, line_goals, i, slack=2)
                b = mover_best_response(P(*start), zero, line_goals, i, eater=unmarked(equilibrium_eater), slack=2)
                assert (a.checked_count, a.best_deviation_payoff) == (b.checked_count, b.best_deviation_payoff)
                assert b.bounds["method"] == "generic"

    def test_exploitable_eater_yields_replayable_witness(self, line_goals, zero):
        rep = mover_best_response(P(2, 3), zero, line_goals, 1, eater=left_feeds_g2, slack=2)
        assert rep.improves
        (tr,) = rep.witness
        tr.replay()
        assert outcome(tr, 1) == rep.best_deviation_payoff < rep.equilibrium_payoff

    def test_budget_monotonicity(self, line_goals, zero):
        found = [
            mover_best_response(P(2, 3), zero, line_goals, 1, eater=left_feeds_g2, slack=s).improves
            for s in (2, 4)
        ]
        assert found == [True, True]
        with pytest.raises(BoundsExceeded):
            mover_best_response(P(2, 3), zero, line_goals, 1, slack=4, budget=50)

    def test_slack_zero_ambiguous_first_is_minimal(self, offset_goals, zero):
        for i in (1, 2):
            rep = mover_best_response(P(4, 4), zero, offset_goals, i, slack=0)
            assert rep.best_deviation_payoff == equilibrium_value(P(4, 4), zero, offset_goals, i)

    def test_exaggeration_never_helps(self, offset_goals, zero):
        p0 = P(4, 4)
        v = equilibrium_value(p0, zero, offset_goals, 1)
        for k in range(0, 8):
            try:
                path = build_exaggeration_path(p0, offset_goals, 1, k)
            except ExaggerationUnavailable:
                break
            tr = play(GameState(p0, zero, offset_goals, 1), ScriptedMover(path), equilibrium_eater)
            assert outcome(tr, 1) >= v


class TestVerifyEquilibrium:
    def test_asymmetric_start(self, line_goals, zero):
        rep = verify_equilibrium(P(0, 3), zero, line_goals, slack=2)
        assert rep.passed
        assert rep.payoffs == (6, 8, 6)

    def test_start_at_goal(self, line_goals, zero):
        rep = verify_equilibrium(P(0, 0), zero, line_goals)
        assert rep.passed
        assert rep.payoffs == (0, 8, 0)

    def test_explicit_first_mover_pair_flagged(self, line_goals, zero):
        p = P(2, 3)
        pair = tuple(make_mover("explicit_first", p, line_goals, i) for i in (1, 2))
        rep = verify_equilibrium(p, zero, line_goals, mover_pair=pair)
        assert not rep.passed
        assert rep.eater.best_deviation_payoff > eater_equilibrium_value(p, zero, line_goals)
        # the Mover is itself losing: equilibrium play would do better
        assert rep.game1.improves and rep.game2.improves

    def test_half_half_eater_flagged(self, line_goals, zero):
        rep = verify_equilibrium(P(0, 3), zero, line_goals, eater=half_half_eater)
        assert not rep.passed
        assert [w.deviator for w in rep.witnesses] == ["eater"]

    def test_inconclusive_on_budget(self, line_goals, zero):
        rep = verify_equilibrium(P(2, 3), zero, line_goals, slack=4, budget=20)
        assert rep.inconclusive
        assert not rep.passed
        assert rep.notes

    def test_report_serialises(self, line_goals, zero):
        import json

        rep = verify_equilibrium(P(0, 3), zero, line_goals, eater=half_half_eater)
        doc = json.loads(json.dumps(rep.to_dict()))
        assert doc["passed"] is False
        assert doc["eater"]["witness"][0][0]["initial"]["true_goal"] == 1
