"""Ball-level question game: union-find, identification, transcripts."""

import json
import random

import pytest

from majoritygame.ballgame import (
    BALL_SEARCH_GUARD_N,
    AdversarialGameRecord,
    BallAnswer,
    Component,
    InconsistentAnswerError,
    QuestionGraph,
    adversarial_answer,
    consistent_colouring_exists,
    export_transcript,
    export_transcript_json,
    identify_majority,
    import_transcript,
    import_transcript_json,
    induced_move_and_choice,
    locate_ball,
    min_comparisons_ball_level,
    optimal_selector_comparison,
    run_adversarial_game,
    side_status_table,
)
from majoritygame.core import AssignerChoice, GameParams, Position, apply_move
from majoritygame.solver import GameSolver, formula_comparisons


class TestQuestionGraph:
    def test_single_answers(self):
        g = QuestionGraph(5)
        g.add_comparison(1, 2, BallAnswer.DIFFERENT)
        assert g.weights() == Position((1, 1, 1, 0))
        g2 = QuestionGraph(5)
        g2.add_comparison(1, 2, BallAnswer.SAME)
        assert g2.weights() == Position((2, 1, 1, 1))

    def test_parity_propagates_along_chains(self):
        g = QuestionGraph(4)
        g.add_comparison(1, 2, BallAnswer.SAME)
        g.add_comparison(2, 3, BallAnswer.DIFFERENT)
        g.add_comparison(3, 4, BallAnswer.SAME)
        assert g.forced_answer(1, 4) is BallAnswer.DIFFERENT
        assert g.forced_answer(1, 2) is BallAnswer.SAME
        assert g.forced_answer(2, 4) is BallAnswer.DIFFERENT
        assert g.forced_answer(3, 4) is BallAnswer.SAME
        assert g.weights() == Position((0,))

    def test_forced_answer_is_none_across_components(self):
        g = QuestionGraph(3)
        g.add_comparison(1, 2, BallAnswer.SAME)
        assert g.forced_answer(1, 3) is None

    def test_inconsistent_answer_raises(self):
        g = QuestionGraph(3)
        g.add_comparison(1, 2, BallAnswer.SAME)
        g.add_comparison(2, 3, BallAnswer.SAME)
        with pytest.raises(InconsistentAnswerError):
            g.add_comparison(1, 3, BallAnswer.DIFFERENT)

    def test_consistent_repeat_is_recorded_but_harmless(self):
        g = QuestionGraph(3)
        g.add_comparison(1, 2, BallAnswer.SAME)
        g.add_comparison(1, 2, BallAnswer.SAME)
        assert len(g.history) == 2
        assert g.weights() == Position((2, 1))

    def test_validation(self):
        g = QuestionGraph(3)
        with pytest.raises(ValueError):
            g.add_comparison(1, 1, BallAnswer.SAME)
        with pytest.raises(ValueError):
            g.add_comparison(0, 2, BallAnswer.SAME)
        with pytest.raises(ValueError):
            g.add_comparison(1, 4, BallAnswer.SAME)
        with pytest.raises(ValueError):
            QuestionGraph(0)

    def test_components_ordering_and_tie_break(self):
        g = QuestionGraph(6)
        g.add_comparison(3, 5, BallAnswer.DIFFERENT)
        g.add_comparison(2, 6, BallAnswer.SAME)
        comps = g.components()
        assert [comp.min_ball for comp in comps] == [1, 2, 3, 4]
        tied = comps[2]  # balls 3 and 5, weight 0
        assert tied.weight == 0
        assert tied.larger == (3,) and tied.smaller == (5,)
        merged = comps[1]
        assert merged.larger == (2, 6) and merged.smaller == ()

    def test_copy_is_independent(self):
        g = QuestionGraph(4)
        g.add_comparison(1, 2, BallAnswer.SAME)
        dup = g.copy()
        dup.add_comparison(3, 4, BallAnswer.SAME)
        assert g.weights() == Position((2, 1, 1))
        assert dup.weights() == Position((2, 2))

    def test_component_properties(self):
        comp = Component((2, 6), (4,))
        assert comp.weight == 1
        assert comp.min_ball == 2
        assert comp.balls == (2, 4, 6)


class TestIdentification:
    def test_identify_after_one_different(self):
        g = QuestionGraph(5)
        g.add_comparison(1, 2, BallAnswer.DIFFERENT)
        assert identify_majority(g, GameParams(5, 4)) == 3
        assert identify_majority(g, GameParams(5, 3)) is None

    def test_identify_trivial_unanimity(self):
        g = QuestionGraph(3)
        assert identify_majority(g, GameParams(3, 3)) == 1

    def test_identify_needs_matching_ball_count(self):
        g = QuestionGraph(5)
        with pytest.raises(ValueError):
            identify_majority(g, GameParams(4, 3))

    def test_smallest_qualifying_ball_wins(self):
        g = QuestionGraph(5)
        g.add_comparison(4, 5, BallAnswer.SAME)
        g.add_comparison(2, 3, BallAnswer.SAME)
        # components {1}, {2,3}, {4,5}: for k = 3 the capacity s = 2 still
        # lets either pair be the minority, so nothing can be announced
        assert identify_majority(g, GameParams(5, 3)) is None
        g.add_comparison(2, 4, BallAnswer.SAME)
        # {2,3,4,5} has weight 4 >= s+1 = 3; ball 2 is its smallest larger-side ball
        assert identify_majority(g, GameParams(5, 3)) == 2
        # at k = 4 even a bare pair exceeds the capacity s = 1
        g2 = QuestionGraph(5)
        g2.add_comparison(4, 5, BallAnswer.SAME)
        assert identify_majority(g2, GameParams(5, 4)) == 4

    def test_colouring_oracle_examples(self):
        g = QuestionGraph(5)
        g.add_comparison(1, 2, BallAnswer.DIFFERENT)
        params = GameParams(5, 4)
        # ball 3 on the nominal larger side of a singleton: majority either way?
        assert not consistent_colouring_exists(g, params, 3, "minority")
        assert consistent_colouring_exists(g, params, 3, "majority")
        # balls 1 and 2 oppose each other; each could still be minority
        assert consistent_colouring_exists(g, params, 1, "minority")
        assert consistent_colouring_exists(g, params, 1, "majority")
        with pytest.raises(ValueError):
            consistent_colouring_exists(g, params, 1, "either")

    def test_identification_agrees_with_colouring_oracle(self):
        rng = random.Random(5)
        for _ in range(200):
            n = rng.randint(2, 7)
            k = rng.randint(n // 2 + 1, n)
            params = GameParams(n, k)
            g = QuestionGraph(n)
            for _ in range(rng.randint(0, n)):
                comps = g.components()
                if len(comps) == 1:
                    break
                ca, cb = rng.sample(range(len(comps)), 2)
                g.add_comparison(
                    rng.choice(comps[ca].balls), rng.choice(comps[cb].balls),
                    rng.choice((BallAnswer.SAME, BallAnswer.DIFFERENT)))
            if sum(comp.weight for comp in g.components()) < params.e:
                continue
            announced = identify_majority(g, params)
            determined = [
                ball for ball in range(1, n + 1)
                if not consistent_colouring_exists(g, params, ball, "minority")
            ]
            if announced is None:
                assert determined == []
            else:
                assert announced == min(determined)


class TestInducedMoves:
    def test_same_on_singletons_is_plus(self):
        g = QuestionGraph(4)
        move, choice = induced_move_and_choice(g, 1, 2, BallAnswer.SAME)
        assert choice is AssignerChoice.PLUS
        assert apply_move(g.weights(), move, choice) == Position((2, 1, 1))

    def test_crossed_sides_flip_the_translation(self):
        g = QuestionGraph(4)
        g.add_comparison(1, 2, BallAnswer.DIFFERENT)
        g.add_comparison(3, 4, BallAnswer.DIFFERENT)
        # 2 sits on a smaller side, 3 on a larger side: same-colour crosses
        _, choice = induced_move_and_choice(g, 2, 3, BallAnswer.SAME)
        assert choice is AssignerChoice.MINUS
        _, choice = induced_move_and_choice(g, 1, 3, BallAnswer.SAME)
        assert choice is AssignerChoice.PLUS

    def test_within_component_raises(self):
        g = QuestionGraph(3)
        g.add_comparison(1, 2, BallAnswer.SAME)
        with pytest.raises(ValueError):
            induced_move_and_choice(g, 1, 2, BallAnswer.SAME)

    def test_commutes_with_weights_randomized(self):
        rng = random.Random(11)
        for _ in range(300):
            n = rng.randint(2, 9)
            g = QuestionGraph(n)
            while True:
                comps = g.components()
                if len(comps) == 1:
                    break
                ca, cb = rng.sample(range(len(comps)), 2)
                i = rng.choice(comps[ca].balls)
                j = rng.choice(comps[cb].balls)
                answer = rng.choice((BallAnswer.SAME, BallAnswer.DIFFERENT))
                before = g.weights()
                move, choice = induced_move_and_choice(g, i, j, answer)
                g.add_comparison(i, j, answer)
                assert g.weights() == apply_move(before, move, choice)


class TestAdversary:
    def test_optimal_adversary_forces_the_formula_count(self):
        for n in range(1, 9):
            for k in range(n // 2 + 1, n + 1):
                params = GameParams(n, k)
                record = run_adversarial_game(params, mode="optimal")
                assert isinstance(record, AdversarialGameRecord)
                assert record.comparisons == formula_comparisons(params), (n, k)
                assert identify_majority(record.graph, params) == record.majority_ball

    def test_potential_adversary_forces_the_formula_count(self):
        for n in range(1, 9):
            for k in range(n // 2 + 1, n + 1):
                params = GameParams(n, k)
                record = run_adversarial_game(params, mode="potential")
                assert record.comparisons == formula_comparisons(params), (n, k)

    def test_forced_answers_win_over_strategy(self):
        g = QuestionGraph(4)
        g.add_comparison(1, 2, BallAnswer.SAME)
        params = GameParams(4, 3)
        assert adversarial_answer(g, 1, 2, params) is BallAnswer.SAME

    def test_zero_weight_comparison_answers_same(self):
        g = QuestionGraph(5)
        g.add_comparison(1, 2, BallAnswer.DIFFERENT)
        params = GameParams(5, 3)
        assert adversarial_answer(g, 1, 3, params) is BallAnswer.SAME

    def test_unknown_mode_rejected(self):
        g = QuestionGraph(3)
        with pytest.raises(ValueError):
            adversarial_answer(g, 1, 2, GameParams(3, 2), mode="random")

    def test_selector_comparison_is_minimal_and_optimal(self):
        params = GameParams(5, 3)
        solver = GameSolver(params)
        g = QuestionGraph(5)
        i, j = optimal_selector_comparison(g, params, solver)
        assert (i, j) == (1, 2)
        g.add_comparison(1, 2, BallAnswer.DIFFERENT)
        i, j = optimal_selector_comparison(g, params, solver)
        assert i < j and len({i, j}) == 2

    def test_selector_comparison_raises_on_final(self):
        params = GameParams(3, 3)
        g = QuestionGraph(3)
        with pytest.raises(ValueError):
            optimal_selector_comparison(g, params, GameSolver(params))


class TestExhaustiveSearch:
    def test_matches_formula_up_to_six(self):
        for n in range(1, 7):
            for k in range(n // 2 + 1, n + 1):
                params = GameParams(n, k)
                assert min_comparisons_ball_level(params) == formula_comparisons(
                    params), (n, k)

    def test_guard(self):
        big = GameParams(BALL_SEARCH_GUARD_N + 3, BALL_SEARCH_GUARD_N)
        with pytest.raises(ValueError):
            min_comparisons_ball_level(big)


class TestSideStatusTable:
    def test_guard(self):
        comps = [Component((b,), ()) for b in range(1, 23)]
        with pytest.raises(ValueError):
            side_status_table(comps, 22, 12)

    def test_locate_ball(self):
        comps = [Component((1, 3), (2,)), Component((4,), ())]
        assert locate_ball(comps, 3) == (0, True)
        assert locate_ball(comps, 2) == (0, False)
        assert locate_ball(comps, 4) == (1, True)
        with pytest.raises(ValueError):
            locate_ball(comps, 9)


class TestTranscripts:
    def _sample_game(self):
        params = GameParams(5, 4)
        g = QuestionGraph(5)
        g.add_comparison(1, 2, BallAnswer.DIFFERENT)
        g.add_comparison(3, 4, BallAnswer.SAME)
        return params, g

    def test_text_format(self):
        params, g = self._sample_game()
        text = export_transcript(g, params)
        assert text == "5 4\n1 2 different\n3 4 same\n"
        params2, g2 = import_transcript(text)
        assert params2 == params
        assert g2.history == g.history
        assert g2.weights() == g.weights()
        assert export_transcript(g2, params2) == text

    def test_json_format(self):
        params, g = self._sample_game()
        blob = export_transcript_json(g, params)
        payload = json.loads(blob)
        assert payload["n"] == 5 and payload["k"] == 4
        assert payload["comparisons"][0] == {"i": 1, "j": 2, "answer": "different"}
        params2, g2 = import_transcript_json(blob)
        assert params2 == params and g2.history == g.history
        assert export_transcript_json(g2, params2) == blob

    def test_import_rejects_garbage(self):
        with pytest.raises(ValueError):
            import_transcript("")
        with pytest.raises(ValueError):
            import_transcript("5\n1 2 same\n")
        with pytest.raises(ValueError):
            import_transcript("5 4\n1 2 maybe\n")
        with pytest.raises(ValueError):
            import_transcript("5 4\n1 2\n")

    def test_import_replays_consistency_checks(self):
        bad = "3 2\n1 2 same\n2 3 same\n1 3 different\n"
        with pytest.raises(InconsistentAnswerError):
            import_transcript(bad)

    def test_adversarial_game_round_trips(self):
        params = GameParams(7, 4)
        record = run_adversarial_game(params)
        text = export_transcript(record.graph, params)
        params2, g2 = import_transcript(text)
        assert identify_majority(g2, params2) == record.majority_ball
        assert export_transcript(g2, params2) == text
