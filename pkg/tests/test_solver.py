"""Minimax solving, strategy extraction, and the potential's guarantees."""

import pytest

from majoritygame.core import (
    AssignerChoice,
    GameParams,
    Move,
    Position,
    apply_move,
    is_final,
    start_position,
)
from majoritygame.solver import (
    EXHAUSTIVE_GUARD_N,
    MEMO_LIMIT_ENV,
    GameSolver,
    MemoLimitExceeded,
    formula_comparisons,
    potential_guided_choice,
    reachable_positions,
    solve_game,
    two_one_family_potential,
    value_nomemo,
    verify_first_move_tie,
    verify_potential_dominates,
    verify_two_one_family,
)
from majoritygame.statistics import INFINITE, binary_weight, potential


class TestValues:
    def test_frozen_position_values(self):
        assert GameSolver(GameParams(3, 2)).value(Position((1, 1, 1))) == 2
        assert GameSolver(GameParams(5, 3)).value(Position((1,) * 5)) == 2
        assert GameSolver(GameParams(3, 2)).value(Position((2, 1))) == 2  # final

    def test_frozen_comparison_counts(self):
        for n, k, expected in [(3, 2, 1), (5, 4, 1), (5, 3, 3), (7, 4, 4), (13, 7, 10)]:
            comparisons, _ = solve_game(GameParams(n, k))
            assert comparisons == expected, (n, k)

    def test_unanimous_games_need_no_comparisons(self):
        for n in range(1, 10):
            comparisons, result = solve_game(GameParams(n, n))
            assert comparisons == 0
            assert result.final_position == start_position(GameParams(n, n))

    def test_formula(self):
        assert formula_comparisons(GameParams(5, 3)) == 3
        assert formula_comparisons(GameParams(7, 4)) == 4
        assert formula_comparisons(GameParams(100, 67)) == 2 * 33 - 2

    def test_matches_unmemoized_recursion(self):
        for n in range(1, 8):
            for k in range(n // 2 + 1, n + 1):
                params = GameParams(n, k)
                solver = GameSolver(params)
                start = start_position(params)
                assert solver.value(start) == value_nomemo(start, params.e), (n, k)

    def test_solver_agrees_with_formula_midrange(self):
        for n in range(1, 13):
            for k in range(n // 2 + 1, n + 1):
                params = GameParams(n, k)
                assert GameSolver(params).comparisons_needed() == formula_comparisons(
                    params), (n, k)


class TestStrategies:
    def test_optimal_moves_on_final_position_is_empty(self):
        solver = GameSolver(GameParams(3, 2))
        assert solver.optimal_selector_moves(Position((2, 1))) == []
        with pytest.raises(ValueError):
            solver.optimal_assigner_choices(Position((2, 1)), Move(0, 1))

    def test_optimal_moves_achieve_the_value(self):
        params = GameParams(9, 5)
        solver = GameSolver(params)
        M = start_position(params)
        val = solver.value(M)
        for w, wp in solver.optimal_selector_moves(M):
            idx_w = M.elements.index(w)
            idx_wp = M.elements.index(wp, idx_w + 1)
            worst = min(
                solver.value(apply_move(M, Move(idx_w, idx_wp), c))
                for c in AssignerChoice)
            assert worst == val

    def test_principal_variation_length(self):
        for n, k in [(5, 3), (7, 4), (9, 5), (6, 4), (11, 6)]:
            params = GameParams(n, k)
            comparisons, result = solve_game(params)
            assert len(result.principal_variation) == comparisons
            assert is_final(result.final_position, params.e)
            assert len(result.final_position) == result.value

    def test_principal_variation_steps_compose(self):
        params = GameParams(7, 4)
        _, result = solve_game(params)
        cur = start_position(params)
        for step in result.principal_variation:
            assert step.position == cur
            cur = apply_move(cur, step.move, step.choice)
        assert cur == result.final_position

    def test_potential_guided_choice(self):
        # cancelling the opening pair is strictly better for the potential at m=3
        M = start_position(GameParams(7, 4))
        assert potential_guided_choice(M, 1, Move(0, 1)) is AssignerChoice.MINUS
        with pytest.raises(ValueError):
            potential_guided_choice(Position((2, 1)), 1, Move(0, 1))


class TestMemoLimit:
    def test_explicit_limit_aborts(self):
        with pytest.raises(MemoLimitExceeded):
            GameSolver(GameParams(9, 5), memo_limit=3).comparisons_needed()

    def test_limit_from_environment(self, monkeypatch):
        monkeypatch.setenv(MEMO_LIMIT_ENV, "2")
        with pytest.raises(MemoLimitExceeded):
            GameSolver(GameParams(9, 5)).comparisons_needed()
        monkeypatch.setenv(MEMO_LIMIT_ENV, "100000")
        assert GameSolver(GameParams(9, 5)).comparisons_needed() == 7

    def test_bad_environment_value_rejected(self, monkeypatch):
        monkeypatch.setenv(MEMO_LIMIT_ENV, "soon")
        with pytest.raises(ValueError):
            GameSolver(GameParams(5, 3))
        monkeypatch.setenv(MEMO_LIMIT_ENV, "0")
        with pytest.raises(ValueError):
            GameSolver(GameParams(5, 3))


class TestReachability:
    def test_small_game_positions(self):
        reached = reachable_positions(GameParams(3, 2))
        assert reached == {
            Position((1, 1, 1)),
            Position((2, 1)),
            Position((1, 0)),
        }

    def test_final_positions_are_not_expanded(self):
        # [2,1] is final for e=1; its successors must not appear
        reached = reachable_positions(GameParams(3, 2))
        assert Position((3,)) not in reached
        assert Position((1,)) not in reached

    def test_guard(self):
        with pytest.raises(ValueError):
            reachable_positions(GameParams(EXHAUSTIVE_GUARD_N + 2, EXHAUSTIVE_GUARD_N))


class TestPotentialAgainstValues:
    def test_domination_small_games(self):
        for n in range(1, 9):
            for k in range(n // 2 + 1, n + 1):
                report = verify_potential_dominates(GameParams(n, k))
                assert report.passed, report.failures[:3]
                assert report.cases > 0

    def test_zero_slack_somewhere(self):
        # the start position itself is tight: potential = e + binary_weight(s)
        report = verify_potential_dominates(GameParams(7, 4))
        assert report.details["min_slack"] == 0


class TestNamedFamilies:
    def test_two_one_family_closed_form(self):
        assert two_one_family_potential(1) == INFINITE
        assert two_one_family_potential(2) == 2
        assert two_one_family_potential(3) == 4
        assert two_one_family_potential(4) == 2
        assert two_one_family_potential(5) == 5
        report = verify_two_one_family(24)
        assert report.passed, report.failures[:3]

    def test_direct_potential_agreement(self):
        for m in (1, 2, 3, 4, 6, 8):
            M = Position((2,) + (1,) * (2 * m - 1))
            assert potential(M, 1) == two_one_family_potential(m), m

    def test_first_move_tie(self):
        for m in (3, 7):
            report = verify_first_move_tie(m)
            assert report.passed, report.failures[:3]
        with pytest.raises(ValueError):
            verify_first_move_tie(5)

    def test_first_move_tie_values_detail(self):
        report = verify_first_move_tie(3)
        values = report.details["values"]
        assert values["start"] == values["merged"] == values["cancelled"]


def test_start_potential_equals_optimal_final_size():
    # e + binary_weight(s) at the start equals n - comparisons under optimal play
    for n in range(1, 13):
        for k in range(n // 2 + 1, n + 1):
            params = GameParams(n, k)
            s = n - k
            comparisons, result = solve_game(params)
            assert potential(start_position(params), params.e) == params.e + binary_weight(s)
            assert result.value == n - comparisons
