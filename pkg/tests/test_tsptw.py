"""Time-window tour domain: parsing, leg updates, scoring, enumeration."""
from __future__ import annotations

import itertools
import math

import pytest

from nrpa.policy import Policy
from nrpa.rng import RngStream
from nrpa.search import playout
from nrpa.problem import replay
from nrpa.problems.tsptw import (
    LATE_PENALTY,
    TsptwProblem,
    brute_force_best,
    parse_instance,
)


def wide(n):
    return [(0.0, 1e9)] * n


def visit(state, node):
    move = next(m for m in state.legal_moves() if m.node == node)
    return state.play(move)


def tour(problem, order):
    state = problem.root()
    for node in order:
        state = visit(state, node)
    return state


# A 3-customer instance with hand-picked leg costs: depot->1 = 1, 1->2 = 2,
# 2->3 = 2, 3->depot = 3. Other entries large so mistakes stand out.
CHAIN_COST = [
    [0.0, 1.0, 9.0, 3.0],
    [1.0, 0.0, 2.0, 9.0],
    [9.0, 2.0, 0.0, 2.0],
    [3.0, 9.0, 2.0, 0.0],
]


def test_parse_computes_euclidean_costs():
    text = "2\n0 0.0 0.0 0.0 100.0\n1 3.0 4.0 0.0 100.0\n"
    problem = parse_instance(text)
    assert problem.n == 1
    assert problem.cost[0][1] == 5.0
    assert problem.cost[1][0] == 5.0
    assert problem.cost[0][0] == 0.0


def test_parse_accepts_seven_column_rows():
    # id x y demand ready due service; demand and service are ignored.
    text = (
        "3\n"
        "0 0.0 0.0 0.0 0.0 100.0 0.0\n"
        "1 3.0 4.0 10.0 5.0 20.0 0.0\n"
        "2 6.0 8.0 10.0 5.0 30.0 0.0\n"
    )
    problem = parse_instance(text)
    assert problem.n == 2
    assert problem.windows[1] == (5.0, 20.0)
    assert problem.cost[1][2] == 5.0


def test_parse_accepts_one_based_ids_and_comments():
    text = (
        "!! synthetic check\n"
        "2\n"
        "1 0.0 0.0 0.0 50.0\n"
        "2 3.0 4.0 2.0 60.0\n"
    )
    problem = parse_instance(text)
    assert problem.n == 1
    assert problem.windows[0] == (0.0, 50.0)
    assert problem.windows[1] == (2.0, 60.0)


def test_parse_rejects_inverted_window():
    text = "2\n0 0.0 0.0 0.0 100.0\n1 1.0 0.0 9.0 3.0\n"
    with pytest.raises(ValueError, match="window"):
        parse_instance(text)


def test_parse_rejects_negative_ready_time():
    text = "2\n0 0.0 0.0 0.0 100.0\n1 1.0 0.0 -1.0 3.0\n"
    with pytest.raises(ValueError):
        parse_instance(text)


def test_parse_rejects_duplicate_ids():
    text = "2\n0 0.0 0.0 0.0 100.0\n0 1.0 0.0 0.0 3.0\n"
    with pytest.raises(ValueError, match="duplicate"):
        parse_instance(text)


def test_parse_rejects_malformed_rows():
    with pytest.raises(ValueError):
        parse_instance("2\n0 0.0\n1 1.0 0.0 0.0 3.0\n")


def test_early_arrival_waits_for_the_window_to_open():
    problem = TsptwProblem(CHAIN_COST, [(0.0, 1e9), (10.0, 20.0), (0.0, 1e9), (0.0, 1e9)])
    state = visit(problem.root(), 1)
    # Leg costs 1, window opens at 10: wait, no violation.
    assert state.time == 10.0
    assert state.violations == 0
    assert state.cost_so_far == 1.0


def test_late_arrival_counts_a_violation_and_keeps_moving():
    problem = TsptwProblem(CHAIN_COST, [(0.0, 1e9), (0.0, 0.5), (0.0, 1e9), (0.0, 1e9)])
    state = visit(problem.root(), 1)
    assert state.violations == 1
    assert state.time == 1.0  # max(arrival, ready) with ready 0


def test_arrival_exactly_at_the_deadline_is_feasible():
    problem = TsptwProblem(CHAIN_COST, [(0.0, 1e9), (0.0, 1.0), (0.0, 1e9), (0.0, 1e9)])
    state = visit(problem.root(), 1)
    assert state.violations == 0


def test_feasible_chain_tour_scores_minus_total_cost():
    problem = TsptwProblem(CHAIN_COST, wide(4))
    state = tour(problem, [1, 2, 3])
    assert state.is_terminal()
    # Legs 1 + 2 + 2 + 3 with zero violations.
    assert state.score() == -8.0


def test_one_violation_costs_a_million():
    windows = [(0.0, 1e9), (0.0, 0.5), (0.0, 1e9), (0.0, 1e9)]
    problem = TsptwProblem(CHAIN_COST, windows)
    state = tour(problem, [1, 2, 3])
    assert state.score() == -(8.0 + LATE_PENALTY)
    assert state.score() == -1000008.0


def test_late_return_to_depot_is_penalized():
    windows = [(0.0, 7.0), (0.0, 1e9), (0.0, 1e9), (0.0, 1e9)]
    problem = TsptwProblem(CHAIN_COST, windows)
    state = tour(problem, [1, 2, 3])
    # Tour finishes at time 8 > depot deadline 7.
    assert state.violations == 1
    assert state.score() == -(8.0 + LATE_PENALTY)


def test_zero_customers_is_immediately_terminal_with_zero_score():
    problem = TsptwProblem([[0.0]], [(0.0, 10.0)])
    state = problem.root()
    assert state.is_terminal()
    assert state.score() == 0.0


def test_move_codes_encode_current_and_next():
    problem = TsptwProblem(CHAIN_COST, wide(4))
    state = problem.root()
    assert [m.code for m in state.legal_moves()] == [1, 2, 3]
    state = visit(state, 2)
    # current=2, n+1=4: codes 2*4+next.
    assert [m.code for m in state.legal_moves()] == [9, 11]


def test_visiting_a_node_twice_is_rejected():
    problem = TsptwProblem(CHAIN_COST, wide(4))
    state = visit(problem.root(), 1)
    move = next(m for m in state.legal_moves() if m.node == 2)
    state2 = state.play(move)
    with pytest.raises(ValueError, match="visited"):
        state2.play(move)


def test_brute_force_on_windows_that_force_an_order():
    # All legs cost 1. Customer 2 must be reached by t=2, customer 1 only
    # inside [3, 5], customer 3 inside [6, 9]: the only feasible order is
    # (2, 1, 3) at total cost 4.
    cost = [[0.0 if i == j else 1.0 for j in range(4)] for i in range(4)]
    windows = [(0.0, 1e9), (3.0, 5.0), (0.0, 2.0), (6.0, 9.0)]
    problem = TsptwProblem(cost, windows)
    score, order = brute_force_best(problem)
    assert order == (2, 1, 3)
    assert score == -4.0


def test_brute_force_agrees_with_exhaustive_replay():
    cost = CHAIN_COST
    windows = [(0.0, 20.0), (2.0, 9.0), (0.0, 6.0), (1.0, 12.0)]
    problem = TsptwProblem(cost, windows)
    best = max(
        tour(problem, order).score()
        for order in itertools.permutations((1, 2, 3))
    )
    score, _ = brute_force_best(problem)
    assert score == best


def test_brute_force_cap():
    n = 9
    cost = [[0.0] * (n + 1) for _ in range(n + 1)]
    with pytest.raises(ValueError):
        brute_force_best(TsptwProblem(cost, wide(n + 1)))


def test_playouts_replay_exactly():
    problem = TsptwProblem(CHAIN_COST, [(0.0, 12.0), (2.0, 9.0), (0.0, 6.0), (1.0, 12.0)])
    rng = RngStream(3)
    for _ in range(50):
        rollout = playout(problem, Policy(), rng)
        state = replay(problem, rollout.moves)
        assert state.score() == rollout.score
        assert len(rollout.moves) == 3


def test_score_floor_sits_below_any_real_outcome():
    problem = TsptwProblem(CHAIN_COST, [(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)])
    worst = min(
        tour(problem, order).score() for order in itertools.permutations((1, 2, 3))
    )
    assert problem.score_floor() <= worst
