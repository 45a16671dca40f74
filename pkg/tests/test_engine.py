import random
from fractions import Fraction

import pytest

from majority_paint import engine
from majority_paint.engine import (
    ConstantToleranceLister,
    EngineError,
    GameState,
    GameTrace,
    ListerExhausted,
    RoundCapExceeded,
    RuleViolation,
    SkipLimitExceeded,
    StalledGame,
    coloring_from_trace,
    kappa_game,
    play_game,
    replay_trace,
    tolerance_of_trace,
    validate_painter_response,
    verify_coloring,
    verify_ranked_coloring,
)
from majority_paint.graph import (
    build_digraph,
    complete_graph,
    directed_cycle,
    random_digraph,
    random_undirected,
)
from majority_paint.lister import CliqueLister, GreedyLister, RandomLister, make_move
from majority_paint.painter import GeneralPainter, UndirectedPainter

HALF = Fraction(1, 2)


class _FixedLister:
    def __init__(self, moves):
        self._moves = list(moves)

    def next_move(self, state):
        return self._moves.pop(0) if self._moves else None


class _FixedPainter:
    def __init__(self, replies):
        self._replies = list(replies)

    def respond(self, present, tolerance):
        return self._replies.pop(0)


# ---------------------------------------------------------------------------
# play_game


def test_k2_greedy_vs_undirected_painter():
    k2 = complete_graph(2)
    trace = play_game(k2.digraph, Fraction(1), GreedyLister(), UndirectedPainter(k2))
    assert trace.winner == "painter"
    assert [r.selected for r in trace.rounds] == [(0,), (1,)]
    assert trace.coloring == {0: 1, 1: 2}


def test_single_edgeless_vertex_always_painter():
    g = build_digraph(1, [])
    for lister in (GreedyLister(), RandomLister(2), CliqueLister(2)):
        trace = play_game(g, Fraction(1, 10), lister, GeneralPainter(g))
        assert trace.winner == "painter" and len(trace.rounds) == 1


def test_k2_small_budget_clique_lister_wins_round_one():
    k2 = complete_graph(2)
    trace = play_game(k2.digraph, HALF, CliqueLister(2), UndirectedPainter(k2))
    assert trace.winner == "lister"
    assert len(trace.rounds) == 1


def test_empty_graph_immediate_painter_win():
    g = build_digraph(0, [])
    trace = play_game(g, Fraction(1), GreedyLister(), GeneralPainter(g))
    assert trace.winner == "painter" and trace.rounds == ()


def test_budgets_must_be_positive():
    g = build_digraph(1, [])
    with pytest.raises(ValueError):
        play_game(g, 0, GreedyLister(), GeneralPainter(g))


def test_winner_exclusivity_painter_checked_first():
    # final round colors everything while a vertex crosses its budget:
    # the colored predicate wins because no uncolored witness remains
    g = build_digraph(1, [])
    moves = [make_move({0}, {0: Fraction(1)})]
    trace = play_game(g, Fraction(1), _FixedLister(moves), _FixedPainter([{0}]))
    assert trace.winner == "painter"
    assert trace.rounds[0].tolerance[0] == Fraction(1)


def test_spent_accumulates_for_all_presented():
    k2 = complete_graph(2)
    moves = [
        make_move({0, 1}, {0: HALF, 1: HALF}),
        make_move({1}, {1: HALF}),
    ]
    trace = play_game(k2.digraph, Fraction(1), _FixedLister(moves), UndirectedPainter(k2))
    assert trace.winner == "painter"
    # budget conservation, recomputed from the trace
    spent = {0: Fraction(0), 1: Fraction(0)}
    for r in trace.rounds:
        for v in r.presented:
            spent[v] += r.tolerance[v]
    assert spent == {0: HALF, 1: Fraction(1)}


# ---------------------------------------------------------------------------
# validation


def test_validate_rejects_monochromatic_overload():
    tri = directed_cycle(3)
    state = GameState(tri, Fraction(2))
    move = make_move({0, 1, 2}, {v: HALF for v in range(3)})
    report = validate_painter_response(state, move, {0, 1})
    assert not report
    assert report.violations == ((0, 1, HALF),)


def test_validate_empty_selection_ok():
    tri = directed_cycle(3)
    state = GameState(tri, Fraction(2))
    move = make_move({0}, {0: Fraction(0)})
    assert validate_painter_response(state, move, set())


def test_validate_sink_zero_tolerance_ok():
    g = build_digraph(2, [(1, 0, 1)])
    state = GameState(g, Fraction(1))
    move = make_move({0}, {0: Fraction(0)})
    assert validate_painter_response(state, move, {0})


def test_validate_rejects_selection_outside_presentation():
    k2 = complete_graph(2)
    state = GameState(k2.digraph, Fraction(1))
    move = make_move({0}, {0: Fraction(1)})
    report = validate_painter_response(state, move, {0, 1})
    assert not report and report.not_presented == (1,)


def test_rule_violation_raises():
    k2 = complete_graph(2)
    moves = [make_move({0, 1}, {0: HALF, 1: HALF})]
    with pytest.raises(RuleViolation):
        play_game(k2.digraph, Fraction(1), _FixedLister(moves), _FixedPainter([{0, 1}]))


# ---------------------------------------------------------------------------
# protocol failure modes


def test_lister_exhausted():
    k2 = complete_graph(2)
    moves = [make_move({0}, {0: HALF})]
    with pytest.raises(ListerExhausted):
        play_game(k2.digraph, Fraction(1), _FixedLister(moves), UndirectedPainter(k2))


def test_skip_limit():
    k2 = complete_graph(2)

    class NegativeForever:
        def next_move(self, state):
            return make_move({0}, {0: Fraction(-1)})

    with pytest.raises(SkipLimitExceeded):
        play_game(k2.digraph, Fraction(1), NegativeForever(), UndirectedPainter(k2), skip_cap=10)


def test_stalled_game():
    k2 = complete_graph(2)

    class ZeroForever:
        def next_move(self, state):
            return make_move({0, 1}, {0: Fraction(0), 1: Fraction(0)})

    with pytest.raises(StalledGame):
        play_game(k2.digraph, Fraction(1), ZeroForever(), _FixedPainter([set()] * 50))


def test_round_cap(monkeypatch):
    k2 = complete_graph(2)

    class Crumbs:
        # positive but shrinking tolerances against a painter that never colors
        def __init__(self):
            self.t = Fraction(1, 4)

        def next_move(self, state):
            self.t /= 2
            return make_move({0}, {0: self.t})

    monkeypatch.setenv(engine.ROUND_CAP_ENV, "25")
    with pytest.raises(RoundCapExceeded):
        play_game(k2.digraph, Fraction(1), Crumbs(), _FixedPainter([set()] * 100))


# ---------------------------------------------------------------------------
# traces


def test_trace_roundtrip_and_replay():
    k2 = complete_graph(2)
    trace = play_game(k2.digraph, Fraction(1), GreedyLister(), UndirectedPainter(k2))
    text = trace.to_text()
    parsed = GameTrace.from_text(text, budgets=trace.budgets)
    assert parsed.rounds == trace.rounds
    assert parsed.winner == trace.winner
    replayed = replay_trace(k2.digraph, Fraction(1), trace)
    assert replayed.to_text() == text


def test_trace_serialization_is_stable():
    tri = directed_cycle(3)
    a = play_game(tri, Fraction(2), RandomLister(3), GeneralPainter(tri)).to_text()
    b = play_game(tri, Fraction(2), RandomLister(3), GeneralPainter(tri)).to_text()
    assert a == b


def test_replay_detects_tampering():
    k2 = complete_graph(2)
    trace = play_game(k2.digraph, Fraction(1), GreedyLister(), UndirectedPainter(k2))
    bad_rounds = list(trace.rounds)
    first = bad_rounds[0]
    bad_rounds[0] = type(first)(
        number=first.number,
        presented=first.presented,
        tolerance=first.tolerance,
        selected=(0, 1),  # forged: violates the constraint
    )
    forged = GameTrace(tuple(bad_rounds), trace.winner, trace.coloring, trace.budgets)
    with pytest.raises(RuleViolation):
        replay_trace(k2.digraph, Fraction(1), forged)


def test_random_replay_determinism():
    rng = random.Random(0)
    for trial in range(20):
        g = random_digraph(rng.randint(1, 8), rng)
        trace = play_game(g, Fraction(2), RandomLister(trial), GeneralPainter(g))
        assert replay_trace(g, Fraction(2), trace).to_text() == trace.to_text()


# ---------------------------------------------------------------------------
# fixed-tolerance reduction


def test_kappa_game_budgets():
    g = directed_cycle(3)
    budgets, wrap = kappa_game(g, HALF, 4)
    assert budgets == {v: Fraction(2) for v in range(3)}
    budgets, _ = kappa_game(g, Fraction(1, 3), 3)
    assert budgets == {v: Fraction(1) for v in range(3)}


def test_kappa_game_rejects_zero_tolerance_and_bad_counts():
    g = directed_cycle(3)
    with pytest.raises(ValueError):
        kappa_game(g, 0, 2)
    with pytest.raises(ValueError):
        kappa_game(g, HALF, 0)
    with pytest.raises(ValueError):
        kappa_game(g, HALF, {0: 1, 1: 1, 2: "2"})


def test_kappa_wrapper_forces_tolerances():
    g = directed_cycle(2)
    budgets, wrap = kappa_game(g, HALF, 2)
    wrapped = wrap(GreedyLister())
    move = wrapped.next_move(GameState(g, budgets))
    assert move.tolerance == {0: HALF, 1: HALF}


def test_kappa_win_matches_presentation_count():
    # K_2 at tolerance 1/2 with one allowed presentation: lister wins and the
    # witness was presented exactly once
    k2 = complete_graph(2)
    budgets, wrap = kappa_game(k2.digraph, HALF, 1)
    trace = play_game(k2.digraph, budgets, wrap(CliqueLister(2)), UndirectedPainter(k2))
    assert trace.winner == "lister"
    assert len(trace.rounds) == 1


# ---------------------------------------------------------------------------
# colorings


def test_coloring_extraction_requires_painter_win():
    k2 = complete_graph(2)
    trace = play_game(k2.digraph, HALF, CliqueLister(2), UndirectedPainter(k2))
    with pytest.raises(ValueError):
        coloring_from_trace(trace)


def test_verify_coloring_k2():
    k2 = complete_graph(2)
    assert verify_coloring(k2, {0: 1, 1: 2}, HALF)
    report = verify_coloring(k2, {0: 1, 1: 1}, HALF)
    assert not report and len(report.violations) == 2
    assert verify_coloring(k2, {0: 1, 1: 1}, Fraction(1))  # tolerance >= 1


def test_verify_coloring_per_round_tolerances():
    k2 = complete_graph(2)
    trace = play_game(k2.digraph, Fraction(1), GreedyLister(), UndirectedPainter(k2))
    coloring = coloring_from_trace(trace)
    assert verify_coloring(k2, coloring, tolerance_of_trace(trace))


def test_verify_coloring_requires_total_map():
    with pytest.raises(ValueError):
        verify_coloring(complete_graph(2), {0: 1}, HALF)


def test_verify_ranked_coloring():
    k2 = complete_graph(2)
    ranks = {0: {1: Fraction(2)}, 1: {1: Fraction(1, 4)}}
    report = verify_ranked_coloring(k2, {0: 1, 1: 1}, ranks)
    assert not report
    assert report.violations == ((1, 1, Fraction(1, 4)),)
    ranks = {0: {1: Fraction(2)}, 1: {1: Fraction(1)}}
    assert verify_ranked_coloring(k2, {0: 1, 1: 1}, ranks)


def test_painter_won_games_verify_against_presented_tolerances():
    rng = random.Random(12)
    for trial in range(25):
        g = random_digraph(rng.randint(1, 9), rng)
        trace = play_game(g, Fraction(2), RandomLister(trial), GeneralPainter(g))
        assert trace.winner == "painter"
        coloring = coloring_from_trace(trace)
        assert verify_coloring(g, coloring, tolerance_of_trace(trace))
