import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from majority_paint.engine import play_game, validate_painter_response, GameState
from majority_paint.graph import (
    WeightedDigraph,
    build_digraph,
    build_undirected,
    complete_graph,
    directed_cycle,
    random_digraph,
    random_undirected,
)
from majority_paint.lister import GreedyLister, RandomLister, make_move
from majority_paint.painter import (
    EdgelessPainter,
    GeneralPainter,
    StronglyConnectedPainter,
    StrategyError,
    UndirectedPainter,
    make_painter,
)

from .strategies import undirected_graphs

HALF = Fraction(1, 2)


def test_undirected_k2_two_rounds():
    painter = UndirectedPainter(complete_graph(2))
    assert painter.respond({0, 1}, {0: HALF, 1: HALF}) == frozenset({0})
    assert painter.respond({1}, {1: HALF}) == frozenset({1})


def test_undirected_tolerance_at_least_one_colors_everything():
    rng = random.Random(3)
    for _ in range(10):
        view = random_undirected(rng.randint(1, 8), rng)
        painter = UndirectedPainter(view)
        X = set(range(view.n))
        assert painter.respond(X, {v: Fraction(1) for v in X}) == frozenset(X)


def test_undirected_rejects_colored_presentation():
    painter = UndirectedPainter(complete_graph(2))
    painter.respond({0}, {0: Fraction(1)})
    with pytest.raises(StrategyError):
        painter.respond({0, 1}, {0: HALF, 1: HALF})


def test_edgeless_painter():
    lonely = build_digraph(2, [])
    painter = EdgelessPainter(lonely)
    assert painter.respond({0, 1}, {0: 0, 1: Fraction(3)}) == frozenset({0, 1})
    with pytest.raises(StrategyError):
        EdgelessPainter(directed_cycle(2))


def test_scc_painter_triangle_game():
    tri = directed_cycle(3)
    painter = StronglyConnectedPainter(tri)
    # all three presented at tolerance 1/2: inner ranks are 1/6 < 1/3, so the
    # selection is a single vertex each round
    y1 = painter.respond({0, 1, 2}, {v: HALF for v in range(3)})
    assert len(y1) == 1
    rest = {0, 1, 2} - y1
    y2 = painter.respond(rest, {v: HALF for v in rest})
    assert len(y2) == 1
    last = rest - y2
    y3 = painter.respond(last, {v: HALF for v in last})
    assert y3 == frozenset(last)


def test_scc_painter_two_cycle_tolerance_one():
    # inner rank is tau * x = 1/2 against a symmetrized edge of weight 1,
    # so one endpoint is selected per round; the game still ends inside the
    # budget-2 guarantee
    painter = StronglyConnectedPainter(directed_cycle(2))
    first = painter.respond({0, 1}, {0: Fraction(1), 1: Fraction(1)})
    assert first == frozenset({0})
    trace = play_game(
        directed_cycle(2),
        Fraction(2),
        GreedyLister(),
        StronglyConnectedPainter(directed_cycle(2)),
    )
    assert trace.winner == "painter" and len(trace.rounds) == 2


def test_scc_painter_zero_tolerance_excludes_after_neighbor_selected():
    painter = StronglyConnectedPainter(directed_cycle(2))
    assert painter.respond({0, 1}, {0: Fraction(1), 1: 0}) == frozenset({0})


def test_general_matches_scc_on_strongly_connected():
    tri = directed_cycle(3)
    a = StronglyConnectedPainter(tri)
    b = GeneralPainter(tri)
    tol = {v: HALF for v in range(3)}
    assert a.respond({0, 1, 2}, tol) == b.respond({0, 1, 2}, tol)


def test_general_path_hand_trace():
    # sink component colors first; the source vertex is dropped this round
    # because its allowance 1/2*1 - 1 goes negative, then colored next round
    path = build_digraph(2, [(0, 1, 1)])
    painter = GeneralPainter(path)
    assert painter.respond({0, 1}, {0: HALF, 1: HALF}) == frozenset({1})
    assert painter.respond({0}, {0: HALF}) == frozenset({0})


def test_general_reverse_topological_processing():
    # 0 -> 1 -> 2 as singletons: with full tolerance, later components color
    # first and earlier vertices are charged for edges into them
    chain = build_digraph(3, [(0, 1, 1), (1, 2, 1)])
    painter = GeneralPainter(chain)
    tol = {v: Fraction(1) for v in range(3)}
    assert painter.respond({0, 1, 2}, tol) == frozenset({0, 1, 2})


def test_general_audit_identity_exact():
    rng = random.Random(17)
    g = random_digraph(8, rng)
    painter = GeneralPainter(g)
    X = set(range(8))
    tol = {v: Fraction(rng.randint(0, 8), 8) for v in X}
    painter.respond(X, tol)
    assert painter.last_audit  # at least one component has internal edges
    for v, charged, total in painter.last_audit:
        assert charged == total  # exact rational bookkeeping


def test_general_audit_identity_float():
    rng = random.Random(19)
    g = random_digraph(9, rng, weight=lambda r: r.uniform(0.2, 3.0))
    painter = GeneralPainter(g)
    X = set(range(9))
    painter.respond(X, {v: rng.uniform(0.0, 1.0) for v in X})
    for v, charged, total in painter.last_audit:
        assert abs(charged - total) <= 1e-9


def _assert_round_budgets(view):
    """For every round: unselected presented vertices lost more neighbor
    weight than their rank allowed (the accounting behind the guarantee)."""

    def check(state, move, selected):
        for v in move.vertices - selected:
            lost = view.digraph.weight_into(v, selected)
            rank = move.tolerance[v] * view.incident_weight(v)
            assert lost > rank

    return check


@given(undirected_graphs(max_n=7, min_n=1))
@settings(max_examples=25)
def test_theorem_guarantee_undirected_budget_one(view):
    for seed in (0, 1):
        lister = GreedyLister() if seed == 0 else RandomLister(seed)
        trace = play_game(
            view.digraph,
            Fraction(1),
            lister,
            UndirectedPainter(view),
            on_round=_assert_round_budgets(view),
        )
        assert trace.winner == "painter"


def test_theorem_guarantee_directed_budget_two():
    rng = random.Random(99)
    for trial in range(60):
        g = random_digraph(rng.randint(1, 9), rng)
        lister = GreedyLister() if trial % 2 == 0 else RandomLister(trial)
        trace = play_game(g, Fraction(2), lister, GeneralPainter(g))
        assert trace.winner == "painter"


def test_responses_always_validate():
    rng = random.Random(7)
    for trial in range(40):
        g = random_digraph(rng.randint(1, 8), rng)
        painter = GeneralPainter(g)
        state = GameState(g, Fraction(2))
        uncolored = set(range(g.n))
        while uncolored:
            xs = {v for v in uncolored if rng.random() < 0.7} or set(uncolored)
            move = make_move(xs, {v: Fraction(rng.randint(0, 8), 8) for v in xs})
            y = painter.respond(set(move.vertices), dict(move.tolerance))
            assert validate_painter_response(state, move, y)
            for v in y:
                state.color[v] = 1
            uncolored -= y
            if not move.tolerance or all(t == 0 for t in move.tolerance.values()):
                if not y:
                    break


def test_strategies_are_markov_in_colored_set():
    # response_for with an explicit colored set equals the stateful reply
    rng = random.Random(31)
    g = random_digraph(7, rng)
    a = GeneralPainter(g)
    b = GeneralPainter(g)
    tol = {v: HALF for v in range(7)}
    y1 = a.respond(set(range(7)), tol)
    assert b.response_for(set(), set(range(7)), tol) == y1
    b.mark_colored(y1)
    rest = set(range(7)) - y1
    if rest:
        tol = {v: HALF for v in rest}
        assert a.respond(rest, tol) == b.respond(rest, tol)


def test_make_painter_factory():
    k2 = complete_graph(2)
    assert isinstance(make_painter("undirected", k2), UndirectedPainter)
    assert isinstance(make_painter("general", k2), GeneralPainter)
    assert isinstance(make_painter("scc", directed_cycle(3)), StronglyConnectedPainter)
    assert isinstance(make_painter("edgeless", build_digraph(2, [])), EdgelessPainter)
    with pytest.raises(ValueError):
        make_painter("nope", k2)
