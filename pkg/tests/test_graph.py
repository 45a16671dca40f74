import math
import random
from fractions import Fraction

import pytest
from hypothesis import given

from majority_paint.graph import (
    Condensation,
    GraphError,
    UndirectedView,
    WeightedDigraph,
    build_digraph,
    build_undirected,
    complete_graph,
    condensation,
    directed_cycle,
    dumps_graph,
    induced_subgraph,
    loads_graph,
    normalize_out_weights,
    parse_number,
    format_number,
    random_digraph,
    random_multi_scc,
    random_strongly_connected,
    rotational_tournament,
)

from .strategies import digraphs


def test_build_directed_triangle():
    g = build_digraph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    assert g.n == 3
    assert g.has_edge(0, 1) and not g.has_edge(1, 0)


def test_build_k2_symmetric():
    g = build_digraph(2, [(0, 1, 1), (1, 0, 1)])
    assert g.is_symmetric()
    UndirectedView(g)  # validates


@pytest.mark.parametrize(
    "n,edges",
    [
        (2, [(0, 1, 0)]),  # non-positive weight
        (2, [(0, 1, -1.5)]),
        (2, [(0, 1, float("inf"))]),
        (2, [(0, 1, float("nan"))]),
        (2, [(0, 0, 1)]),  # self-loop
        (2, [(0, 1, 1), (0, 1, 2)]),  # duplicate pair
        (2, [(0, 2, 1)]),  # out of range
        (1, [(0, -1, 1)]),
    ],
)
def test_build_rejects(n, edges):
    with pytest.raises(GraphError):
        build_digraph(n, edges)


def test_out_weight():
    tri = directed_cycle(3)
    assert tri.out_weight(0) == 1
    lonely = build_digraph(1, [])
    assert lonely.out_weight(0) == 0
    star = build_digraph(3, [(0, 1, 0.5), (0, 2, 1.5)])
    assert star.out_weight(0) == 2.0


def test_weight_into():
    g = build_digraph(4, [(0, 1, 2), (0, 2, 3), (0, 3, 5)])
    assert g.weight_into(0, {1, 3}) == 7
    assert g.weight_into(0, set()) == 0
    assert g.weight_into(1, {0}) == 0


def test_normalize_already_normalized():
    tri = directed_cycle(3)
    assert normalize_out_weights(tri) == tri


def test_normalize_proportional():
    g = build_digraph(3, [(0, 1, 2), (0, 2, 2), (1, 0, 5), (2, 0, 5)])
    norm = normalize_out_weights(g)
    assert norm.weight(0, 1) == Fraction(1, 2)
    assert norm.weight(0, 2) == Fraction(1, 2)
    assert norm.weight(1, 0) == 1
    assert norm.weight(2, 0) == 1


def test_normalize_rejects_sink():
    g = build_digraph(2, [(0, 1, 1)])
    with pytest.raises(GraphError, match="vertex 1"):
        normalize_out_weights(g)


def test_undirected_view_rejects_asymmetry():
    with pytest.raises(GraphError):
        UndirectedView(build_digraph(2, [(0, 1, 1), (1, 0, 2)]))
    with pytest.raises(GraphError):
        UndirectedView(build_digraph(2, [(0, 1, 1)]))


def test_condensation_strongly_connected():
    assert len(condensation(directed_cycle(3))) == 1


def test_condensation_path():
    c = condensation(build_digraph(3, [(0, 1, 1), (1, 2, 1)]))
    assert c.components == ((0,), (1,), (2,))


def _reachability_sccs(g):
    """Warshall-closure oracle for component structure."""
    n = g.n
    reach = [[u == v for v in range(n)] for u in range(n)]
    for u, v, _ in g.edges:
        reach[u][v] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True
    comps = {}
    for v in range(n):
        key = frozenset(u for u in range(n) if reach[v][u] and reach[u][v])
        comps[key] = sorted(key)
    return {frozenset(c) for c in comps.values()}


def test_condensation_two_cycles_bridged():
    # two 2-cycles plus one bridge edge: source component first
    g = build_digraph(4, [(0, 1, 1), (1, 0, 1), (2, 3, 1), (3, 2, 1), (1, 2, 1)])
    c = condensation(g)
    assert c.components == ((0, 1), (2, 3))
    assert {frozenset(comp) for comp in c.components} == _reachability_sccs(g)


@given(digraphs(max_n=8))
def test_condensation_matches_reachability_oracle(g):
    c = condensation(g)
    assert {frozenset(comp) for comp in c.components} == _reachability_sccs(g)
    # partition
    flat = sorted(v for comp in c.components for v in comp)
    assert flat == list(range(g.n))


@given(digraphs(max_n=8))
def test_condensation_order_property(g):
    c = condensation(g)
    for u, v, _ in g.edges:
        assert c.component_of[u] <= c.component_of[v]


@given(digraphs(max_n=8))
def test_normalize_then_out_weight_is_one(g):
    if any(g.out_weight(v) == 0 for v in range(g.n)):
        with pytest.raises(GraphError):
            normalize_out_weights(g)
        return
    norm = normalize_out_weights(g)
    for v in range(g.n):
        assert abs(norm.out_weight(v) - 1) <= 1e-12
    assert len(norm.edges) == len(g.edges)


def test_normalize_out_weight_random_floats():
    rng = random.Random(5)
    for _ in range(25):
        g = random_strongly_connected(
            rng.randint(2, 50), rng, weight=lambda r: r.uniform(0.1, 3.0)
        )
        norm = normalize_out_weights(g)
        assert all(abs(norm.out_weight(v) - 1) <= 1e-12 for v in range(g.n))


def test_induced_subgraph():
    tri = directed_cycle(3)
    sub, originals = induced_subgraph(tri, {0, 1})
    assert originals == (0, 1)
    assert sub.edges == ((0, 1, 1),)
    empty, _ = induced_subgraph(tri, set())
    assert empty.n == 0
    full, originals = induced_subgraph(tri, range(3))
    assert full == tri and originals == (0, 1, 2)


@given(digraphs(max_n=7))
def test_induced_full_is_identity(g):
    full, _ = induced_subgraph(g, range(g.n))
    assert full == g


def test_named_graphs():
    k3 = complete_graph(3)
    assert len(k3.undirected_edges()) == 3
    t5 = rotational_tournament(5)
    assert all(len(t5.successors(v)) == 2 for v in range(5))
    # tournament: exactly one direction per pair
    for u in range(5):
        for v in range(u + 1, 5):
            assert t5.has_edge(u, v) != t5.has_edge(v, u)
    with pytest.raises(GraphError):
        rotational_tournament(4)


def test_random_models_deterministic():
    a = random_digraph(8, random.Random(3))
    b = random_digraph(8, random.Random(3))
    assert a == b
    g = random_multi_scc(9, random.Random(4), blocks=3)
    assert len(condensation(g)) >= 3
    sc = random_strongly_connected(7, random.Random(11))
    assert len(condensation(sc)) == 1


def test_parse_and_format_numbers():
    assert parse_number("3/4") == Fraction(3, 4)
    assert parse_number("0.5") == 0.5
    assert parse_number("0.5", exact=True) == Fraction(1, 2)
    assert parse_number("7") == 7
    assert format_number(Fraction(3, 4)) == "3/4"
    assert format_number(Fraction(4, 2)) == "2"
    assert format_number(0.25) == "0.25"


def test_graph_file_roundtrip():
    g = build_digraph(3, [(0, 1, Fraction(1, 3)), (1, 2, 0.25), (2, 0, 2)])
    text = dumps_graph(g)
    assert text.startswith("digraph n=3")
    again = loads_graph(text)
    assert again == g

    view = build_undirected(3, [(0, 2, Fraction(5, 2)), (1, 2, 1)])
    text = dumps_graph(view)
    assert text.startswith("undirected n=3")
    again = loads_graph(text)
    assert isinstance(again, UndirectedView)
    assert again == view


def test_graph_file_exact_mode_and_errors():
    g = loads_graph("digraph n=2\n0 1 0.1\n", exact=True)
    assert g.weight(0, 1) == Fraction(1, 10)
    with pytest.raises(GraphError):
        loads_graph("n=2\n0 1 1\n")
    with pytest.raises(GraphError):
        loads_graph("digraph n=2\n0 1\n")
    with pytest.raises(GraphError):
        loads_graph("")
    # comments and blank lines are fine
    g = loads_graph("# a file\n\ndigraph n=2\n0 1 1/2\n")
    assert g.weight(0, 1) == Fraction(1, 2)
