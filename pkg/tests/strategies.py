"""Hypothesis strategies shared across the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from majority_paint.graph import WeightedDigraph, build_undirected


@st.composite
def weights(draw, exact=True):
    if exact:
        return Fraction(draw(st.integers(1, 12)), draw(st.integers(1, 4)))
    return draw(st.floats(0.05, 8.0, allow_nan=False, allow_infinity=False))


@st.composite
def digraphs(draw, max_n=7, exact=True):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs)) if pairs else st.just(set()))
    return WeightedDigraph(n, [(u, v, draw(weights(exact))) for u, v in chosen])


@st.composite
def undirected_graphs(draw, max_n=7, min_n=0, exact=True):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs)) if pairs else st.just(set()))
    return build_undirected(n, [(u, v, draw(weights(exact))) for u, v in chosen])


@st.composite
def rank_instances(draw, max_n=6):
    """(view, X, rho) with exact rational ranks, negative values included."""
    view = draw(undirected_graphs(max_n=max_n, min_n=1))
    n = view.n
    X = frozenset(draw(st.sets(st.integers(0, n - 1), min_size=1)))
    rho = {
        v: Fraction(draw(st.integers(-16, 48)), draw(st.sampled_from([1, 2, 3, 4])))
        for v in X
    }
    return view, X, rho
