import random

import numpy as np
import pytest

from majority_paint.graph import (
    WeightedDigraph,
    build_digraph,
    directed_cycle,
    normalize_out_weights,
    random_strongly_connected,
)
from majority_paint.spectral import (
    SpectralError,
    left_eigenvector,
    symmetrized_graph,
    transition_matrix,
)


def test_transition_matrix_checks_rows():
    tri = directed_cycle(3)
    T = transition_matrix(tri)
    assert T[0, 1] == 1 and T.sum() == 3
    with pytest.raises(SpectralError, match="vertex 1"):
        transition_matrix(build_digraph(2, [(0, 1, 1), (1, 0, 0.5)]))


def test_directed_triangle_uniform():
    x = left_eigenvector(directed_cycle(3))
    assert x.values == pytest.approx((1 / 3, 1 / 3, 1 / 3))
    assert x.residual <= 1e-10


def test_two_cycle_uniform():
    x = left_eigenvector(directed_cycle(2))
    assert x.values == pytest.approx((0.5, 0.5))


def test_three_vertex_hand_solved():
    g = build_digraph(3, [(0, 1, 0.5), (0, 2, 0.5), (1, 0, 1), (2, 0, 1)])
    x = left_eigenvector(g)
    assert x.values == pytest.approx((0.5, 0.25, 0.25))
    view = symmetrized_graph(g, x)
    weights = {(u, v): w for u, v, w in view.undirected_edges()}
    assert weights == {(0, 1): pytest.approx(0.5), (0, 2): pytest.approx(0.5)}
    assert [view.incident_weight(v) for v in range(3)] == pytest.approx([1.0, 0.5, 0.5])


def test_rejects_not_strongly_connected():
    with pytest.raises(SpectralError, match="strongly connected"):
        left_eigenvector(build_digraph(2, [(0, 1, 1)]))
    with pytest.raises(SpectralError, match="strongly connected"):
        left_eigenvector(build_digraph(1, []))


def test_rejects_unnormalized():
    g = build_digraph(2, [(0, 1, 2), (1, 0, 1)])
    with pytest.raises(SpectralError):
        left_eigenvector(g)


def test_periodic_graphs_are_fine():
    # power iteration would not converge on even cycles; the direct solve does
    x = left_eigenvector(directed_cycle(6))
    assert x.values == pytest.approx([1 / 6] * 6)


def _numpy_eig_oracle(g):
    T = transition_matrix(g)
    vals, vecs = np.linalg.eig(T.T)
    i = int(np.argmin(np.abs(vals - 1.0)))
    x = np.real(vecs[:, i])
    x = x / x.sum()
    return x


def test_random_instances_match_numpy_eig():
    rng = random.Random(23)
    for _ in range(30):
        g = normalize_out_weights(random_strongly_connected(rng.randint(2, 30), rng))
        x = left_eigenvector(g)
        assert np.allclose(x.values, _numpy_eig_oracle(g), atol=1e-8)


def test_incident_identity_random():
    rng = random.Random(29)
    for _ in range(50):
        g = normalize_out_weights(random_strongly_connected(rng.randint(2, 30), rng))
        x = left_eigenvector(g, tol=1e-10)
        view = symmetrized_graph(g, x)
        for v in range(g.n):
            assert abs(view.incident_weight(v) - 2 * x[v]) <= 1e-9
        # symmetry is structural: mirrored weights are the same object
        for u, v, w in view.digraph.edges:
            assert view.digraph.weight(v, u) == w


def test_symmetrized_rejects_mismatched_vector():
    g = directed_cycle(3)
    x = left_eigenvector(g)
    with pytest.raises(SpectralError):
        symmetrized_graph(directed_cycle(4), x)
