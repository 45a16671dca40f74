"""Spectral machinery for strongly connected digraphs.

A strongly connected digraph whose out-weights are normalized to 1 has a
row-stochastic adjacency matrix ``T`` (``T[v, w] = weight(v, w)``), which
is irreducible and therefore has a positive left eigenvector ``x`` with
eigenvalue 1 (``x @ T == x``).  That eigenvector turns the digraph into an
undirected graph carrying equivalent majority structure at half the
tolerance: the symmetrized weight of the pair ``{v, w}`` is

    x[v] * T[v, w] + x[w] * T[w, v]

and the total symmetrized weight incident to each vertex ``v`` is exactly
``2 * x[v]``.

All functions here are pure; computations are dense double precision
(desk-scale graphs), solved directly rather than by power iteration, which
fails to converge on periodic digraphs such as directed cycles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import (
    UndirectedView,
    WeightedDigraph,
    build_undirected,
    condensation,
)

DEFAULT_RESIDUAL_TOL = 1e-10
ROW_SUM_TOL = 1e-12
INCIDENT_IDENTITY_TOL = 1e-9


class SpectralError(ValueError):
    """Input outside this module's domain, or a failed tolerance."""


def transition_matrix(g: WeightedDigraph, *, check: bool = True) -> np.ndarray:
    """Dense adjacency matrix of a normalized digraph.

    Parameters
    ----------
    g : WeightedDigraph
        Digraph whose out-weights each sum to 1.
    check : bool
        Verify row sums are within ``1e-12`` of 1 (raises otherwise).

    Returns
    -------
    (n, n) float64 ndarray with ``T[v, w] = weight(v, w)``.
    """
    T = np.zeros((g.n, g.n), dtype=np.float64)
    for u, v, w in g.edges:
        T[u, v] = float(w)
    if check:
        sums = T.sum(axis=1)
        bad = np.nonzero(np.abs(sums - 1.0) > ROW_SUM_TOL)[0]
        if bad.size:
            raise SpectralError(
                f"rows not normalized (vertex {bad[0]}: out-weight {sums[bad[0]]!r})"
            )
    return T


@dataclass(frozen=True)
class LeftEigenvector:
    """Positive left eigenvector for eigenvalue 1, normalized to sum 1.

    ``residual`` is the max-norm of ``x @ T - x``.
    """

    values: tuple[float, ...]
    residual: float

    def __getitem__(self, v: int) -> float:
        return self.values[v]

    def __len__(self) -> int:
        return len(self.values)


def left_eigenvector(
    g: WeightedDigraph, tol: float = DEFAULT_RESIDUAL_TOL
) -> LeftEigenvector:
    """Solve ``x @ T == x`` with ``x > 0`` and ``sum(x) == 1``.

    Parameters
    ----------
    g : WeightedDigraph
        Strongly connected, out-weights normalized to 1.
    tol : float
        Maximum accepted residual ``max|x @ T - x|``.

    Raises
    ------
    SpectralError
        If the graph is not strongly connected, rows are not normalized,
        or the residual exceeds ``tol``.  A failure here is an error, not
        a warning: downstream strategy guarantees rest on the identity.

    Notes
    -----
    The system ``(T^t - I) x = 0`` is solved densely with its last row
    replaced by the normalization ``sum(x) = 1``.  Because the columns of
    ``T^t - I`` each sum to 0, the replaced system is provably nonsingular
    whenever ``T`` is irreducible.
    """
    if len(condensation(g)) != 1 or g.n < 2:
        raise SpectralError("graph is not strongly connected (n >= 2 required)")
    T = transition_matrix(g)
    n = g.n
    M = T.T - np.eye(n)
    M[n - 1, :] = 1.0
    rhs = np.zeros(n)
    rhs[n - 1] = 1.0
    x = np.linalg.solve(M, rhs)
    if not np.all(x > 0):
        raise SpectralError("eigenvector not strictly positive")
    x = x / x.sum()
    residual = float(np.abs(x @ T - x).max())
    if residual > tol:
        raise SpectralError(f"residual {residual:.3e} above tolerance {tol:.3e}")
    return LeftEigenvector(tuple(float(v) for v in x), residual)


def symmetrized_graph(g: WeightedDigraph, x: LeftEigenvector) -> UndirectedView:
    """Undirected graph with pair weights ``x[v]*T[v,w] + x[w]*T[w,v]``.

    The pair ``{v, w}`` is present iff at least one of the directed edges
    exists.  Verifies the incident-weight identity (total weight at ``v``
    equals ``2 * x[v]``) to within ``1e-9`` and raises on failure.
    """
    if len(x) != g.n:
        raise SpectralError("eigenvector length does not match the graph")
    pair_weight: dict[tuple[int, int], float] = {}
    for u, v, w in g.edges:
        key = (u, v) if u < v else (v, u)
        pair_weight[key] = pair_weight.get(key, 0.0) + x[u] * float(w)
    view = build_undirected(g.n, ((u, v, w) for (u, v), w in sorted(pair_weight.items())))
    for v in range(g.n):
        incident = view.incident_weight(v)
        if abs(incident - 2.0 * x[v]) > INCIDENT_IDENTITY_TOL:
            raise SpectralError(
                f"incident weight at {v} is {incident!r}, expected {2.0 * x[v]!r}"
            )
    return view
