"""Kernel selection on weighted undirected graphs.

Given a presented vertex set ``X`` and a real rank ``rho(v)`` for every
``v in X``, a *kernel* is a subset ``Y`` of ``X`` whose membership is
exactly characterised by rank versus selected-neighbor weight:

    v in Y  <=>  rho(v) >= w(v -> Y)        for every v in X,

where ``w(v -> Y)`` is the total weight of edges from ``v`` into ``Y``.
A kernel always exists: any subset maximising the potential

    cost(Y) = sum_{v in Y} (2*rho(v) - w(v -> X)) + weight of the cut (Y, X\\Y)

and, among the cost maximisers, of maximum size, satisfies the
characterisation.  ``select_kernel`` returns such a maximiser; plain
single-vertex local search reaches *a* kernel but can stall below the
maximum cost, so the maximiser is completed by exact branch-and-bound.

Rational inputs (``int``/``Fraction`` weights and ranks) are handled with
exact arithmetic throughout: the instance is rescaled to integers (the set
of condition-satisfying subsets is invariant under uniform positive
scaling) and compared without rounding.

All functions are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

import numpy as np

from . import _accel
from .graph import Number, UndirectedView

#: Exhaustive enumeration refuses presented sets larger than this.
DEFAULT_BRUTE_FORCE_BOUND = 20

_INT64_SAFE = 1 << 62


class PresentedSetTooLarge(ValueError):
    """Presented set exceeds the configured brute-force bound."""


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of checking the rank characterisation at every vertex.

    ``violations`` lists ``(vertex, in_selection, rank, neighbor_weight)``
    for each vertex on the wrong side.
    """

    ok: bool
    violations: tuple[tuple[int, bool, Number, Number], ...]

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class KernelCertificate:
    """A selected kernel with the quantities that certify it.

    ``neighbor_weight[v]`` is ``w(v -> Y)`` and ``presented_weight[v]`` is
    ``w(v -> X)`` for every presented vertex; their difference is the
    weight from ``v`` to the unselected part of ``X``.
    """

    members: frozenset[int]
    cost: Number
    neighbor_weight: dict[int, Number]
    presented_weight: dict[int, Number]

    def excluded_weight(self, v: int) -> Number:
        return self.presented_weight[v] - self.neighbor_weight[v]


def _require_ranks(X: frozenset[int], rho: Mapping[int, Number]) -> None:
    missing = [v for v in X if v not in rho]
    if missing:
        raise ValueError(f"rank undefined for presented vertices {sorted(missing)}")


def cost_of(
    g: UndirectedView,
    X: Iterable[int],
    rho: Mapping[int, Number],
    Y: Iterable[int],
) -> Number:
    """Potential of ``Y`` within ``X``: vertex costs plus the cut weight.

    Each undirected cut edge is counted once, in its ``(v in Y, w not in Y)``
    orientation.
    """
    X = frozenset(X)
    Y = frozenset(Y)
    if not Y <= X:
        raise ValueError("selection must be a subset of the presented set")
    _require_ranks(X, rho)
    outside = X - Y
    total = 0
    for v in sorted(Y):
        total += 2 * rho[v] - g.weight_into(v, X)
        total += g.weight_into(v, outside)
    return total


def kernel_condition_holds(
    g: UndirectedView,
    X: Iterable[int],
    rho: Mapping[int, Number],
    Y: Iterable[int],
) -> ConditionReport:
    """Check both directions of the membership characterisation on ``X``."""
    X = frozenset(X)
    Y = frozenset(Y)
    if not Y <= X:
        raise ValueError("selection must be a subset of the presented set")
    _require_ranks(X, rho)
    violations = []
    for v in sorted(X):
        inside = v in Y
        nbr = g.weight_into(v, Y)
        if inside != (rho[v] >= nbr):
            violations.append((v, inside, rho[v], nbr))
    return ConditionReport(not violations, tuple(violations))


# ---------------------------------------------------------------------------
# Local instance representation

def _local_instance(g: UndirectedView, X: frozenset[int], rho: Mapping[int, Number]):
    """Reindex X as 0..m-1 ascending; adjacency restricted to X."""
    verts = sorted(X)
    index = {v: i for i, v in enumerate(verts)}
    adj: list[list[tuple[int, Number]]] = [[] for _ in verts]
    for i, v in enumerate(verts):
        for t, w in g.successors(v):
            if t in index:
                adj[i].append((index[t], w))
    ranks = [rho[v] for v in verts]
    return verts, adj, ranks


def _integerize(adj, ranks):
    """Rescale a rational instance to integers; None if any float appears.

    Uniform positive scaling of all weights and ranks leaves the set of
    condition-satisfying subsets unchanged, so integer arithmetic on the
    scaled instance decides the original exactly.
    """
    denoms = set()
    for r in ranks:
        if isinstance(r, float):
            return None
        denoms.add(Fraction(r).denominator)
    for row in adj:
        for _, w in row:
            if isinstance(w, float):
                return None
            denoms.add(Fraction(w).denominator)
    scale = math.lcm(*denoms) if denoms else 1
    int_adj = [[(t, int(Fraction(w) * scale)) for t, w in row] for row in adj]
    int_ranks = [int(Fraction(r) * scale) for r in ranks]
    return int_adj, int_ranks, scale


def _local_search(adj, ranks, on_move: Callable | None = None) -> set[int]:
    """Single-vertex moves, ascending scan from the empty set.

    Adds ``v`` when its rank covers the weight of selected neighbors
    (potential non-decreasing, size increasing) and removes ``v`` when it
    no longer does (potential strictly increasing), so the pair
    (potential, size) grows lexicographically at every accepted move and
    the scan terminates at a set satisfying the characterisation.
    """
    m = len(ranks)
    members: set[int] = set()
    cost = 0
    max_scans = 4 * m * m + 8
    for _ in range(max_scans):
        moved = False
        for v in range(m):
            nbr = sum(w for t, w in adj[v] if t in members)
            if v in members:
                if ranks[v] < nbr:
                    members.discard(v)
                    cost += 2 * nbr - 2 * ranks[v]
                    moved = True
                    if on_move is not None:
                        on_move("remove", v, cost, len(members))
            elif ranks[v] >= nbr:
                members.add(v)
                cost += 2 * ranks[v] - 2 * nbr
                moved = True
                if on_move is not None:
                    on_move("add", v, cost, len(members))
        if not moved:
            return members
    raise RuntimeError("local search failed to stabilise")  # pragma: no cover


def _branch_and_bound(adj, ranks, start: set[int]):
    """Exact maximiser of (potential, size) with lexicographic-first ties.

    Depth-first include-before-exclude in ascending vertex order visits
    candidate sets in sorted-tuple lexicographic order, so keeping the
    first strict improvement makes the returned maximiser deterministic.
    The bound adds, for every undecided vertex, its best-case marginal
    ``max(0, 2*rho(v) - 2*w(v -> included))``, which only shrinks as more
    vertices are included.
    """
    m = len(ranks)
    # Incumbent from the provided start set.
    w_start = [sum(w for t, w in adj[v] if t in start) for v in range(m)]
    best_cost = sum(2 * ranks[v] - w_start[v] for v in start)
    best_size = len(start)
    best_set = frozenset(start)

    w_inc = [0] * m  # w(v -> included so far), maintained incrementally
    chosen: list[int] = []

    def recurse(v: int, cost):
        nonlocal best_cost, best_size, best_set
        if v == m:
            if cost > best_cost or (cost == best_cost and len(chosen) > best_size):
                best_cost, best_size, best_set = cost, len(chosen), frozenset(chosen)
            return
        bound = cost
        for u in range(v, m):
            gain = 2 * ranks[u] - 2 * w_inc[u]
            if gain > 0:
                bound += gain
        if bound < best_cost:
            return
        if bound == best_cost and len(chosen) + (m - v) <= best_size:
            return
        # include v (w_inc[v] is untouched by v's own row: no self-loops)
        chosen.append(v)
        for t, w in adj[v]:
            w_inc[t] += w
        recurse(v + 1, cost + 2 * ranks[v] - 2 * w_inc[v])
        for t, w in adj[v]:
            w_inc[t] -= w
        chosen.pop()
        # exclude v
        recurse(v + 1, cost)

    recurse(0, 0)
    return best_set


def local_search_kernel(
    g: UndirectedView,
    X: Iterable[int],
    rho: Mapping[int, Number],
    on_move: Callable | None = None,
) -> frozenset[int]:
    """A condition-satisfying subset found by plain local search.

    Guaranteed to satisfy the membership characterisation but not to
    maximise the potential; ``on_move(kind, vertex, potential, size)`` is
    invoked after every accepted move (potential reported doubled only in
    the sense of using the same units as ``cost_of``).
    """
    X = frozenset(X)
    _require_ranks(X, rho)
    verts, adj, ranks = _local_instance(g, X, rho)
    members = _local_search(adj, ranks, on_move)
    return frozenset(verts[i] for i in members)


def _certificate(g, X, rho, members) -> KernelCertificate:
    return KernelCertificate(
        members=members,
        cost=cost_of(g, X, rho, members),
        neighbor_weight={v: g.weight_into(v, members) for v in sorted(X)},
        presented_weight={v: g.weight_into(v, X) for v in sorted(X)},
    )


def select_kernel(
    g: UndirectedView, X: Iterable[int], rho: Mapping[int, Number]
) -> KernelCertificate:
    """Deterministic kernel of maximum potential (then maximum size).

    Local search supplies the incumbent; branch-and-bound completes it to
    the exact maximiser.  On rational input the computation is exact.  On
    floats, in the (never observed) event that rounding leaves the
    maximiser off the characterisation, the local-search set -- which
    satisfies it by construction -- is returned instead.
    """
    X = frozenset(X)
    _require_ranks(X, rho)
    if not X:
        return _certificate(g, X, rho, frozenset())
    verts, adj, ranks = _local_instance(g, X, rho)
    scaled = _integerize(adj, ranks)
    s_adj, s_ranks = (scaled[0], scaled[1]) if scaled else (adj, ranks)
    start = _local_search(s_adj, s_ranks)
    best = _branch_and_bound(s_adj, s_ranks, start)
    members = frozenset(verts[i] for i in best)
    if not kernel_condition_holds(g, X, rho, members):
        members = frozenset(verts[i] for i in start)
        if not kernel_condition_holds(g, X, rho, members):  # pragma: no cover
            raise RuntimeError("no kernel found; inconsistent arithmetic")
    return _certificate(g, X, rho, members)


# ---------------------------------------------------------------------------
# Exhaustive oracle

def _scan_instance(g: UndirectedView, X: frozenset[int], rho: Mapping[int, Number]):
    """Run the subset scan; returns (verts, costs, ok, scale).

    ``costs[mask] / scale`` is the potential of the subset encoded by
    ``mask`` over ``sorted(X)``.  Rational instances are scaled to
    integers (exact); the arbitrary-precision path is used if the scaled
    magnitudes could overflow int64; floats go through float64.
    """
    verts, adj, ranks = _local_instance(g, X, rho)
    m = len(verts)
    scaled = _integerize(adj, ranks)
    if scaled is not None:
        s_adj, s_ranks, scale = scaled
        magnitude = 2 * sum(abs(r) for r in s_ranks) + 2 * sum(
            abs(w) for row in s_adj for _, w in row
        )
        rho2 = [2 * r for r in s_ranks]
        w2 = [[0] * m for _ in range(m)]
        for v, row in enumerate(s_adj):
            for t, w in row:
                w2[v][t] = 2 * w
        if magnitude >= _INT64_SAFE:
            costs, ok = _accel.subset_scan_object(w2, rho2)
            return verts, costs, ok, scale
        w2_arr = np.zeros((m, m), dtype=np.int64)
        for v, row in enumerate(s_adj):
            for t, w in row:
                w2_arr[v, t] = 2 * w
        costs, ok = _accel.subset_scan(w2_arr, np.array(rho2, dtype=np.int64))
        return verts, costs, ok, scale
    w2 = np.zeros((m, m), dtype=np.float64)
    for v, row in enumerate(adj):
        for t, w in row:
            w2[v, t] = 2.0 * w
    rho2 = np.array([2.0 * r for r in ranks], dtype=np.float64)
    costs, ok = _accel.subset_scan(w2, rho2)
    return verts, costs, ok, 1


def _check_bound(X: frozenset[int], max_size: int) -> None:
    if len(X) > max_size:
        raise PresentedSetTooLarge(
            f"presented set of size {len(X)} exceeds the bound {max_size}"
        )


def brute_force_kernels(
    g: UndirectedView,
    X: Iterable[int],
    rho: Mapping[int, Number],
    *,
    max_size: int = DEFAULT_BRUTE_FORCE_BOUND,
) -> list[frozenset[int]]:
    """All subsets of ``X`` satisfying the membership characterisation.

    Enumerates every subset; never empty.  Results are sorted by their
    sorted vertex tuples.
    """
    X = frozenset(X)
    _require_ranks(X, rho)
    _check_bound(X, max_size)
    verts, _, ok, _ = _scan_instance(g, X, rho)
    if isinstance(ok, np.ndarray):
        masks = np.nonzero(ok)[0].tolist()
    else:
        masks = [mask for mask, good in enumerate(ok) if good]
    found = [
        frozenset(verts[i] for i in range(len(verts)) if mask >> i & 1)
        for mask in masks
    ]
    found.sort(key=lambda s: tuple(sorted(s)))
    return found


def brute_force_max_cost(
    g: UndirectedView,
    X: Iterable[int],
    rho: Mapping[int, Number],
    *,
    max_size: int = DEFAULT_BRUTE_FORCE_BOUND,
) -> Number:
    """The maximum potential over all ``2^|X|`` subsets (independent of
    :func:`select_kernel`; used to certify it)."""
    X = frozenset(X)
    _require_ranks(X, rho)
    _check_bound(X, max_size)
    if not X:
        return 0
    _, costs, _, scale = _scan_instance(g, X, rho)
    best = costs.max().item() if isinstance(costs, np.ndarray) else max(costs)
    if scale == 1:
        return best
    return Fraction(int(best), scale)
