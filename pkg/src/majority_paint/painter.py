"""Painter strategies.

Every strategy is a stateful per-game object bound to one graph:
``respond(present, tolerance)`` receives a filtered presentation (uncolored
vertices, non-negative tolerances) and returns the subset it colors this
round.  A response always satisfies, for each selected ``v``,

    w(v -> selected) <= tolerance[v] * out_weight(v).

Three concrete strategies:

* :class:`UndirectedPainter` -- on undirected graphs, turns tolerances into
  absolute ranks ``rho(v) = tolerance[v] * incident_weight(v)`` and selects
  a kernel; wins whenever every budget is at least 1.
* :class:`StronglyConnectedPainter` -- normalizes the digraph, computes the
  positive left eigenvector, and plays the undirected strategy on the
  symmetrized graph with halved tolerances; wins whenever every budget is
  at least 2.
* :class:`GeneralPainter` -- decomposes into strongly connected components
  and runs one inner strategy per component, processing components in
  reverse topological order each round so that a vertex's rank is charged
  for the weight it sends to the vertices its out-neighbor components just
  selected; wins whenever every budget is at least 2.

The response of each strategy depends only on its colored set and the
presented move, so distinct instances never share state; one instance per
game, single-threaded (handing an instance between rounds to another
thread is fine).
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .graph import (
    Number,
    UndirectedView,
    WeightedDigraph,
    condensation,
    divide,
    induced_subgraph,
    normalize_out_weights,
)
from .kernel import select_kernel
from .spectral import DEFAULT_RESIDUAL_TOL, left_eigenvector, symmetrized_graph


class StrategyError(RuntimeError):
    """A presentation outside the strategy's contract."""


def _check_presentation(colored: set[int], n: int, present, tolerance) -> frozenset[int]:
    X = frozenset(present)
    for v in X:
        if not 0 <= v < n:
            raise StrategyError(f"presented vertex {v} out of range")
        if v in colored:
            raise StrategyError(f"presented vertex {v} is already colored")
        if tolerance[v] < 0:
            raise StrategyError(f"negative tolerance for vertex {v} reached a strategy")
    return X


class UndirectedPainter:
    """Kernel play on an undirected graph."""

    def __init__(self, view: UndirectedView):
        self.view = view
        self.colored: set[int] = set()

    def response_for(
        self, colored: set[int], present: Iterable[int], tolerance: Mapping[int, Number]
    ) -> frozenset[int]:
        """Pure response: what would be colored given an explicit colored set."""
        X = _check_presentation(colored, self.view.n, present, tolerance)
        if not X:
            return frozenset()
        rho = {v: tolerance[v] * self.view.incident_weight(v) for v in X}
        return select_kernel(self.view, X, rho).members

    def mark_colored(self, vertices) -> None:
        self.colored |= set(vertices)

    def respond(self, present, tolerance) -> frozenset[int]:
        selected = self.response_for(self.colored, present, tolerance)
        self.mark_colored(selected)
        return selected


class EdgelessPainter:
    """Play on a graph with no edges: every constraint is vacuous, so every
    presented vertex (tolerances are non-negative after filtering) is
    colored immediately."""

    def __init__(self, g: WeightedDigraph):
        if g.edges:
            raise StrategyError("edgeless strategy bound to a graph with edges")
        self.graph = g
        self.colored: set[int] = set()

    def response_for(self, colored, present, tolerance) -> frozenset[int]:
        X = _check_presentation(colored, self.graph.n, present, tolerance)
        return frozenset(v for v in X if tolerance[v] >= 0)

    def mark_colored(self, vertices) -> None:
        self.colored |= set(vertices)

    def respond(self, present, tolerance) -> frozenset[int]:
        selected = self.response_for(self.colored, present, tolerance)
        self.mark_colored(selected)
        return selected


class StronglyConnectedPainter:
    """Spectral reduction to the undirected strategy.

    All spectral state (normalization, eigenvector, symmetrized graph) is
    built eagerly at construction; each round only halves the tolerances,
    relays the move to the inner undirected strategy on the symmetrized
    graph, and copies its selection.
    """

    def __init__(self, g: WeightedDigraph, *, tol: float = DEFAULT_RESIDUAL_TOL):
        normalized = normalize_out_weights(g)
        self.graph = g
        self.eigenvector = left_eigenvector(normalized, tol)
        self.symmetrized = symmetrized_graph(normalized, self.eigenvector)
        self._inner = UndirectedPainter(self.symmetrized)

    @property
    def colored(self) -> set[int]:
        return self._inner.colored

    def response_for(self, colored, present, tolerance) -> frozenset[int]:
        halved = {v: divide(tolerance[v], 2) for v in present}
        return self._inner.response_for(colored, present, halved)

    def mark_colored(self, vertices) -> None:
        self._inner.mark_colored(vertices)

    def respond(self, present, tolerance) -> frozenset[int]:
        selected = self.response_for(self.colored, present, tolerance)
        self.mark_colored(selected)
        return selected


def _inner_strategy(component_graph: WeightedDigraph, tol: float):
    if not component_graph.edges:
        return EdgelessPainter(component_graph)
    return StronglyConnectedPainter(component_graph, tol=tol)


class GeneralPainter:
    """Component-wise play on an arbitrary digraph.

    Construction decomposes the graph into strongly connected components
    (singletons get the edgeless strategy, larger components the spectral
    one) and fixes the component order once.  Each round walks the
    components in reverse topological order: the selections of a vertex's
    out-neighbor components are already fixed when its own component
    plays, so its inner tolerance is its remaining monochromatic
    allowance, in units of its weight into its own component:

        rho(v)  = tolerance[v] * out_weight(v) - w(v -> selected so far)
        tau'(v) = rho(v) / w(v -> own component)

    Vertices whose allowance went negative are dropped from the inner
    presentation (they stay uncolored this round); for edgeless components
    the allowance itself is the inner tolerance.

    ``last_audit`` records, for every inner presentation of the latest
    round, the exact budget split ``tau'(v) * w(v -> component) +
    w(v -> selected) == tolerance[v] * out_weight(v)``.
    """

    def __init__(self, g: WeightedDigraph, *, tol: float = DEFAULT_RESIDUAL_TOL):
        self.graph = g
        self.condensation = condensation(g)
        self._components = []
        for comp in self.condensation.components:
            sub, originals = induced_subgraph(g, comp)
            self._components.append(
                {
                    "vertices": frozenset(comp),
                    "originals": originals,
                    "local": {old: new for new, old in enumerate(originals)},
                    "graph": sub,
                    "inner": _inner_strategy(sub, tol),
                    "internal_weight": {
                        v: g.weight_into(v, frozenset(comp)) for v in comp
                    },
                }
            )
        self.colored: set[int] = set()
        self.last_audit: list[tuple[int, Number, Number]] = []

    def response_for(self, colored, present, tolerance) -> frozenset[int]:
        X = _check_presentation(colored, self.graph.n, present, tolerance)
        g = self.graph
        selected: set[int] = set()
        audit = []
        for comp in reversed(self._components):
            comp_present = X & comp["vertices"]
            if not comp_present:
                continue
            inner_tol: dict[int, Number] = {}
            for v in comp_present:
                to_prior = g.weight_into(v, selected)
                allowance = tolerance[v] * g.out_weight(v) - to_prior
                internal = comp["internal_weight"][v]
                if internal != 0:
                    inner_tol[v] = divide(allowance, internal)
                    audit.append(
                        (v, inner_tol[v] * internal + to_prior, tolerance[v] * g.out_weight(v))
                    )
                else:
                    # No internal edges: the allowance itself decides play.
                    inner_tol[v] = allowance
            admitted = {v: t for v, t in inner_tol.items() if t >= 0}
            if not admitted:
                continue
            local = comp["local"]
            local_present = {local[v] for v in admitted}
            local_tol = {local[v]: t for v, t in admitted.items()}
            local_colored = {local[v] for v in comp["vertices"] & set(colored)}
            picked = comp["inner"].response_for(local_colored, local_present, local_tol)
            selected |= {comp["originals"][i] for i in picked}
        self.last_audit = audit
        return frozenset(selected)

    def mark_colored(self, vertices) -> None:
        vertices = set(vertices)
        self.colored |= vertices
        for comp in self._components:
            comp["inner"].mark_colored(
                comp["local"][v] for v in vertices & comp["vertices"]
            )

    def respond(self, present, tolerance) -> frozenset[int]:
        selected = self.response_for(self.colored, present, tolerance)
        self.mark_colored(selected)
        return selected


def make_painter(name: str, g: WeightedDigraph | UndirectedView, **kwargs):
    """Factory used by the command line: ``undirected``, ``scc``,
    ``general`` or ``edgeless``."""
    if name == "undirected":
        view = g if isinstance(g, UndirectedView) else UndirectedView(g)
        return UndirectedPainter(view)
    digraph = g.digraph if isinstance(g, UndirectedView) else g
    if name == "scc":
        return StronglyConnectedPainter(digraph, **kwargs)
    if name == "general":
        return GeneralPainter(digraph, **kwargs)
    if name == "edgeless":
        return EdgelessPainter(digraph)
    raise ValueError(f"unknown painter {name!r}")
