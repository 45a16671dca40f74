"""Positively edge-weighted directed graphs and their structure.

Conventions used by the whole package:

* Vertices are the integers ``0 .. n-1``.
* Graphs are simple and loopless: no self-loops, at most one edge per
  ordered pair, every weight strictly positive and finite.
* An undirected graph is stored as a symmetric digraph (both ``(u, v, w)``
  and ``(v, u, w)`` present); :class:`UndirectedView` validates and wraps
  that representation.
* Weights may be ``int``/``float`` or :class:`fractions.Fraction`.  With
  rational weights every comparison made downstream (kernel selection,
  referee checks) is exact; this is the "exact mode" used by the oracles.

Graph values are immutable after construction and safe to share across
concurrent readers.
"""

from __future__ import annotations

import heapq
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

Number = int | float | Fraction


class GraphError(ValueError):
    """Invalid graph construction or a violated structural precondition."""


def _check_weight(u: int, v: int, w) -> None:
    if isinstance(w, float) and not math.isfinite(w):
        raise GraphError(f"edge {u}->{v} has non-finite weight {w!r}")
    if not isinstance(w, (int, float, Fraction)):
        raise GraphError(f"edge {u}->{v} has non-numeric weight {w!r}")
    if w <= 0:
        raise GraphError(f"edge {u}->{v} has non-positive weight {w!r}")


class WeightedDigraph:
    """Immutable digraph with strictly positive edge weights."""

    __slots__ = ("n", "edges", "_succ", "_out_weight", "_wmap")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, Number]]):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        seen: dict[tuple[int, int], Number] = {}
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}->{v} out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge {u}->{v}")
            _check_weight(u, v, w)
            seen[(u, v)] = w
        self.n = n
        self.edges: tuple[tuple[int, int, Number], ...] = tuple(
            (u, v, seen[(u, v)]) for (u, v) in sorted(seen)
        )
        succ: list[list[tuple[int, Number]]] = [[] for _ in range(n)]
        for u, v, w in self.edges:
            succ[u].append((v, w))
        self._succ = tuple(tuple(s) for s in succ)
        self._out_weight = tuple(sum(w for _, w in s) for s in self._succ)
        self._wmap = seen

    def successors(self, v: int) -> tuple[tuple[int, Number], ...]:
        """Out-neighbors of ``v`` with weights, ascending by target."""
        return self._succ[v]

    def out_weight(self, v: int) -> Number:
        """Total weight of the outgoing edges of ``v`` (0 for a sink)."""
        return self._out_weight[v]

    def weight(self, u: int, v: int, default: Number = 0) -> Number:
        return self._wmap.get((u, v), default)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._wmap

    def weight_into(self, v: int, members) -> Number:
        """Total weight of edges from ``v`` into the vertex set ``members``.

        Summation order is fixed (ascending target vertex) so that every
        caller sees the same floating-point value for the same set.
        """
        return sum(w for t, w in self._succ[v] if t in members)

    def is_symmetric(self) -> bool:
        return all(self._wmap.get((v, u)) == w for (u, v), w in self._wmap.items())

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightedDigraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"WeightedDigraph(n={self.n}, m={len(self.edges)})"


def build_digraph(n: int, edges: Iterable[tuple[int, int, Number]]) -> WeightedDigraph:
    """Validated constructor; see :class:`WeightedDigraph` for the rules."""
    return WeightedDigraph(n, edges)


class UndirectedView:
    """A symmetric digraph viewed as an undirected weighted graph.

    Construction fails unless for every edge ``(u, v, w)`` the mirrored
    edge ``(v, u, w)`` is present with exactly equal weight.
    """

    __slots__ = ("digraph",)

    def __init__(self, g: WeightedDigraph):
        for u, v, w in g.edges:
            if g.weight(v, u, None) != w:
                raise GraphError(
                    f"not symmetric: edge {u}->{v} ({w!r}) has no equal mirror"
                )
        self.digraph = g

    @property
    def n(self) -> int:
        return self.digraph.n

    def incident_weight(self, v: int) -> Number:
        """Total weight of edges at ``v`` (equals the digraph out-weight)."""
        return self.digraph.out_weight(v)

    def out_weight(self, v: int) -> Number:
        return self.digraph.out_weight(v)

    def successors(self, v: int):
        return self.digraph.successors(v)

    def weight_into(self, v: int, members) -> Number:
        return self.digraph.weight_into(v, members)

    def undirected_edges(self) -> tuple[tuple[int, int, Number], ...]:
        """Each unordered pair once, as ``(u, v, w)`` with ``u < v``."""
        return tuple((u, v, w) for u, v, w in self.digraph.edges if u < v)

    def __eq__(self, other) -> bool:
        return isinstance(other, UndirectedView) and self.digraph == other.digraph

    def __hash__(self) -> int:
        return hash(("undirected", self.digraph))

    def __repr__(self) -> str:
        return f"UndirectedView(n={self.n}, m={len(self.undirected_edges())})"


def build_undirected(
    n: int, edges: Iterable[tuple[int, int, Number]]
) -> UndirectedView:
    """Build an undirected graph from one entry per unordered pair."""
    expanded = []
    for u, v, w in edges:
        expanded.append((u, v, w))
        expanded.append((v, u, w))
    return UndirectedView(WeightedDigraph(n, expanded))


def divide(a: Number, b: Number) -> Number:
    """Division that keeps rational arithmetic exact; floats stay floats."""
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / Fraction(b)
    return a / b


def normalize_out_weights(g: WeightedDigraph) -> WeightedDigraph:
    """Rescale each vertex's outgoing weights to total 1.

    Per-vertex positive scaling does not change which colorings satisfy the
    majority constraints, so the rescaled graph is interchangeable with the
    original for game purposes.  Raises :class:`GraphError` naming the
    offending vertex if some vertex has no outgoing edge.
    """
    for v in range(g.n):
        if g.out_weight(v) == 0:
            raise GraphError(f"vertex {v} has no outgoing edge; cannot normalize")
    return WeightedDigraph(
        g.n, ((u, v, divide(w, g.out_weight(u))) for u, v, w in g.edges)
    )


@dataclass(frozen=True)
class Condensation:
    """Strongly connected components in a deterministic topological order.

    ``components[i]`` lists the vertices of component ``i`` ascending;
    every inter-component edge goes from an earlier to a later component.
    Among all valid topological orders, the stored one sorts components by
    their smallest contained vertex, so results are reproducible.
    """

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.components)


def _tarjan_components(g: WeightedDigraph) -> list[list[int]]:
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work: list[tuple[int, Iterable]] = []
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work.append((root, iter(g.successors(root))))
        while work:
            v, it = work[-1]
            advanced = False
            for w, _ in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(g.successors(w))))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
    return components


def condensation(g: WeightedDigraph) -> Condensation:
    """Strongly connected components plus a topological component order."""
    raw = [sorted(c) for c in _tarjan_components(g)]
    comp_of = [0] * g.n
    for i, comp in enumerate(raw):
        for v in comp:
            comp_of[v] = i
    out_comps: list[set[int]] = [set() for _ in raw]
    indegree = [0] * len(raw)
    for u, v, _ in g.edges:
        cu, cv = comp_of[u], comp_of[v]
        if cu != cv and cv not in out_comps[cu]:
            out_comps[cu].add(cv)
            indegree[cv] += 1
    # Kahn's algorithm keyed by smallest member gives the canonical order.
    heap = [(comp[0], i) for i, comp in enumerate(raw) if indegree[i] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(i)
        for j in out_comps[i]:
            indegree[j] -= 1
            if indegree[j] == 0:
                heapq.heappush(heap, (raw[j][0], j))
    components = tuple(tuple(raw[i]) for i in order)
    component_of = [0] * g.n
    for pos, comp in enumerate(components):
        for v in comp:
            component_of[v] = pos
    return Condensation(components, tuple(component_of))


def induced_subgraph(
    g: WeightedDigraph, vertices: Iterable[int]
) -> tuple[WeightedDigraph, tuple[int, ...]]:
    """Subgraph on ``vertices`` with both endpoints kept, weights unchanged.

    Returns ``(subgraph, originals)`` where ``originals[new] == old`` maps
    the relabeled vertex ids back to the input graph.
    """
    originals = tuple(sorted(set(vertices)))
    for v in originals:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    local = {old: new for new, old in enumerate(originals)}
    keep = set(originals)
    edges = [
        (local[u], local[v], w) for u, v, w in g.edges if u in keep and v in keep
    ]
    return WeightedDigraph(len(originals), edges), originals


# ---------------------------------------------------------------------------
# Named graphs


def complete_graph(k: int, weight: Number = 1) -> UndirectedView:
    """K_k with uniform edge weight."""
    return build_undirected(
        k, ((u, v, weight) for u in range(k) for v in range(u + 1, k))
    )


def directed_cycle(n: int, weight: Number = 1) -> WeightedDigraph:
    if n < 2:
        raise GraphError("a directed cycle needs at least 2 vertices")
    return WeightedDigraph(n, ((v, (v + 1) % n, weight) for v in range(n)))


def rotational_tournament(m: int, weight: Number = 1) -> WeightedDigraph:
    """Orientation of K_m (m odd) where each vertex points to the next
    (m-1)/2 vertices cyclically; every out-degree is exactly (m-1)/2."""
    if m < 3 or m % 2 == 0:
        raise GraphError("rotational tournament needs an odd m >= 3")
    half = (m - 1) // 2
    return WeightedDigraph(
        m, ((v, (v + d) % m, weight) for v in range(m) for d in range(1, half + 1))
    )


# ---------------------------------------------------------------------------
# Random models (uniform, used by tests and the verify batches)


def _default_weight(rng) -> int:
    return rng.randint(1, 10)


def random_digraph(
    n: int, rng, *, edge_prob: float = 0.35, weight: Callable = _default_weight
) -> WeightedDigraph:
    edges = [
        (u, v, weight(rng))
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < edge_prob
    ]
    return WeightedDigraph(n, edges)


def random_undirected(
    n: int, rng, *, edge_prob: float = 0.5, weight: Callable = _default_weight
) -> UndirectedView:
    edges = [
        (u, v, weight(rng))
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < edge_prob
    ]
    return build_undirected(n, edges)


def random_strongly_connected(
    n: int, rng, *, edge_prob: float = 0.3, weight: Callable = _default_weight
) -> WeightedDigraph:
    """Random digraph forced strongly connected by a spanning cycle."""
    if n < 2:
        raise GraphError("need n >= 2 for a strongly connected digraph")
    perm = list(range(n))
    rng.shuffle(perm)
    seen = {(perm[i], perm[(i + 1) % n]) for i in range(n)}
    edges = [(u, v, weight(rng)) for u, v in seen]
    for u in range(n):
        for v in range(n):
            if u != v and (u, v) not in seen and rng.random() < edge_prob:
                edges.append((u, v, weight(rng)))
    return WeightedDigraph(n, edges)


def random_multi_scc(
    n: int,
    rng,
    *,
    blocks: int = 2,
    cross_prob: float = 0.4,
    edge_prob: float = 0.4,
    weight: Callable = _default_weight,
) -> WeightedDigraph:
    """Random digraph with at least ``blocks`` strongly connected components:
    strongly connected blocks joined by forward-only edges."""
    blocks = min(blocks, n)
    cuts = sorted(rng.sample(range(1, n), blocks - 1)) if blocks > 1 else []
    bounds = [0, *cuts, n]
    edges: list[tuple[int, int, Number]] = []
    ranges = [range(bounds[i], bounds[i + 1]) for i in range(blocks)]
    for block in ranges:
        size = len(block)
        if size >= 2:
            lo = block[0]
            perm = [lo + i for i in range(size)]
            rng.shuffle(perm)
            seen = set()
            for i in range(size):
                u, v = perm[i], perm[(i + 1) % size]
                if (u, v) not in seen:
                    seen.add((u, v))
                    edges.append((u, v, weight(rng)))
            for u in block:
                for v in block:
                    if u != v and (u, v) not in seen and rng.random() < edge_prob:
                        seen.add((u, v))
                        edges.append((u, v, weight(rng)))
    for i, src in enumerate(ranges):
        for dst in ranges[i + 1 :]:
            for u in src:
                for v in dst:
                    if rng.random() < cross_prob:
                        edges.append((u, v, weight(rng)))
    return WeightedDigraph(n, edges)


# ---------------------------------------------------------------------------
# Numbers and the text file format


def parse_number(text: str, *, exact: bool = False) -> Number:
    """Parse ``p/q`` as an exact rational; otherwise a decimal.

    With ``exact=True`` decimals are also converted to exact rationals.
    """
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    if exact:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)


def format_number(x: Number) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(x) if isinstance(x, float) else str(x)


_HEADER = re.compile(r"^(digraph|undirected)\s+n=(\d+)$")


def loads_graph(text: str, *, exact: bool = False) -> WeightedDigraph | UndirectedView:
    """Parse the graph text format.

    Header line ``digraph n=<count>`` or ``undirected n=<count>``, then one
    line per edge: ``<from> <to> <weight>`` with the weight a decimal or a
    rational ``p/q``.  The undirected variant expands each line into both
    directed edges and returns an :class:`UndirectedView`.  Blank lines and
    ``#`` comments are ignored.
    """
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise GraphError("empty graph file")
    m = _HEADER.match(lines[0])
    if not m:
        raise GraphError(f"bad header line: {lines[0]!r}")
    kind, n = m.group(1), int(m.group(2))
    triples = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise GraphError(f"bad edge line: {ln!r}")
        triples.append((int(parts[0]), int(parts[1]), parse_number(parts[2], exact=exact)))
    if kind == "undirected":
        return build_undirected(n, triples)
    return WeightedDigraph(n, triples)


def dumps_graph(g: WeightedDigraph | UndirectedView) -> str:
    if isinstance(g, UndirectedView):
        lines = [f"undirected n={g.n}"]
        lines += [f"{u} {v} {format_number(w)}" for u, v, w in g.undirected_edges()]
    else:
        lines = [f"digraph n={g.n}"]
        lines += [f"{u} {v} {format_number(w)}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def load_graph(path, *, exact: bool = False) -> WeightedDigraph | UndirectedView:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_graph(fh.read(), exact=exact)


def save_graph(g: WeightedDigraph | UndirectedView, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_graph(g))
