"""Lister move sources: reductions from list assignments, lower-bound
adversaries, stress adversaries, and an interactive console source.

A Lister is any object with ``next_move(state) -> ListerMove | None``
(``None`` means the source is exhausted).  ``state`` is the referee's
:class:`~majority_paint.engine.GameState`; sources may read colors, spent
budgets and presentation counts from it.  Raw moves may mention colored
vertices or carry negative tolerances; the referee applies
:func:`filter_move` before play, exactly the relaxation that removes such
vertices and skips empty presentations.

Move sources are single-game stateful iterators: use one instance per game.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .graph import (
    Number,
    UndirectedView,
    WeightedDigraph,
    divide,
    format_number,
    parse_number,
)


@dataclass(frozen=True)
class ListerMove:
    """A presented vertex set with one tolerance per presented vertex."""

    vertices: frozenset[int]
    tolerance: Mapping[int, Number]

    def __post_init__(self):
        missing = [v for v in self.vertices if v not in self.tolerance]
        if missing:
            raise ValueError(f"no tolerance for presented vertices {sorted(missing)}")


def make_move(vertices: Iterable[int], tolerance: Mapping[int, Number]) -> ListerMove:
    vs = frozenset(vertices)
    return ListerMove(vs, {v: tolerance[v] for v in vs})


def filter_move(move: ListerMove, state) -> ListerMove | None:
    """Drop colored vertices and negative tolerances; ``None`` if empty."""
    kept = {
        v: move.tolerance[v]
        for v in move.vertices
        if state.color[v] is None and move.tolerance[v] >= 0
    }
    if not kept:
        return None
    return ListerMove(frozenset(kept), kept)


# ---------------------------------------------------------------------------
# List assignments


@dataclass(frozen=True)
class ListAssignment:
    """Colors allowed per vertex, with optional per-color ranks.

    Colors are positive integers.  When ranks are present they are defined
    exactly on the list entries.
    """

    lists: Mapping[int, frozenset[int]]
    ranks: Mapping[int, Mapping[int, Number]] | None = None

    def __post_init__(self):
        for v, colors in self.lists.items():
            if not colors:
                raise ValueError(f"empty color list for vertex {v}")
            if any(c < 1 for c in colors):
                raise ValueError(f"colors must be positive integers (vertex {v})")
        if self.ranks is not None:
            for v, colors in self.lists.items():
                if set(self.ranks.get(v, {})) != set(colors):
                    raise ValueError(f"ranks of vertex {v} do not match its list")

    @property
    def max_color(self) -> int:
        return max(max(c) for c in self.lists.values())

    def list_of(self, v: int) -> frozenset[int]:
        return self.lists[v]

    def rank_of(self, v: int, color: int) -> Number:
        if self.ranks is None:
            raise ValueError("assignment carries no ranks")
        return self.ranks[v][color]


_ENTRY = re.compile(r"^(\d+)(?:=(.+))?$")


def parse_list_assignment(text: str, *, exact: bool = False) -> ListAssignment:
    """Parse ``<vertex>: <color>[=<rank>], <color>[=<rank>], ...`` lines."""
    lists: dict[int, frozenset[int]] = {}
    ranks: dict[int, dict[int, Number]] = {}
    any_rank = False
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, _, tail = line.partition(":")
        v = int(head)
        colors = []
        vranks: dict[int, Number] = {}
        for item in tail.split(","):
            item = item.strip()
            if not item:
                continue
            m = _ENTRY.match(item)
            if not m:
                raise ValueError(f"bad list entry {item!r} for vertex {v}")
            color = int(m.group(1))
            colors.append(color)
            if m.group(2) is not None:
                vranks[color] = parse_number(m.group(2), exact=exact)
                any_rank = True
        lists[v] = frozenset(colors)
        if vranks:
            ranks[v] = vranks
    return ListAssignment(lists, ranks if any_rank else None)


def format_list_assignment(assignment: ListAssignment) -> str:
    lines = []
    for v in sorted(assignment.lists):
        parts = []
        for c in sorted(assignment.lists[v]):
            if assignment.ranks is not None:
                parts.append(f"{c}={format_number(assignment.ranks[v][c])}")
            else:
                parts.append(str(c))
        lines.append(f"{v}: " + ", ".join(parts))
    return "\n".join(lines) + "\n"


def load_list_assignment(path, *, exact: bool = False) -> ListAssignment:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_list_assignment(fh.read(), exact=exact)


def random_list_assignment(
    n: int, size: int, palette: int, rng
) -> ListAssignment:
    """Uniform ``size``-subsets of ``1..palette`` per vertex."""
    if size > palette:
        raise ValueError("list size exceeds palette")
    return ListAssignment(
        {v: frozenset(rng.sample(range(1, palette + 1), size)) for v in range(n)}
    )


# ---------------------------------------------------------------------------
# Listers


class ListLister:
    """Plays a list assignment: in its i-th emission, presents the still
    uncolored vertices whose lists contain color i, with a constant
    per-vertex tolerance.

    Emits at most ``max_color`` moves and skips colors with no uncolored
    candidates itself, so the round number of each emission is recorded in
    ``presented_colors`` and ``color_of_round`` recovers the actual color
    a trace round corresponds to.
    """

    def __init__(self, assignment: ListAssignment, tolerance: Number | Mapping[int, Number]):
        self.assignment = assignment
        self._tol = tolerance
        self._next_color = 1
        self.presented_colors: list[int] = []

    def _tolerance_of(self, v: int) -> Number:
        if isinstance(self._tol, Mapping):
            return self._tol[v]
        return self._tol

    def color_of_round(self, round_number: int) -> int:
        return self.presented_colors[round_number - 1]

    def _candidates(self, state, color: int) -> list[int]:
        return [
            v
            for v, colors in self.assignment.lists.items()
            if color in colors and state.color[v] is None
        ]

    def next_move(self, state) -> ListerMove | None:
        while self._next_color <= self.assignment.max_color:
            color = self._next_color
            self._next_color += 1
            cands = self._candidates(state, color)
            if not cands:
                continue
            self.presented_colors.append(color)
            return make_move(cands, {v: self._tolerance_of(v) for v in cands})
        return None


class RankedListLister(ListLister):
    """List play with per-color ranks: tolerance of ``v`` in the round for
    color ``i`` is ``rank_i(v) / out_weight(v)``.

    For a sink (out-weight 0) any positive constraint is vacuous; the rank
    is divided by 1 so traces stay deterministic.
    """

    def __init__(self, assignment: ListAssignment, graph: WeightedDigraph | UndirectedView):
        if assignment.ranks is None:
            raise ValueError("ranked play needs an assignment with ranks")
        super().__init__(assignment, tolerance=0)
        self.graph = graph

    def next_move(self, state) -> ListerMove | None:
        while self._next_color <= self.assignment.max_color:
            color = self._next_color
            self._next_color += 1
            cands = self._candidates(state, color)
            if not cands:
                continue
            self.presented_colors.append(color)
            tol = {}
            for v in cands:
                out = self.graph.out_weight(v)
                rank = self.assignment.rank_of(v, color)
                tol[v] = divide(rank, out) if out != 0 else rank
            return make_move(cands, tol)
        return None


class CliqueLister:
    """Lower-bound adversary for K_k and for regular orientations of
    complete graphs: every round presents all uncolored vertices with
    tolerance 1/k."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.tolerance = Fraction(1, k)

    def next_move(self, state) -> ListerMove | None:
        uncolored = [v for v in range(state.graph.n) if state.color[v] is None]
        if not uncolored:
            return None
        return make_move(uncolored, {v: self.tolerance for v in uncolored})


def lower_bound_lister(k: int) -> CliqueLister:
    return CliqueLister(k)


class RandomLister:
    """Seeded stress adversary.

    Presents a uniformly random non-empty subset of the uncolored vertices
    that still have budget left.  Tolerances are random multiples of 1/64
    of the remaining budget, occasionally negative (exercising the
    pre-play filtering) and occasionally the full remainder, so cumulative
    presentations approach the budget.  Fixed seed, fixed move sequence.
    """

    def __init__(self, seed: int):
        import random

        self._rng = random.Random(seed)

    def next_move(self, state) -> ListerMove | None:
        live = [
            v
            for v in range(state.graph.n)
            if state.color[v] is None and state.remaining(v) > 0
        ]
        if not live:
            return None
        rng = self._rng
        picked = [v for v in live if rng.random() < 0.5] or [rng.choice(live)]
        tol = {}
        for v in picked:
            k = rng.randint(-8, 64)
            tol[v] = state.remaining(v) * Fraction(k, 64)
        return make_move(picked, tol)


class GreedyLister:
    """Presents the uncolored vertices of largest remaining budget, each
    with tolerance equal to half its remaining budget."""

    def next_move(self, state) -> ListerMove | None:
        remaining = {
            v: state.remaining(v)
            for v in range(state.graph.n)
            if state.color[v] is None
        }
        if not remaining:
            return None
        top = max(remaining.values())
        if top <= 0:
            return None
        picked = [v for v, r in remaining.items() if r == top]
        return make_move(picked, {v: divide(remaining[v], 2) for v in picked})


class GameAborted(RuntimeError):
    """The interactive source quit before the game ended."""


class InteractiveLister:
    """Console move source: prints the position, reads ``present`` lines.

    Accepted inputs::

        present 0:1/2 3:0.25     (explicit tolerances)
        present 0 3              (only when a constant tolerance is fixed)
        quit

    With a ``constant`` tolerance map the explicit values are optional and
    forced to the constants, matching fixed-tolerance game play.
    """

    def __init__(self, *, input_fn=input, print_fn=print, constant=None, exact=False):
        self._input = input_fn
        self._print = print_fn
        self._constant = constant
        self._exact = exact

    def _show(self, state) -> None:
        p = self._print
        p(f"-- round {state.round + 1} --")
        p("vertex  color  budget  spent")
        for v in range(state.graph.n):
            color = state.color[v] if state.color[v] is not None else "-"
            p(
                f"{v:>6}  {color!s:>5}  {format_number(state.budgets[v]):>6}"
                f"  {format_number(state.spent[v])}"
            )

    def next_move(self, state) -> ListerMove | None:
        self._show(state)
        while True:
            try:
                line = self._input("present> ").strip()
            except EOFError as exc:
                raise GameAborted("input closed") from exc
            if line in ("quit", "exit", "q"):
                raise GameAborted("quit")
            if not line:
                continue
            parts = line.split()
            if parts[0] == "present":
                parts = parts[1:]
            try:
                tol = {}
                for item in parts:
                    if ":" in item:
                        vs, _, ts = item.partition(":")
                        tol[int(vs)] = parse_number(ts, exact=self._exact)
                    elif self._constant is not None:
                        v = int(item)
                        tol[v] = self._constant[v]
                    else:
                        raise ValueError(f"{item!r} needs an explicit ':tolerance'")
                if not tol:
                    raise ValueError("empty presentation")
                return make_move(tol.keys(), tol)
            except (ValueError, KeyError) as exc:
                self._print(f"bad move: {exc}")
