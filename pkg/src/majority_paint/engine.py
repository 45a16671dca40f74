"""Referee for the ranked-majority painting game.

Round protocol: the Lister source supplies a raw move; the referee filters
it (colored vertices and negative tolerances removed, empty presentations
skipped); the Painter responds with a subset of the filtered presentation;
the referee validates the majority constraints, assigns the round number
as the color of the selected vertices, charges every presented vertex its
tolerance, and then checks the winning predicates -- Painter first (all
vertices colored), then Lister (some uncolored vertex has accumulated
presented tolerance at least its budget).  The two predicates cannot hold
simultaneously; the fixed order only pins down reporting.

Traces are serialized as line-delimited JSON: one record per round with
fields ``round``, ``X``, ``tau``, ``Y`` (in that order), then a terminal
record with ``winner`` and ``coloring``.  Exact rationals appear as
``"p/q"`` strings; the format is byte-stable for identical games.

One engine instance state per game; independent games may run in parallel.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .graph import Number, WeightedDigraph, UndirectedView, format_number
from .lister import ListerMove, filter_move, make_move

ROUND_CAP_ENV = "MP_ROUND_CAP"
DEFAULT_SKIP_CAP = 1000


class EngineError(RuntimeError):
    """Referee-level failure (not a normal game outcome)."""


class RuleViolation(EngineError):
    """The Painter returned an invalid response."""


class SkipLimitExceeded(EngineError):
    """The Lister source produced too many consecutive empty presentations."""


class RoundCapExceeded(EngineError):
    """Safety cap on rounds hit: the Lister source does not terminate."""


class ListerExhausted(EngineError):
    """The Lister source ended with the game undecided."""


class StalledGame(EngineError):
    """Rounds pass without coloring progress or budget charges."""


def _as_budgets(g: WeightedDigraph, budgets) -> dict[int, Number]:
    if isinstance(budgets, Mapping):
        lam = {v: budgets[v] for v in range(g.n)}
    else:
        lam = {v: budgets for v in range(g.n)}
    for v, b in lam.items():
        if b <= 0:
            raise ValueError(f"budget of vertex {v} must be positive, got {b!r}")
    return lam


class GameState:
    """Mutable per-game bookkeeping owned by the referee."""

    def __init__(self, g: WeightedDigraph, budgets):
        self.graph = g
        self.budgets = _as_budgets(g, budgets)
        self.color: dict[int, int | None] = {v: None for v in range(g.n)}
        self.spent: dict[int, Number] = {v: 0 for v in range(g.n)}
        self.presented_count: dict[int, int] = {v: 0 for v in range(g.n)}
        self.round = 0

    def remaining(self, v: int) -> Number:
        return self.budgets[v] - self.spent[v]

    def uncolored(self) -> list[int]:
        return [v for v in range(self.graph.n) if self.color[v] is None]

    def all_colored(self) -> bool:
        return all(c is not None for c in self.color.values())

    def lister_win_witnesses(self) -> list[int]:
        return [
            v
            for v in range(self.graph.n)
            if self.color[v] is None and self.spent[v] >= self.budgets[v]
        ]


@dataclass(frozen=True)
class ValidationReport:
    """Per-vertex violations of ``w(v -> Y) <= tau(v) * out_weight(v)``."""

    ok: bool
    not_presented: tuple[int, ...]
    violations: tuple[tuple[int, Number, Number], ...]  # (v, selected w, allowed)

    def __bool__(self) -> bool:
        return self.ok


def validate_painter_response(state: GameState, move: ListerMove, selected) -> ValidationReport:
    Y = frozenset(selected)
    outside = tuple(sorted(Y - move.vertices))
    violations = []
    g = state.graph
    for v in sorted(Y & move.vertices):
        picked = g.weight_into(v, Y)
        allowed = move.tolerance[v] * g.out_weight(v)
        if picked > allowed:
            violations.append((v, picked, allowed))
    return ValidationReport(not outside and not violations, outside, tuple(violations))


@dataclass(frozen=True)
class RoundRecord:
    number: int
    presented: tuple[int, ...]
    tolerance: dict[int, Number]
    selected: tuple[int, ...]


@dataclass(frozen=True)
class GameTrace:
    rounds: tuple[RoundRecord, ...]
    winner: str  # 'painter' | 'lister'
    coloring: dict[int, int]  # colored vertices -> round index
    budgets: dict[int, Number]

    def to_text(self) -> str:
        lines = []
        for r in self.rounds:
            lines.append(
                json.dumps(
                    {
                        "round": r.number,
                        "X": list(r.presented),
                        "tau": {str(v): _json_number(r.tolerance[v]) for v in r.presented},
                        "Y": list(r.selected),
                    }
                )
            )
        lines.append(
            json.dumps(
                {
                    "winner": self.winner,
                    "coloring": {str(v): c for v, c in sorted(self.coloring.items())},
                }
            )
        )
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str, budgets=None) -> "GameTrace":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty trace")
        rounds = []
        for ln in lines[:-1]:
            rec = json.loads(ln)
            rounds.append(
                RoundRecord(
                    number=rec["round"],
                    presented=tuple(rec["X"]),
                    tolerance={int(v): _parse_json_number(t) for v, t in rec["tau"].items()},
                    selected=tuple(rec["Y"]),
                )
            )
        last = json.loads(lines[-1])
        coloring = {int(v): c for v, c in last["coloring"].items()}
        return GameTrace(tuple(rounds), last["winner"], coloring, dict(budgets or {}))


def _json_number(x: Number):
    if isinstance(x, Fraction):
        return format_number(x)
    return x


def _parse_json_number(x) -> Number:
    if isinstance(x, str):
        return Fraction(x)
    return x


HARD_ROUND_CEILING = 1_000_000


def _round_cap(state: GameState, min_positive_tau) -> int:
    override = os.environ.get(ROUND_CAP_ENV)
    if override:
        return int(override)
    n = max(state.graph.n, 1)
    if min_positive_tau is None:
        worst = 1
    else:
        worst = max(math.ceil(state.budgets[v] / min_positive_tau) for v in state.budgets)
    # The dynamic cap assumes presented tolerances do not vanish; the hard
    # ceiling stops sources that shrink them forever.
    return min(10 * n * max(worst, 1), HARD_ROUND_CEILING)


def play_game(
    g: WeightedDigraph,
    budgets,
    lister,
    painter,
    *,
    skip_cap: int = DEFAULT_SKIP_CAP,
    on_round: Callable | None = None,
) -> GameTrace:
    """Run one full game and return its trace.

    ``budgets`` is a positive number (uniform) or a per-vertex mapping.
    ``on_round(state, move, selected)`` is called after each validated
    round, before the winner checks.  Raises :class:`EngineError`
    subclasses on protocol breaches (these are failures of the sources,
    never normal outcomes).
    """
    state = GameState(g, budgets)
    records: list[RoundRecord] = []
    winner = None
    skips = 0
    stalls = 0
    min_positive_tau = None
    if state.all_colored():  # n == 0
        winner = "painter"
    while winner is None:
        raw = lister.next_move(state)
        if raw is None:
            raise ListerExhausted(
                f"lister stopped after round {state.round} with the game undecided"
            )
        move = filter_move(raw, state)
        if move is None:
            skips += 1
            if skips > skip_cap:
                raise SkipLimitExceeded(f"{skips} consecutive empty presentations")
            continue
        skips = 0
        selected = frozenset(painter.respond(set(move.vertices), dict(move.tolerance)))
        report = validate_painter_response(state, move, selected)
        if not report:
            raise RuleViolation(
                f"round {state.round + 1}: not presented {report.not_presented}, "
                f"violations {report.violations}"
            )
        number = state.round + 1
        records.append(
            RoundRecord(
                number=number,
                presented=tuple(sorted(move.vertices)),
                tolerance=dict(move.tolerance),
                selected=tuple(sorted(selected)),
            )
        )
        for v in selected:
            state.color[v] = number
        for v in move.vertices:
            state.spent[v] += move.tolerance[v]
            state.presented_count[v] += 1
        state.round = number
        positives = [t for t in move.tolerance.values() if t > 0]
        if positives:
            p = min(positives)
            if min_positive_tau is None or p < min_positive_tau:
                min_positive_tau = p
        if on_round is not None:
            on_round(state, move, selected)
        if state.all_colored():
            winner = "painter"
            break
        if state.lister_win_witnesses():
            winner = "lister"
            break
        if not selected and not positives:
            stalls += 1
            if stalls > g.n + 4:
                raise StalledGame("rounds pass without progress")
        else:
            stalls = 0
        if state.round > _round_cap(state, min_positive_tau):
            raise RoundCapExceeded(f"round cap exceeded at round {state.round}")
    coloring = {v: c for v, c in state.color.items() if c is not None}
    return GameTrace(tuple(records), winner, coloring, dict(state.budgets))


# ---------------------------------------------------------------------------
# Trace replay

class _ScriptedLister:
    def __init__(self, rounds):
        self._rounds = list(rounds)
        self._i = 0

    def next_move(self, state) -> ListerMove | None:
        if self._i >= len(self._rounds):
            return None
        r = self._rounds[self._i]
        self._i += 1
        return make_move(r.presented, r.tolerance)


class _ScriptedPainter:
    def __init__(self, rounds):
        self._selections = [frozenset(r.selected) for r in rounds]
        self._i = 0

    def respond(self, present, tolerance):
        y = self._selections[self._i]
        self._i += 1
        return y


def replay_trace(g: WeightedDigraph, budgets, trace: GameTrace) -> GameTrace:
    """Re-run a recorded game through full validation.

    The recorded moves and responses are replayed verbatim; the referee
    recomputes filtering, constraint checks, budgets and the winner.  The
    result must equal the original trace for any honestly recorded game.
    """
    return play_game(g, budgets, _ScriptedLister(trace.rounds), _ScriptedPainter(trace.rounds))


# ---------------------------------------------------------------------------
# Fixed-tolerance (count-budget) games

class ConstantToleranceLister:
    """Wrap any move source, forcing every presented tolerance to a fixed
    per-vertex value."""

    def __init__(self, inner, tau: Mapping[int, Number]):
        self._inner = inner
        self._tau = tau

    def next_move(self, state) -> ListerMove | None:
        raw = self._inner.next_move(state)
        if raw is None:
            return None
        return make_move(raw.vertices, {v: self._tau[v] for v in raw.vertices})


def kappa_game(
    g: WeightedDigraph, tau: Mapping[int, Number] | Number, kappa: Mapping[int, int] | int
):
    """Budgets and a move wrapper for the fixed-tolerance game with
    per-vertex presentation counts.

    Returns ``(budgets, wrap)`` with ``budgets[v] = kappa(v) * tau(v)``;
    ``wrap(lister)`` forces every presented tolerance to ``tau(v)``, which
    makes "presented kappa(v) times and still uncolored" coincide with the
    referee's budget predicate.  ``tau(v) = 0`` is rejected: a vertex with
    zero tolerance could never trigger the budget predicate no matter how
    often it is presented.
    """
    tau_map = dict(tau) if isinstance(tau, Mapping) else {v: tau for v in range(g.n)}
    kappa_map = dict(kappa) if isinstance(kappa, Mapping) else {v: kappa for v in range(g.n)}
    for v in range(g.n):
        t, k = tau_map[v], kappa_map[v]
        if t <= 0:
            raise ValueError(f"tolerance of vertex {v} must be positive, got {t!r}")
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"presentation count of vertex {v} must be an integer >= 1")
    budgets = {v: kappa_map[v] * tau_map[v] for v in range(g.n)}

    def wrap(lister):
        return ConstantToleranceLister(lister, tau_map)

    return budgets, wrap


# ---------------------------------------------------------------------------
# Colorings

def coloring_from_trace(trace: GameTrace) -> dict[int, int]:
    """The full coloring of a Painter-won game (round index as color)."""
    if trace.winner != "painter":
        raise ValueError("coloring extraction needs a painter-won trace")
    return dict(trace.coloring)


@dataclass(frozen=True)
class ColoringReport:
    ok: bool
    violations: tuple[tuple[int, Number, Number], ...]  # (v, mono weight, allowed)

    def __bool__(self) -> bool:
        return self.ok


def _tolerance_fn(tolerance) -> Callable[[int, int], Number]:
    if callable(tolerance):
        return tolerance
    if isinstance(tolerance, Mapping):
        return lambda v, _c: tolerance[v]
    return lambda _v, _c: tolerance


def verify_coloring(
    g: WeightedDigraph | UndirectedView, coloring: Mapping[int, int], tolerance
) -> ColoringReport:
    """Check the majority constraint of every vertex of a full coloring.

    ``tolerance`` is a number (uniform), a per-vertex mapping, or a
    callable ``(vertex, color) -> tolerance`` for color-dependent play.
    """
    digraph = g.digraph if isinstance(g, UndirectedView) else g
    if set(coloring) != set(range(digraph.n)):
        raise ValueError("coloring must assign a color to every vertex")
    tol = _tolerance_fn(tolerance)
    violations = []
    for v in range(digraph.n):
        same = frozenset(u for u, c in coloring.items() if c == coloring[v] and u != v)
        mono = digraph.weight_into(v, same)
        allowed = tol(v, coloring[v]) * digraph.out_weight(v)
        if mono > allowed:
            violations.append((v, mono, allowed))
    return ColoringReport(not violations, tuple(violations))


def verify_ranked_coloring(
    g: WeightedDigraph | UndirectedView,
    coloring: Mapping[int, int],
    ranks: Mapping[int, Mapping[int, Number]],
) -> ColoringReport:
    """Check the absolute variant: monochromatic out-weight of ``v`` is at
    most the rank of its assigned color."""
    digraph = g.digraph if isinstance(g, UndirectedView) else g
    if set(coloring) != set(range(digraph.n)):
        raise ValueError("coloring must assign a color to every vertex")
    violations = []
    for v in range(digraph.n):
        same = frozenset(u for u, c in coloring.items() if c == coloring[v] and u != v)
        mono = digraph.weight_into(v, same)
        allowed = ranks[v][coloring[v]]
        if mono > allowed:
            violations.append((v, mono, allowed))
    return ColoringReport(not violations, tuple(violations))


def tolerance_of_trace(trace: GameTrace) -> Callable[[int, int], Number]:
    """Per-round tolerances actually presented, as a coloring tolerance
    function (vertex, round color) -> tolerance."""
    by_round = {r.number: r.tolerance for r in trace.rounds}
    return lambda v, c: by_round[c][v]
