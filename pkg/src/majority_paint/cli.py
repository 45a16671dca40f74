"""Command-line surface: ``mpaint <subcommand>``.

Subcommands: ``play`` (one game, optionally interactive), ``verify``
(randomized batch checks of the strategy guarantees and lower bounds),
``solve`` (exact small-instance game solving), ``kernel``, ``spectral``
and ``check-color`` (thin wrappers over the respective modules).

Every subcommand exits nonzero iff a contract violation or claim failure
occurred.  Fractional flag values accept ``p/q`` literals, which are kept
exact end to end.  ``MP_ROUND_CAP`` overrides the referee's round cap and
``MP_ACCEL`` selects the subset-scan backend (``numba``/``numpy``).
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import engine, kernel, oracle, spectral
from .graph import (
    UndirectedView,
    WeightedDigraph,
    condensation,
    directed_cycle,
    complete_graph,
    format_number,
    load_graph,
    normalize_out_weights,
    parse_number,
    dumps_graph,
    random_digraph,
    random_multi_scc,
    random_strongly_connected,
    random_undirected,
)
from .lister import (
    CliqueLister,
    GameAborted,
    GreedyLister,
    InteractiveLister,
    ListLister,
    RandomLister,
    RankedListLister,
    load_list_assignment,
    random_list_assignment,
    ListAssignment,
)
from .painter import GeneralPainter, UndirectedPainter, make_painter


def _fraction_arg(text: str):
    return parse_number(text, exact=True)


def _load(path, exact):
    return load_graph(path, exact=exact)


def _digraph_of(g) -> WeightedDigraph:
    return g.digraph if isinstance(g, UndirectedView) else g


def _print_coloring(coloring, out):
    print(" ".join(f"{v}:{coloring[v]}" for v in sorted(coloring)), file=out)


# ---------------------------------------------------------------------------
# play


def _build_lister(args, g, tau_map, budgets):
    name = args.lister
    if name == "greedy":
        return GreedyLister()
    if name == "random":
        return RandomLister(args.seed)
    if name == "clique":
        if args.k is None:
            raise SystemExit("--lister clique requires --k")
        return CliqueLister(args.k)
    if name in ("list", "ranked"):
        if not args.lists:
            raise SystemExit(f"--lister {name} requires --lists")
        assignment = load_list_assignment(args.lists, exact=True)
        if name == "ranked":
            return RankedListLister(assignment, g)
        if tau_map is None:
            raise SystemExit("--lister list requires --tau/--kappa mode")
        for v in range(_digraph_of(g).n):
            if len(assignment.lists[v]) != args.kappa:
                raise SystemExit(
                    f"list of vertex {v} has size {len(assignment.lists[v])}, "
                    f"but --kappa is {args.kappa}"
                )
        return ListLister(assignment, tau_map)
    if name == "interactive":
        return InteractiveLister(constant=tau_map, exact=True)
    raise SystemExit(f"unknown lister {name!r}")


def cmd_play(args) -> int:
    g = _load(args.graph, args.exact)
    digraph = _digraph_of(g)
    painter_name = args.painter
    if painter_name == "auto":
        painter_name = "undirected" if isinstance(g, UndirectedView) else "general"
    painter = make_painter(painter_name, g)

    tau_map = None
    if args.tau is not None:
        tau_map = {v: args.tau for v in range(digraph.n)}
        budgets, wrap = engine.kappa_game(digraph, args.tau, args.kappa)
    else:
        budgets = {v: args.budget for v in range(digraph.n)}
        wrap = None

    lister = _build_lister(args, g, tau_map, budgets)
    if wrap is not None and not isinstance(lister, (ListLister, RankedListLister)):
        lister = wrap(lister)

    def echo(state, move, selected):
        if args.interactive or args.verbose:
            tau_text = " ".join(
                f"{v}:{format_number(move.tolerance[v])}" for v in sorted(move.vertices)
            )
            print(f"round {state.round}: admitted {tau_text}")
            print(f"round {state.round}: painter colored {sorted(selected)}")

    try:
        trace = engine.play_game(digraph, budgets, lister, painter, on_round=echo)
    except GameAborted as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return 2
    except engine.EngineError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return 2

    print(f"winner: {trace.winner} after {len(trace.rounds)} rounds")
    if trace.winner == "painter":
        coloring = engine.coloring_from_trace(trace)
        _print_coloring(coloring, sys.stdout)
        if isinstance(lister, ListLister):
            from_lists = {v: lister.color_of_round(r) for v, r in coloring.items()}
            print("from lists:", " ".join(f"{v}:{from_lists[v]}" for v in sorted(from_lists)))
    else:
        witnesses = [
            v for v in sorted(trace.budgets) if v not in trace.coloring
        ]
        print(f"uncolored: {witnesses}")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(trace.to_text())
    return 0


# ---------------------------------------------------------------------------
# verify


@dataclass
class ClaimReport:
    claim: str
    lines: list[str] = field(default_factory=list)
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * 1_000_003 + trial)


def _random_rank(rng, upper) -> Fraction:
    q = rng.choice([1, 2, 3, 4, 6, 8, 12, 16])
    return Fraction(rng.randint(-10 * q, (int(upper) + 10) * q), q)


def _claim_kernel(trials, nmax, seed, report):
    for t in range(trials):
        rng = _trial_rng(seed, t)
        n = rng.randint(1, nmax)
        view = random_undirected(n, rng)
        if rng.random() < 0.5:
            X = frozenset(range(n))
        else:
            X = frozenset(rng.sample(range(n), rng.randint(1, n)))
        rho = {v: _random_rank(rng, view.weight_into(v, X)) for v in X}
        cert = kernel.select_kernel(view, X, rho)
        condition = kernel.kernel_condition_holds(view, X, rho, cert.members)
        kernels = kernel.brute_force_kernels(view, X, rho)
        max_cost = kernel.brute_force_max_cost(view, X, rho)
        if not condition:
            report.failures += 1
            report.lines.append(f"trial {t}: selected set fails the characterisation")
        if not kernels:
            report.failures += 1
            report.lines.append(f"trial {t}: no subset satisfies the characterisation")
        if cert.cost != max_cost:
            report.failures += 1
            report.lines.append(
                f"trial {t}: cost {cert.cost} below brute-force max {max_cost}"
            )
    report.lines.append(
        f"claim=kernel trials={trials} nmax={nmax} seed={seed} "
        f"failures={report.failures}"
    )


def _claim_spectral(trials, nmax, seed, report):
    worst_residual = 0.0
    worst_identity = 0.0
    for t in range(trials):
        rng = _trial_rng(seed, t)
        n = rng.randint(2, nmax)
        g = normalize_out_weights(random_strongly_connected(n, rng))
        try:
            x = spectral.left_eigenvector(g, tol=1e-10)
            view = spectral.symmetrized_graph(g, x)
        except spectral.SpectralError as exc:
            report.failures += 1
            report.lines.append(f"trial {t}: {exc}")
            continue
        worst_residual = max(worst_residual, x.residual)
        for v in range(g.n):
            gap = abs(view.incident_weight(v) - 2.0 * x[v])
            worst_identity = max(worst_identity, gap)
            if gap > 1e-9:
                report.failures += 1
                report.lines.append(f"trial {t}: incident identity off by {gap!r} at {v}")
    report.lines.append(
        f"claim=spectral trials={trials} nmax={nmax} seed={seed} "
        f"worst_residual={worst_residual:.3e} worst_identity={worst_identity:.3e} "
        f"failures={report.failures}"
    )


def _run_games(trials, seed, report, *, make_instance, claim, nmax):
    wins = 0
    for t in range(trials):
        rng = _trial_rng(seed, t)
        g, budgets, lister, painter = make_instance(t, rng)
        try:
            trace = engine.play_game(g, budgets, lister, painter)
        except engine.EngineError as exc:
            report.failures += 1
            report.lines.append(f"trial {t}: {exc}")
            continue
        if trace.winner == "painter":
            wins += 1
        else:
            report.failures += 1
            report.lines.append(f"trial {t}: lister won ({sorted(trace.coloring)})")
    report.lines.append(
        f"claim={claim} trials={trials} nmax={nmax} seed={seed} "
        f"painter_wins={wins} failures={report.failures}"
    )
    return wins


def _claim_undirected(trials, nmax, seed, report):
    def make(t, rng):
        n = rng.randint(1, nmax)
        view = random_undirected(n, rng)
        lister = GreedyLister() if t % 2 == 0 else RandomLister(seed + t)
        return view.digraph, Fraction(1), lister, UndirectedPainter(view)

    _run_games(trials, seed, report, make_instance=make, claim="undirected", nmax=nmax)


def _claim_directed(trials, nmax, seed, report):
    multi = 0

    def make(t, rng):
        nonlocal multi
        if t % 2 == 0:
            n = rng.randint(2, nmax)
            g = random_multi_scc(n, rng, blocks=rng.randint(2, 3))
        else:
            n = rng.randint(1, nmax)
            g = random_digraph(n, rng)
        if len(condensation(g)) > 1:
            multi += 1
        lister = GreedyLister() if t % 2 == 0 else RandomLister(seed + t)
        return g, Fraction(2), lister, GeneralPainter(g)

    _run_games(trials, seed, report, make_instance=make, claim="directed", nmax=nmax)
    report.lines.append(f"multi_component_instances={multi}/{trials}")
    if multi * 2 < trials:
        report.failures += 1
        report.lines.append("fewer than half the instances had multiple components")


def _claim_lists(trials, nmax, seed, report, *, claim, k, list_size, palette, undirected):
    tau = Fraction(1, k)
    wins = 0
    for t in range(trials):
        rng = _trial_rng(seed, t)
        n = rng.randint(1, nmax)
        if undirected:
            view = random_undirected(n, rng)
            g = view.digraph
            painter = UndirectedPainter(view)
        else:
            g = random_digraph(n, rng)
            painter = GeneralPainter(g)
        assignment = random_list_assignment(n, list_size, palette, rng)
        budgets, _ = engine.kappa_game(g, tau, list_size)
        lister = ListLister(assignment, tau)
        try:
            trace = engine.play_game(g, budgets, lister, painter)
        except engine.EngineError as exc:
            report.failures += 1
            report.lines.append(f"trial {t}: {exc}")
            continue
        if trace.winner != "painter":
            report.failures += 1
            report.lines.append(f"trial {t}: lister won")
            continue
        coloring = engine.coloring_from_trace(trace)
        check = engine.verify_coloring(g, coloring, engine.tolerance_of_trace(trace))
        final = {v: lister.color_of_round(r) for v, r in coloring.items()}
        in_lists = all(final[v] in assignment.lists[v] for v in range(n))
        fraction_ok = bool(engine.verify_coloring(g, final, tau))
        if not (check and in_lists and fraction_ok):
            report.failures += 1
            report.lines.append(
                f"trial {t}: coloring invalid (per-round={bool(check)}, "
                f"lists={in_lists}, fraction={fraction_ok})"
            )
            continue
        wins += 1
    report.lines.append(
        f"claim={claim} trials={trials} nmax={nmax} seed={seed} "
        f"list_size={list_size} palette={palette} painter_wins={wins} "
        f"failures={report.failures}"
    )


def _claim_ranked(trials, nmax, seed, report):
    wins = 0
    for t in range(trials):
        rng = _trial_rng(seed, t)
        n = rng.randint(1, nmax)
        view = random_undirected(n, rng)
        palette = rng.randint(2, 4)
        lists = {
            v: frozenset(rng.sample(range(1, palette + 1), rng.randint(1, palette)))
            for v in range(n)
        }
        ranks: dict[int, dict[int, Fraction]] = {}
        for v in range(n):
            need = Fraction(view.incident_weight(v))
            raw = {c: Fraction(rng.randint(0, 20), rng.choice([1, 2, 4])) for c in lists[v]}
            total = sum(raw.values())
            if total < need:
                if total == 0:
                    first = min(raw)
                    raw[first] = need
                else:
                    raw = {c: r * need / total for c, r in raw.items()}
            ranks[v] = raw
        assignment = ListAssignment(lists, ranks)
        lister = RankedListLister(assignment, view)
        try:
            trace = engine.play_game(view.digraph, Fraction(1), lister, UndirectedPainter(view))
        except engine.EngineError as exc:
            report.failures += 1
            report.lines.append(f"trial {t}: {exc}")
            continue
        if trace.winner != "painter":
            report.failures += 1
            report.lines.append(f"trial {t}: lister won")
            continue
        coloring = engine.coloring_from_trace(trace)
        final = {v: lister.color_of_round(r) for v, r in coloring.items()}
        in_lists = all(final[v] in lists[v] for v in range(n))
        ranked_ok = bool(engine.verify_ranked_coloring(view, final, ranks))
        if not (in_lists and ranked_ok):
            report.failures += 1
            report.lines.append(f"trial {t}: lists={in_lists} ranked={ranked_ok}")
            continue
        wins += 1
    report.lines.append(
        f"claim=ranked trials={trials} nmax={nmax} seed={seed} "
        f"painter_wins={wins} failures={report.failures}"
    )


def _claim_lower_bounds(report):
    import itertools

    half = Fraction(1, 2)
    checks: list[tuple[str, bool]] = []
    k2 = complete_graph(2)
    k3 = complete_graph(3)
    tri = directed_cycle(3)
    checks.append(
        ("K2 not 1/2-majority 1-colorable",
         oracle.is_majority_colorable(k2, half, 1).verdict == "not-colorable")
    )
    checks.append(
        ("K3 not 1/3-majority 2-colorable",
         oracle.is_majority_colorable(k3, Fraction(1, 3), 2).verdict == "not-colorable")
    )
    checks.append(
        ("directed triangle not 1/2-majority 2-colorable",
         oracle.is_majority_colorable(tri, half, 2).verdict == "not-colorable")
    )
    full2 = list(itertools.permutations(range(2)))
    rot3 = [tuple((v + s) % 3 for v in range(3)) for s in range(3)]
    checks.append(
        ("presenter wins K2 at count 1, tolerance 1/2",
         oracle.solve_kappa_game(k2, half, 1, group=full2).verdict == "lister")
    )
    checks.append(
        ("presenter wins directed triangle at count 2, tolerance 1/2",
         oracle.solve_kappa_game(tri, half, 2, group=rot3).verdict == "lister")
    )
    checks.append(
        ("all-uncolored presenter beats every responder on K2 at budget 1/2",
         oracle.beats_every_responder(k2, lambda: CliqueLister(2), half))
    )
    checks.append(
        ("all-uncolored presenter beats every responder on K3 at budget 2/3",
         oracle.beats_every_responder(k3, lambda: CliqueLister(3), Fraction(2, 3)))
    )
    checks.append(
        ("all-uncolored presenter beats every responder on directed triangle at budget 1",
         oracle.beats_every_responder(tri, lambda: CliqueLister(2), Fraction(1)))
    )
    for label, ok in checks:
        if not ok:
            report.failures += 1
        report.lines.append(f"{'ok ' if ok else 'FAIL'} {label}")
    report.lines.append(
        f"claim=lower-bounds checks={len(checks)} failures={report.failures}"
    )


def _claim_cross_check(seed, report, *, nmax=4):
    tau = Fraction(1, 2)
    count = 0
    solved_painter = 0
    engine_wins = 0
    for n in range(2, nmax + 1):
        for g in oracle.all_digraphs_up_to_iso(n):
            count += 1
            res = oracle.solve_kappa_game(g, tau, 4)
            if res.verdict != "painter":
                report.failures += 1
                report.lines.append(f"solver says {res.verdict} on n={n} {g.edges}")
                continue
            solved_painter += 1
            budgets, wrap = engine.kappa_game(g, tau, 4)
            adversaries = [
                CliqueLister(2),  # presents every uncolored vertex each round
                GreedyLister(),
                RandomLister(seed + count),
            ]
            ok = True
            for adversary in adversaries:
                trace = engine.play_game(g, budgets, wrap(adversary), GeneralPainter(g))
                if trace.winner != "painter":
                    ok = False
                    report.failures += 1
                    report.lines.append(f"engine loss on n={n} {g.edges}")
                    break
            if ok and n <= 3:
                if not oracle.responder_survives_every_line(g, tau, 4, lambda: GeneralPainter(g)):
                    ok = False
                    report.failures += 1
                    report.lines.append(f"exhaustive loss on n={n} {g.edges}")
            if ok:
                engine_wins += 1
    report.lines.append(
        f"claim=cross-check graphs={count} solver_painter={solved_painter} "
        f"engine_painter={engine_wins} seed={seed} failures={report.failures}"
    )


_CLAIM_DEFAULTS = {
    "kernel": (500, 14),
    "undirected": (1000, 12),
    "spectral": (200, 30),
    "directed": (1000, 12),
    "choosability-k2": (200, 10),
    "choosability-k3": (200, 10),
    "lovasz": (200, 10),
    "ranked": (100, 10),
    "lower-bounds": (1, 0),
    "cross-check": (1, 4),
}


def run_claim(claim: str, *, trials: int | None = None, nmax: int | None = None, seed: int = 0) -> ClaimReport:
    """Run one verification claim; deterministic for a fixed seed."""
    if claim not in _CLAIM_DEFAULTS:
        raise ValueError(f"unknown claim {claim!r}; choose from {sorted(_CLAIM_DEFAULTS)}")
    d_trials, d_nmax = _CLAIM_DEFAULTS[claim]
    trials = d_trials if trials is None else trials
    nmax = d_nmax if nmax is None else nmax
    report = ClaimReport(claim)
    if claim == "kernel":
        _claim_kernel(trials, nmax, seed, report)
    elif claim == "undirected":
        _claim_undirected(trials, nmax, seed, report)
    elif claim == "spectral":
        _claim_spectral(trials, nmax, seed, report)
    elif claim == "directed":
        _claim_directed(trials, nmax, seed, report)
    elif claim == "choosability-k2":
        _claim_lists(trials, nmax, seed, report, claim=claim, k=2, list_size=4,
                     palette=8, undirected=False)
    elif claim == "choosability-k3":
        _claim_lists(trials, nmax, seed, report, claim=claim, k=3, list_size=6,
                     palette=12, undirected=False)
    elif claim == "lovasz":
        _claim_lists(trials, nmax, seed, report, claim=claim, k=2, list_size=2,
                     palette=4, undirected=True)
    elif claim == "ranked":
        _claim_ranked(trials, nmax, seed, report)
    elif claim == "lower-bounds":
        _claim_lower_bounds(report)
    elif claim == "cross-check":
        _claim_cross_check(seed, report, nmax=nmax)
    report.lines.append(f"result={'PASS' if report.passed else 'FAIL'}")
    return report


def cmd_verify(args) -> int:
    claims = sorted(_CLAIM_DEFAULTS) if args.claim == "all" else [args.claim]
    failed = 0
    chunks = []
    for claim in claims:
        report = run_claim(claim, trials=args.trials, nmax=args.n, seed=args.seed)
        failed += report.failures
        chunks.append(report.text())
    text = "".join(chunks)
    print(text, end="")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# solve / kernel / spectral / check-color


def _symmetry_group(name: str, n: int):
    import itertools

    if name == "none":
        return None
    if name == "rotations":
        return [tuple((v + s) % n for v in range(n)) for s in range(n)]
    if name == "full":
        return list(itertools.permutations(range(n)))
    raise SystemExit(f"unknown symmetry {name!r}")


def cmd_solve(args) -> int:
    g = _digraph_of(_load(args.graph, args.exact))
    group = _symmetry_group(args.symmetry, g.n)
    try:
        result = oracle.solve_kappa_game(g, args.tau, args.kappa, group=group)
    except (oracle.InstanceTooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"winner: {result.verdict}")
    if args.witness:
        strategy = result.strategy
        start = tuple(0 for _ in range(g.n))
        seen = set()
        stack = [strategy.canonical(start)]
        while stack:
            state = stack.pop()
            if state in seen or all(s == -1 for s in state):
                continue
            if any(s != -1 and s >= args.kappa for s in state):
                continue
            seen.add(state)
            move = strategy.lister_moves.get(state)
            if move is None:
                continue
            reply = strategy.painter_replies.get((state, move))
            print(f"state={state} present={sorted(move)} "
                  f"reply={sorted(reply) if reply is not None else 'none'}")
            for x, r in (
                (x, r) for (s, x), r in strategy.painter_replies.items() if s == state
            ):
                if r is None:
                    continue
                succ = list(state)
                for v in range(g.n):
                    if v in r:
                        succ[v] = -1
                    elif v in x:
                        succ[v] += 1
                stack.append(strategy.canonical(tuple(succ)))
    return 0


def _parse_pairs(text: str):
    pairs = {}
    for item in text.split():
        v, _, value = item.partition(":")
        pairs[int(v)] = parse_number(value, exact=True)
    return pairs


def cmd_kernel(args) -> int:
    g = _load(args.graph, args.exact)
    if not isinstance(g, UndirectedView):
        try:
            g = UndirectedView(g)
        except Exception as exc:
            print(f"error: kernel selection needs an undirected graph: {exc}", file=sys.stderr)
            return 2
    rho = _parse_pairs(args.ranks)
    cert = kernel.select_kernel(g, rho.keys(), rho)
    print(f"selected: {sorted(cert.members)}")
    print(f"cost: {format_number(cert.cost)}")
    print("vertex rank selected_weight presented_weight")
    for v in sorted(rho):
        print(
            f"{v} {format_number(rho[v])} "
            f"{format_number(cert.neighbor_weight[v])} "
            f"{format_number(cert.presented_weight[v])}"
        )
    return 0


def cmd_spectral(args) -> int:
    g = _digraph_of(_load(args.graph, args.exact))
    try:
        normalized = normalize_out_weights(g)
        x = spectral.left_eigenvector(normalized, tol=args.tol)
        view = spectral.symmetrized_graph(normalized, x)
    except (spectral.SpectralError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for v, value in enumerate(x.values):
        print(f"x[{v}] = {value!r}")
    print(f"residual = {x.residual:.3e}")
    print(dumps_graph(view), end="")
    return 0


def cmd_check_color(args) -> int:
    g = _load(args.graph, args.exact)
    coloring = {}
    with open(args.coloring, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            v, c = line.split()
            coloring[int(v)] = int(c)
    report = engine.verify_coloring(g, coloring, args.tau)
    if report.ok:
        print("ok")
        return 0
    for v, mono, allowed in report.violations:
        print(f"violation at {v}: monochromatic {format_number(mono)} "
              f"> allowed {format_number(allowed)}")
    return 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpaint",
        description="Ranked-majority painting games on weighted digraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    play = sub.add_parser("play", help="play one game")
    play.add_argument("--graph", required=True)
    mode = play.add_mutually_exclusive_group(required=True)
    mode.add_argument("--lambda", dest="budget", type=_fraction_arg,
                      help="uniform budget (ranked play)")
    mode.add_argument("--tau", type=_fraction_arg,
                      help="uniform fixed tolerance (requires --kappa)")
    play.add_argument("--kappa", type=int, help="uniform presentation count")
    play.add_argument("--painter", default="auto",
                      choices=["auto", "undirected", "scc", "general", "edgeless"])
    play.add_argument("--lister", default="greedy",
                      choices=["greedy", "random", "list", "ranked", "clique", "interactive"])
    play.add_argument("--lists", help="list-assignment file for list/ranked listers")
    play.add_argument("--k", type=int, help="k for the clique lister (tolerance 1/k)")
    play.add_argument("--seed", type=int, default=0)
    play.add_argument("--trace", help="write the game trace to this file")
    play.add_argument("--interactive", action="store_true",
                      help="shorthand for --lister interactive")
    play.add_argument("--verbose", action="store_true", help="echo every round")
    play.add_argument("--exact", action="store_true",
                      help="parse decimal weights as exact rationals")
    play.set_defaults(func=cmd_play)

    verify = sub.add_parser("verify", help="randomized batch verification")
    verify.add_argument("--claim", required=True,
                        choices=[*sorted(_CLAIM_DEFAULTS), "all"])
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--n", type=int, default=None, help="max instance size")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--report", help="also write the report to this file")
    verify.set_defaults(func=cmd_verify)

    solve = sub.add_parser("solve", help="exact winner of a fixed-tolerance game")
    solve.add_argument("--graph", required=True)
    solve.add_argument("--tau", type=_fraction_arg, required=True)
    solve.add_argument("--kappa", type=int, required=True)
    solve.add_argument("--witness", action="store_true",
                       help="print the strategy table for reachable states")
    solve.add_argument("--symmetry", default="none", choices=["none", "rotations", "full"])
    solve.add_argument("--exact", action="store_true")
    solve.set_defaults(func=cmd_solve)

    kern = sub.add_parser("kernel", help="select a kernel for explicit ranks")
    kern.add_argument("--graph", required=True)
    kern.add_argument("--ranks", required=True,
                      help='space-separated "<vertex>:<rank>" pairs')
    kern.add_argument("--exact", action="store_true")
    kern.set_defaults(func=cmd_kernel)

    spec = sub.add_parser("spectral", help="left eigenvector and symmetrization")
    spec.add_argument("--graph", required=True)
    spec.add_argument("--tol", type=float, default=1e-10)
    spec.add_argument("--exact", action="store_true")
    spec.set_defaults(func=cmd_spectral)

    check = sub.add_parser("check-color", help="verify a coloring file")
    check.add_argument("--graph", required=True)
    check.add_argument("--coloring", required=True, help='file of "<vertex> <color>" lines')
    check.add_argument("--tau", type=_fraction_arg, required=True)
    check.add_argument("--exact", action="store_true")
    check.set_defaults(func=cmd_check_color)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "interactive", False):
        args.lister = "interactive"
    if getattr(args, "tau", None) is not None and getattr(args, "kappa", None) is None:
        if args.command == "play":
            parser.error("--tau requires --kappa")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
