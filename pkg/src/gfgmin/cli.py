"""Command line interface.

Every command prints one delimited run report to stdout (``--json`` switches
the rendering) and signals its verdict through the exit code: 0 for an
affirmative answer, 1 for a negative one, 2 for errors, unusable input, or
an inconclusive search.  Commands that produce an artifact — a generated
automaton, an arena dump — write it to a file named by the command's output
option, never to stdout.  With ``--figures DIR`` each command renders its
inputs (and products) as PNG files in that directory and lists them in the
report.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .automata import Kind, ParityAutomaton, format_ref, ref_sort_key
from .formats import (
    ParseError,
    RunReport,
    file_digest,
    parse_automaton,
    parse_graph,
    parse_lasso,
    serialize_automaton,
    serialize_lasso,
)
from .gfg import includes
from .minimize import Budget, Measure, SearchSpec, SearchStatus, minimize
from .reduction import (
    NiceGraph,
    StructureMode,
    build_cover_automaton,
    check_core_structure,
    classify_states,
    extract_cover,
    is_vertex_cover,
    min_vertex_cover_bruteforce,
    validate_nice,
)
from .simulation import build_arena, check_positional_strategy, dump_arena, solve_verifier

_ARENA_FIGURE_LIMIT = 400

_TRUSTED_REFERENCE_WARNING = (
    "the reference automaton is nondeterministic: verdicts are sound only if "
    "it is known to be good-for-games"
)


class _Run:
    """Collects report pieces while a command executes."""

    def __init__(self, args: argparse.Namespace, command: str):
        self.args = args
        self.command = command
        self.inputs: list[tuple[str, str]] = []
        self.details: list[tuple[str, str]] = []
        self.warnings: list[str] = []

    def load_automaton(self, path: str) -> ParityAutomaton:
        text = Path(path).read_text(encoding="utf-8")
        self.inputs.append((path, file_digest(path)))
        return parse_automaton(text)

    def load_valid_automaton(self, path: str) -> ParityAutomaton:
        aut = self.load_automaton(path)
        problems = aut.validate()
        if problems:
            raise ValueError(f"automaton {path} is not well-formed: {problems[0]}")
        return aut

    def load_graph(self, path: str, check: bool = True) -> NiceGraph:
        text = Path(path).read_text(encoding="utf-8")
        self.inputs.append((path, file_digest(path)))
        return parse_graph(text, check=check)

    def detail(self, key: str, value: object) -> None:
        self.details.append((key, str(value)))

    def warn(self, text: str) -> None:
        self.warnings.append(text)

    def figure(self, name: str, kind: str, obj: object) -> None:
        if not self.args.figures:
            return
        from . import viz  # imported lazily: report-only runs never need it

        directory = Path(self.args.figures)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"{name}.png"
        renderer = {
            "graph": viz.save_graph_figure,
            "automaton": viz.save_automaton_figure,
            "arena": viz.save_arena_figure,
        }[kind]
        renderer(obj, path)
        self.detail("figure", path)

    def report(self, verdict: str) -> RunReport:
        return RunReport(
            command=self.command,
            verdict=verdict,
            inputs=tuple(self.inputs),
            details=tuple(self.details),
            warnings=tuple(self.warnings),
        )


# -- command handlers ----------------------------------------------------------


def _cmd_validate(args: argparse.Namespace) -> tuple[RunReport, int]:
    run = _Run(args, "validate")
    if args.graph:
        graph = run.load_graph(args.path, check=False)
        problems = validate_nice(graph)
        run.detail("vertices", graph.vertex_count)
        run.detail("edges", len(graph.edges))
        if not problems:
            run.figure("input-graph", "graph", graph)
    else:
        aut = run.load_automaton(args.path)
        problems = aut.validate()
        run.detail("states", aut.state_count)
        run.detail("kind", aut.kind.value)
        if not problems:
            run.detail("deterministic", "true" if aut.is_deterministic() else "false")
            run.figure("input-automaton", "automaton", aut)
    for problem in problems:
        run.detail("problem", problem)
    return run.report("VALID" if not problems else "INVALID"), 0 if not problems else 1


def _cmd_accepts(args: argparse.Namespace) -> tuple[RunReport, int]:
    run = _Run(args, "accepts")
    aut = run.load_valid_automaton(args.aut)
    word = parse_lasso(args.word)
    run.detail("word", serialize_lasso(word))
    run.figure("input-automaton", "automaton", aut)
    accepted = aut.accepts_lasso(word)
    return run.report("ACCEPT" if accepted else "REJECT"), 0 if accepted else 1


def _arena_details(run: _Run, arena) -> None:
    run.detail("arena-positions", len(arena.positions))
    run.detail("arena-responses", len(arena.response_ids))
    if len(arena.positions) <= _ARENA_FIGURE_LIMIT:
        run.figure("arena", "arena", arena)
    elif run.args.figures:
        run.warn("arena is too large to draw")


def _cmd_include(args: argparse.Namespace) -> tuple[RunReport, int]:
    run = _Run(args, "include")
    left = run.load_valid_automaton(args.left)
    right = run.load_valid_automaton(args.right)
    if not right.is_deterministic():
        run.warn(_TRUSTED_REFERENCE_WARNING)
    arena = build_arena(left, right)
    _arena_details(run, arena)
    result = solve_verifier(arena)
    verdict = "INCLUDED" if result.verifier_wins else "NOT-INCLUDED"
    return run.report(verdict), 0 if result.verifier_wins else 1


def _cmd_gfg_equiv(args: argparse.Namespace) -> tuple[RunReport, int]:
    run = _Run(args, "gfg-equiv")
    candidate = run.load_valid_automaton(args.candidate)
    reference = run.load_valid_automaton(args.reference)
    if not reference.is_deterministic():
        run.warn(_TRUSTED_REFERENCE_WARNING)
    forward = includes(candidate, reference)
    backward = includes(reference, candidate) if forward else False
    run.detail("forward", "included" if forward else "not-included")
    if forward:
        run.detail("backward", "included" if backward else "not-included")
    equivalent = forward and backward
    return run.report("EQUIVALENT" if equivalent else "NOT-EQUIVALENT"), 0 if equivalent else 1


def _parse_cover(text: str) -> frozenset:
    vertices = set()
    for part in text.split(","):
        token = part.strip()
        if not token:
            continue
        try:
            vertices.add(int(token[1:] if token.startswith("v") else token))
        except ValueError:
            raise ValueError(
                f"cover must be 'auto' or comma-separated vertices like 'v1,v3', got {text!r}"
            ) from None
    return frozenset(vertices)


def _cmd_gen_reduction(args: argparse.Namespace) -> tuple[RunReport, int]:
    run = _Run(args, "gen-reduction")
    graph = run.load_graph(args.graph)
    if args.cover == "auto":
        cover = min_vertex_cover_bruteforce(graph)
    else:
        cover = _parse_cover(args.cover)
    kind = Kind(args.kind)
    aut = build_cover_automaton(graph, cover, kind)
    Path(args.out).write_text(serialize_automaton(aut), encoding="utf-8")
    run.detail("cover", " ".join(str(v) for v in sorted(cover)))
    run.detail("cover-size", len(cover))
    run.detail("states", aut.state_count)
    run.detail("kind", kind.value)
    run.detail("output", args.out)
    run.figure("input-graph", "graph", graph)
    run.figure("cover-automaton", "automaton", aut)
    return run.report("BUILT"), 0


def _cmd_classify(args: argparse.Namespace) -> tuple[RunReport, int]:
    run = _Run(args, "classify")
    aut = run.load_valid_automaton(args.automaton)
    graph = run.load_graph(args.graph)
    classified = classify_states(aut, graph)
    order = lambda ref: ref_sort_key(ref, aut.state_count)  # noqa: E731
    for v in range(graph.vertex_count):
        refs = sorted(classified.v_states[v], key=order)
        run.detail(f"v-states-{v}", " ".join(format_ref(r) for r in refs))
    for v in range(graph.vertex_count):
        refs = sorted(classified.natural_states[v], key=order)
        run.detail(f"natural-states-{v}", " ".join(format_ref(r) for r in refs))
    run.figure("input-automaton", "automaton", aut)
    run.figure("input-graph", "graph", graph)
    return run.report("CLASSIFIED"), 0


def _cmd_extract_cover(args: argparse.Namespace) -> tuple[RunReport, int]:
    run = _Run(args, "extract-cover")
    aut = run.load_valid_automaton(args.automaton)
    graph = run.load_graph(args.graph)
    cover = extract_cover(aut, graph)
    covers = is_vertex_cover(graph, cover)
    run.detail("vertices", " ".join(str(v) for v in sorted(cover)))
    run.detail("size", len(cover))
    run.figure("input-graph", "graph", graph)
    return run.report("COVER" if covers else "NOT-COVER"), 0 if covers else 1


def _cmd_check_structure(args: argparse.Namespace) -> tuple[RunReport, int]:
    run = _Run(args, "check-structure")
    aut = run.load_valid_automaton(args.automaton)
    graph = run.load_graph(args.graph)
    mode = StructureMode(args.mode)
    report = check_core_structure(aut, graph, mode)
    run.detail("mode", mode.value)
    for item in report.items:
        run.detail(f"item-{item.number}", f"{'pass' if item.holds else 'fail'} {item.description}")
        for failure in item.failures:
            run.warn(f"item {item.number}: {failure}")
    for note in report.notes:
        run.warn(note)
    run.figure("input-automaton", "automaton", aut)
    return run.report("STRUCTURE-OK" if report.all_hold else "STRUCTURE-BROKEN"), (
        0 if report.all_hold else 1
    )


def _cmd_min_vc(args: argparse.Namespace) -> tuple[RunReport, int]:
    run = _Run(args, "min-vc")
    graph = run.load_graph(args.graph)
    cover = min_vertex_cover_bruteforce(graph)
    run.detail("vertices", " ".join(str(v) for v in sorted(cover)))
    run.detail("size", len(cover))
    run.figure("input-graph", "graph", graph)
    return run.report("COVER"), 0


def _cmd_min_search(args: argparse.Namespace) -> tuple[RunReport, int]:
    run = _Run(args, "min-search")
    reference = run.load_valid_automaton(args.ref)
    if not reference.is_deterministic():
        run.warn(_TRUSTED_REFERENCE_WARNING)
    spec = SearchSpec(
        alphabet=reference.alphabet,
        bound=args.k,
        kind=Kind(args.kind) if args.kind else reference.kind,
        measure=Measure(args.measure),
        deterministic=args.deterministic,
        max_priority=args.max_priority,
    )
    budget = Budget(max_candidates=args.max_candidates, max_seconds=args.seconds)
    outcome = minimize(reference, spec, budget)
    run.detail("bound", args.k)
    run.detail("measure", spec.measure.value)
    run.detail("candidates-checked", outcome.candidates_checked)
    run.detail("elapsed-seconds", f"{outcome.elapsed_seconds:.3f}")
    if outcome.reason:
        run.detail("reason", outcome.reason)
    if outcome.automaton is not None:
        run.detail("found-states", outcome.automaton.state_count)
        run.detail("found-transitions", outcome.automaton.transition_table_size())
        if args.out:
            Path(args.out).write_text(serialize_automaton(outcome.automaton), encoding="utf-8")
            run.detail("output", args.out)
        run.figure("found-automaton", "automaton", outcome.automaton)
    code = {SearchStatus.FOUND: 0, SearchStatus.NONE: 1, SearchStatus.INCONCLUSIVE: 2}
    return run.report(outcome.status.value.upper()), code[outcome.status]


def _cmd_solve_sim(args: argparse.Namespace) -> tuple[RunReport, int]:
    run = _Run(args, "solve-sim")
    left = run.load_valid_automaton(args.left)
    right = run.load_valid_automaton(args.right)
    arena = build_arena(left, right)
    _arena_details(run, arena)
    if args.dump:
        Path(args.dump).write_text(dump_arena(arena), encoding="utf-8")
        run.detail("dump", args.dump)
    result = solve_verifier(arena)
    if result.strategy is not None:
        run.detail("strategy-size", len(result.strategy.choices))
        verified = check_positional_strategy(arena, result.strategy)
        run.detail("strategy-verified", "true" if verified else "false")
        rendered = " ".join(
            f"{rid}:{choice}" for rid, choice in sorted(result.strategy.choices.items())
        )
        if rendered:
            run.detail("strategy", rendered)
    verdict = "VERIFIER-WINS" if result.verifier_wins else "SPOILER-WINS"
    return run.report(verdict), 0 if result.verifier_wins else 1


# -- parser ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--figures", metavar="DIR", help="render input figures into DIR")

    parser = argparse.ArgumentParser(
        prog="gfgmin",
        description="Simulation games, vertex-cover reductions, and bounded "
        "minimization for parity automata.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("validate", parents=[common], help="check an automaton or graph file")
    p.add_argument("path")
    p.add_argument("--graph", action="store_true", help="treat the file as a graph")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("accepts", parents=[common], help="run an automaton on a lasso word")
    p.add_argument("--aut", required=True, help="automaton file")
    p.add_argument("--word", required=True, help="the word, written 'prefix ; period'")
    p.set_defaults(handler=_cmd_accepts)

    p = sub.add_parser("include", parents=[common], help="decide simulation-based inclusion")
    p.add_argument("left", help="automaton whose language must be covered")
    p.add_argument("right", help="automaton that must cover it")
    p.set_defaults(handler=_cmd_include)

    p = sub.add_parser("gfg-equiv", parents=[common], help="decide two-way simulation equivalence")
    p.add_argument("--candidate", required=True, help="automaton under test")
    p.add_argument("--reference", required=True, help="automaton defining the target language")
    p.set_defaults(handler=_cmd_gfg_equiv)

    p = sub.add_parser("gen-reduction", parents=[common], help="build a cover automaton from a graph")
    p.add_argument("--graph", required=True, help="nice graph file")
    p.add_argument(
        "--cover",
        default="auto",
        help="'auto' for a brute-force minimum cover, or vertices like 'v1,v3'",
    )
    p.add_argument("--kind", choices=["buchi", "cobuchi"], default="buchi")
    p.add_argument("--out", required=True, help="file to write the automaton to")
    p.set_defaults(handler=_cmd_gen_reduction)

    p = sub.add_parser("classify", parents=[common], help="list reachable states per vertex")
    p.add_argument("automaton")
    p.add_argument("graph")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("extract-cover", parents=[common], help="read a vertex cover off an automaton")
    p.add_argument("automaton")
    p.add_argument("graph")
    p.set_defaults(handler=_cmd_extract_cover)

    p = sub.add_parser("check-structure", parents=[common], help="verify the six structural facts")
    p.add_argument("automaton")
    p.add_argument("graph")
    p.add_argument("--mode", choices=["characteristic", "adjusted"], required=True)
    p.set_defaults(handler=_cmd_check_structure)

    p = sub.add_parser("min-vc", parents=[common], help="brute-force a minimum vertex cover")
    p.add_argument("graph")
    p.set_defaults(handler=_cmd_min_vc)

    p = sub.add_parser("min-search", parents=[common], help="search for a small equivalent automaton")
    p.add_argument("--ref", required=True, help="reference automaton file")
    p.add_argument("--k", type=int, required=True, help="measure bound")
    p.add_argument("--kind", choices=["buchi", "cobuchi", "parity"],
                   help="candidate kind (default: the reference's kind)")
    p.add_argument("--measure", choices=["states", "transitions"], default="states")
    p.add_argument(
        "--deterministic-only",
        dest="deterministic",
        action="store_true",
        help="search deterministic candidates only",
    )
    p.add_argument("--max-priority", type=int, help="cap on candidate priorities (parity kind)")
    p.add_argument("--max-candidates", type=int, help="stop after checking this many candidates")
    p.add_argument("--seconds", type=float, help="stop after this much wall-clock time")
    p.add_argument("--out", help="file to write a found automaton to")
    p.set_defaults(handler=_cmd_min_search)

    p = sub.add_parser("solve-sim", parents=[common], help="solve a simulation game explicitly")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--dump", help="file to write the arena listing to")
    p.set_defaults(handler=_cmd_solve_sim)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse arguments, execute one command, print its report, return the exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.handler(args)
    except (ParseError, ValueError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    rendered = report.to_json() if args.json else report.to_text()
    sys.stdout.write(rendered)
    return code


def main() -> None:
    sys.exit(run())
