"""Plain-text formats for automata, graphs, lasso words, and run reports.

All files are line-based: one ``keyword value...`` statement per line, blank
lines ignored, and any line whose first non-space character is ``#`` is a
comment.  That rule never collides with ``#`` as the stop letter of a graph
alphabet, because the stop letter only ever appears after a keyword, never
at the start of a line.  The symbol ``♮`` is accepted as an input alias for
``#`` wherever a symbol is read.

Parsers raise :class:`ParseError` with a line number for syntax problems.
Semantic well-formedness of automata stays with ``ParityAutomaton.validate``
so callers can report every diagnostic instead of dying on the first one;
graphs are checked for niceness right in the parser (opt out with
``check=False``).  Serializers emit canonical order and round-trip exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .automata import (
    Alphabet,
    Kind,
    LassoWord,
    ParityAutomaton,
    Sink,
    StateRef,
    format_ref,
)
from .reduction import NiceGraph, make_graph, validate_nice

REPORT_VERSION = 1

_SINK_TOKENS = {"TOP": Sink.TOP, "BOT": Sink.BOT}


class ParseError(ValueError):
    """A malformed input file; ``line`` is 1-based, 0 for whole-file problems."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        prefix = f"line {line}: " if line else ""
        super().__init__(f"{prefix}{message}")


def normalize_symbol(symbol: str) -> str:
    """Canonical spelling of a symbol; the stop letter has two spellings."""
    return "#" if symbol == "♮" else symbol


def _statements(text: str) -> list[tuple[int, list[str]]]:
    """Non-comment lines as (line_number, tokens) pairs."""
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((number, stripped.split()))
    return out


def _int_token(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", line) from None


# -- automata -------------------------------------------------------------------


def parse_automaton(text: str) -> ParityAutomaton:
    """Parse the line format produced by :func:`serialize_automaton`.

    Required statements: ``alphabet``, ``states``, ``initial``.  Optional:
    ``kind`` (default parity), ``priority`` and ``trans`` statements.  Sink
    priorities default by kind; holes in the transition or priority tables
    are left for ``validate`` to report.
    """
    alphabet: Alphabet | None = None
    state_count: int | None = None
    kind: Kind | None = None
    initial: StateRef | None = None
    priority: dict = {}
    sink_priority: dict = {}
    delta: dict = {}
    seen_single: dict[str, int] = {}

    for line, tokens in _statements(text):
        keyword, args = tokens[0], tokens[1:]
        if keyword in ("alphabet", "states", "kind", "initial"):
            if keyword in seen_single:
                raise ParseError(
                    f"duplicate {keyword!r} statement (first on line {seen_single[keyword]})", line
                )
            seen_single[keyword] = line
        if keyword == "alphabet":
            if not args:
                raise ParseError("alphabet statement needs at least one symbol", line)
            alphabet = Alphabet(tuple(normalize_symbol(sym) for sym in args))
        elif keyword == "states":
            if len(args) != 1:
                raise ParseError("states statement takes exactly one number", line)
            state_count = _int_token(args[0], "state count", line)
        elif keyword == "kind":
            if len(args) != 1:
                raise ParseError("kind statement takes exactly one of buchi/cobuchi/parity", line)
            try:
                kind = Kind(args[0])
            except ValueError:
                raise ParseError(f"unknown kind {args[0]!r}", line) from None
        elif keyword == "initial":
            if len(args) != 1:
                raise ParseError("initial statement takes exactly one state", line)
            initial = _SINK_TOKENS.get(args[0])
            if initial is None:
                initial = _int_token(args[0], "initial state", line)
        elif keyword == "priority":
            if len(args) != 2:
                raise ParseError("priority statement takes a state and a value", line)
            value = _int_token(args[1], "priority value", line)
            if args[0] in _SINK_TOKENS:
                target = _SINK_TOKENS[args[0]]
                if target in sink_priority:
                    raise ParseError(f"duplicate priority for {args[0]}", line)
                sink_priority[target] = value
            else:
                state = _int_token(args[0], "priority state", line)
                if state in priority:
                    raise ParseError(f"duplicate priority for state {state}", line)
                priority[state] = value
        elif keyword == "trans":
            if len(args) < 3:
                raise ParseError("trans statement takes a state, a symbol, and a target", line)
            state = _int_token(args[0], "source state", line)
            symbol = normalize_symbol(args[1])
            if (state, symbol) in delta:
                raise ParseError(f"duplicate transition for state {state} on {symbol!r}", line)
            targets = args[2:]
            if len(targets) == 1 and targets[0] in _SINK_TOKENS:
                delta[(state, symbol)] = _SINK_TOKENS[targets[0]]
            elif any(t in _SINK_TOKENS for t in targets):
                raise ParseError("a target is either one sink or a list of states, not both", line)
            else:
                delta[(state, symbol)] = frozenset(
                    _int_token(t, "target state", line) for t in targets
                )
        else:
            raise ParseError(f"unknown statement {keyword!r}", line)

    for name, value in (("alphabet", alphabet), ("states", state_count), ("initial", initial)):
        if value is None:
            raise ParseError(f"missing required {name!r} statement")
    return ParityAutomaton.make(
        alphabet=alphabet,
        state_count=state_count,
        initial=initial,
        delta=delta,
        priority=priority,
        kind=kind or Kind.PARITY,
        top_priority=sink_priority.get(Sink.TOP),
        bottom_priority=sink_priority.get(Sink.BOT),
    )


def serialize_automaton(aut: ParityAutomaton) -> str:
    """Canonical text rendering; ``parse_automaton`` inverts it exactly."""
    lines = [
        f"alphabet {' '.join(aut.alphabet.symbols)}",
        f"states {aut.state_count}",
        f"kind {aut.kind.value}",
        f"initial {format_ref(aut.initial)}",
        f"priority TOP {aut.top_priority}",
        f"priority BOT {aut.bottom_priority}",
    ]
    for state in aut.states():
        lines.append(f"priority {state} {aut.priority[state]}")
    for state in aut.states():
        for symbol in aut.alphabet:
            target = aut.delta[(state, symbol)]
            if isinstance(target, Sink):
                rendered = target.value
            else:
                rendered = " ".join(str(q) for q in sorted(target))
            lines.append(f"trans {state} {symbol} {rendered}")
    return "\n".join(lines) + "\n"


# -- graphs ----------------------------------------------------------------------


def parse_graph(text: str, check: bool = True) -> NiceGraph:
    """Parse ``vertices``/``initial``/``edge`` statements.

    By default the parsed graph must also be nice (connected, no
    self-loops, in-range endpoints); pass ``check=False`` to get the raw
    graph and run :func:`gfgmin.validate_nice` yourself.
    """
    vertex_count: int | None = None
    initial_vertex = 0
    saw_initial = False
    edges: list[tuple[int, int]] = []
    seen_single: dict[str, int] = {}

    for line, tokens in _statements(text):
        keyword, args = tokens[0], tokens[1:]
        if keyword in ("vertices", "initial"):
            if keyword in seen_single:
                raise ParseError(
                    f"duplicate {keyword!r} statement (first on line {seen_single[keyword]})", line
                )
            seen_single[keyword] = line
        if keyword == "vertices":
            if len(args) != 1:
                raise ParseError("vertices statement takes exactly one number", line)
            vertex_count = _int_token(args[0], "vertex count", line)
        elif keyword == "initial":
            if len(args) != 1:
                raise ParseError("initial statement takes exactly one vertex", line)
            initial_vertex = _int_token(args[0], "initial vertex", line)
            saw_initial = True
        elif keyword == "edge":
            if len(args) != 2:
                raise ParseError("edge statement takes exactly two vertices", line)
            edges.append(
                (_int_token(args[0], "vertex", line), _int_token(args[1], "vertex", line))
            )
        else:
            raise ParseError(f"unknown statement {keyword!r}", line)

    if vertex_count is None:
        raise ParseError("missing required 'vertices' statement")
    if not saw_initial:
        initial_vertex = 0
    graph = make_graph(vertex_count, edges, initial_vertex)
    if check:
        problems = validate_nice(graph)
        if problems:
            raise ValueError(f"graph is not nice: {problems[0]}")
    return graph


def serialize_graph(graph: NiceGraph) -> str:
    lines = [f"vertices {graph.vertex_count}", f"initial {graph.initial_vertex}"]
    for a, b in sorted(graph.edges):
        lines.append(f"edge {a} {b}")
    return "\n".join(lines) + "\n"


# -- lasso words ------------------------------------------------------------------


def parse_lasso(text: str) -> LassoWord:
    """Parse ``prefix ; period`` with whitespace-separated symbols."""
    if text.count(";") != 1:
        raise ParseError("a lasso word is written 'prefix ; period' with exactly one ';'")
    left, right = text.split(";")
    prefix = tuple(normalize_symbol(sym) for sym in left.split())
    period = tuple(normalize_symbol(sym) for sym in right.split())
    if not period:
        raise ParseError("lasso period must contain at least one symbol")
    return LassoWord(prefix, period)


def serialize_lasso(word: LassoWord) -> str:
    return str(word).strip()


# -- run reports -------------------------------------------------------------------


@dataclass(frozen=True)
class RunReport:
    """The delimited outcome of one command run.

    ``inputs`` pairs each input path with its content digest so a report can
    be matched to the exact files it described.
    """

    command: str
    verdict: str
    inputs: tuple[tuple[str, str], ...] = ()
    details: tuple[tuple[str, str], ...] = ()
    warnings: tuple[str, ...] = ()
    version: int = REPORT_VERSION

    def to_text(self) -> str:
        lines = [f"report-version {self.version}", f"command {self.command}"]
        for path, digest in self.inputs:
            lines.append(f"input {path} {digest}")
        lines.append(f"verdict {self.verdict}")
        for key, value in self.details:
            lines.append(f"detail {key} {value}".rstrip())
        for warning in self.warnings:
            lines.append(f"warning {warning}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "report-version": self.version,
            "command": self.command,
            "inputs": [{"path": path, "sha256": digest} for path, digest in self.inputs],
            "verdict": self.verdict,
            "details": {key: value for key, value in self.details},
            "warnings": list(self.warnings),
        }
        return json.dumps(payload, indent=2) + "\n"


def parse_report(text: str) -> RunReport:
    """Parse the ``to_text`` rendering back into a :class:`RunReport`."""
    version: int | None = None
    command: str | None = None
    verdict: str | None = None
    inputs: list[tuple[str, str]] = []
    details: list[tuple[str, str]] = []
    warnings: list[str] = []

    for line, tokens in _statements(text):
        keyword = tokens[0]
        rest = tokens[1:]
        if keyword == "report-version":
            if len(rest) != 1:
                raise ParseError("report-version takes exactly one number", line)
            version = _int_token(rest[0], "report version", line)
        elif keyword == "command":
            if len(rest) != 1:
                raise ParseError("command takes exactly one word", line)
            command = rest[0]
        elif keyword == "input":
            if len(rest) != 2:
                raise ParseError("input takes a path and a digest", line)
            inputs.append((rest[0], rest[1]))
        elif keyword == "verdict":
            if len(rest) != 1:
                raise ParseError("verdict takes exactly one word", line)
            verdict = rest[0]
        elif keyword == "detail":
            if not rest:
                raise ParseError("detail needs a key", line)
            details.append((rest[0], " ".join(rest[1:])))
        elif keyword == "warning":
            warnings.append(" ".join(rest))
        else:
            raise ParseError(f"unknown report statement {keyword!r}", line)

    if version is None:
        raise ParseError("missing 'report-version' line")
    if command is None:
        raise ParseError("missing 'command' line")
    if verdict is None:
        raise ParseError("missing 'verdict' line")
    return RunReport(
        command=command,
        verdict=verdict,
        inputs=tuple(inputs),
        details=tuple(details),
        warnings=tuple(warnings),
        version=version,
    )


def report_from_json(text: str) -> RunReport:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as error:
        raise ParseError(f"not valid JSON: {error}") from None
    try:
        return RunReport(
            command=payload["command"],
            verdict=payload["verdict"],
            inputs=tuple((item["path"], item["sha256"]) for item in payload.get("inputs", ())),
            details=tuple((key, value) for key, value in payload.get("details", {}).items()),
            warnings=tuple(payload.get("warnings", ())),
            version=payload["report-version"],
        )
    except (KeyError, TypeError) as error:
        raise ParseError(f"report JSON is missing a field: {error}") from None


def file_digest(path: str | Path) -> str:
    """Hex SHA-256 of a file's bytes."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
