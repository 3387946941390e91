"""Vertex-cover reductions: nice graphs, their languages, and cover automata.

A *nice graph* is a simple connected undirected graph with more than one
vertex and a distinguished initial vertex.  Over the alphabet ``V ∪ {#}``
(``#`` is the stop letter) two word families matter:

* the *characteristic* language: trace-words whose letters, after collapsing
  consecutive repeats and prepending the initial vertex, walk along edges
  forever; plus stop-words that walk finitely, then read ``#`` followed by
  the vertex the walk ended on (anything afterwards);
* the *adjusted* language: the same stop-words, but trace-words must come to
  rest — the collapsed walk has to be finite.

``build_cover_automaton`` turns a vertex cover into a deterministic automaton
with ``2|V| + |C|`` states whose Büchi reading recognizes the characteristic
language and whose co-Büchi reading recognizes the adjusted one.  Going the
other way, ``extract_cover`` reads a vertex cover off any automaton for the
language, and ``check_core_structure`` verifies the six structural facts that
force the ``2|V| + |C|`` state bound.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum

from .automata import (
    Alphabet,
    Kind,
    LassoWord,
    ParityAutomaton,
    Sink,
    StateRef,
    format_ref,
    ref_sort_key,
    states_with_nonempty_language,
)
from .gfg import includes

STOP_SYMBOL = "#"

_MAX_CHECK_STATES = 30
_MAX_CHECK_VERTICES = 8
_MAX_BRUTE_VERTICES = 20


@dataclass(frozen=True)
class NiceGraph:
    """Simple connected undirected graph with an initial vertex."""

    vertex_count: int
    edges: frozenset  # of (i, j) tuples with i < j
    initial_vertex: int

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> list[int]:
        out = [b if a == v else a for a, b in self.edges if v in (a, b)]
        return sorted(out)


def make_graph(vertex_count: int, edges, initial_vertex: int = 0) -> NiceGraph:
    """Normalize an edge list into a :class:`NiceGraph` (unvalidated)."""
    normalized = frozenset((min(u, v), max(u, v)) for u, v in edges)
    return NiceGraph(vertex_count=vertex_count, edges=normalized, initial_vertex=initial_vertex)


def validate_nice(graph: NiceGraph) -> list[str]:
    """Diagnostics for everything that keeps the graph from being nice."""
    problems: list[str] = []
    n = graph.vertex_count
    if n <= 1:
        problems.append(f"a nice graph needs more than one vertex, got {n}")
    if not 0 <= graph.initial_vertex < max(n, 1):
        problems.append(f"initial vertex {graph.initial_vertex} is out of range")
    for a, b in sorted(graph.edges):
        if a == b:
            problems.append(f"self-loop at vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            problems.append(f"edge ({a}, {b}) mentions an unknown vertex")
    if problems:
        return problems
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in graph.neighbors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        problems.append(f"graph is not connected: vertices {missing} are unreachable")
    return problems


def vertex_symbol(v: int) -> str:
    return f"v{v}"


def graph_alphabet(graph: NiceGraph) -> Alphabet:
    """Vertex symbols in index order, then the stop letter."""
    return Alphabet(tuple(vertex_symbol(v) for v in range(graph.vertex_count)) + (STOP_SYMBOL,))


# -- vertex covers -------------------------------------------------------------


def is_vertex_cover(graph: NiceGraph, cover) -> bool:
    chosen = set(cover)
    return all(a in chosen or b in chosen for a, b in graph.edges)


def min_vertex_cover_bruteforce(graph: NiceGraph) -> frozenset:
    """Smallest vertex cover, lexicographically first among its size class."""
    if graph.vertex_count > _MAX_BRUTE_VERTICES:
        raise ValueError(
            f"brute-force cover search is capped at {_MAX_BRUTE_VERTICES} vertices, "
            f"got {graph.vertex_count}"
        )
    for size in range(graph.vertex_count + 1):
        for combo in itertools.combinations(range(graph.vertex_count), size):
            if is_vertex_cover(graph, combo):
                return frozenset(combo)
    raise AssertionError("the full vertex set always covers")  # pragma: no cover


# -- the two word families -----------------------------------------------------


def _decode(graph: NiceGraph, word: LassoWord) -> tuple[list[int | None], list[int | None]]:
    """Map word symbols to vertex indices (``None`` marks the stop letter)."""
    lookup = {vertex_symbol(v): v for v in range(graph.vertex_count)}
    lookup[STOP_SYMBOL] = None

    def run(part: tuple[str, ...]) -> list[int | None]:
        out = []
        for sym in part:
            if sym not in lookup:
                raise ValueError(f"symbol {sym!r} does not belong to the graph alphabet")
            out.append(lookup[sym])
        return out

    return run(word.prefix), run(word.period)


def _walks_along_edges(graph: NiceGraph, vertices: list[int]) -> bool:
    """After collapsing repeats, must every consecutive pair be an edge?"""
    return all(a == b or graph.has_edge(a, b) for a, b in zip(vertices, vertices[1:]))


def characteristic_contains(graph: NiceGraph, word: LassoWord) -> bool:
    """Membership in the characteristic language of the graph."""
    prefix, period = _decode(graph, word)
    flat = prefix + period
    if None not in flat:
        # Trace-word: must collapse to an infinite walk from the initial vertex.
        if len(set(period)) < 2:
            return False
        seq = [graph.initial_vertex] + prefix + period + [period[0]]
        return _walks_along_edges(graph, seq)
    stop_at = flat.index(None)
    before = flat[:stop_at]
    seq = [graph.initial_vertex] + before
    if not _walks_along_edges(graph, seq):
        return False
    resting = seq[-1]
    return word.symbol_at(stop_at + 1) == vertex_symbol(resting)


def adjusted_contains(graph: NiceGraph, word: LassoWord) -> bool:
    """Membership in the adjusted language: trace-words must come to rest."""
    prefix, period = _decode(graph, word)
    flat = prefix + period
    if None not in flat:
        if len(set(period)) != 1:
            return False
        seq = [graph.initial_vertex] + prefix + [period[0]]
        return _walks_along_edges(graph, seq)
    stop_at = flat.index(None)
    before = flat[:stop_at]
    seq = [graph.initial_vertex] + before
    if not _walks_along_edges(graph, seq):
        return False
    resting = seq[-1]
    return word.symbol_at(stop_at + 1) == vertex_symbol(resting)


# -- cover automaton -----------------------------------------------------------


def cover_state_labels(graph: NiceGraph, cover) -> dict:
    """Index -> (vertex, tag) layout used by :func:`build_cover_automaton`.

    Tags: ``"n"`` for plain vertex states, ``"nat"`` for post-stop states,
    ``"f"`` for the flagged copies of cover vertices.
    """
    n = graph.vertex_count
    labels: dict[int, tuple[int, str]] = {}
    for v in range(n):
        labels[v] = (v, "n")
    for v in range(n):
        labels[n + v] = (v, "nat")
    for rank, v in enumerate(sorted(cover)):
        labels[2 * n + rank] = (v, "f")
    return labels


def build_cover_automaton(graph: NiceGraph, cover, kind: Kind) -> ParityAutomaton:
    """Deterministic automaton with ``2|V| + |C|`` states built from a cover.

    The Büchi reading accepts the characteristic language; the co-Büchi
    reading accepts the adjusted language.  Each vertex gets a plain state
    and a post-stop state; each cover vertex additionally gets a flagged
    state that behaves like the plain one but carries the marked priority.
    """
    if kind not in (Kind.BUCHI, Kind.COBUCHI):
        raise ValueError("cover automata are built in buchi or cobuchi kind")
    problems = validate_nice(graph)
    if problems:
        raise ValueError("; ".join(problems))
    cover_set = frozenset(cover)
    if not all(0 <= v < graph.vertex_count for v in cover_set):
        raise ValueError("cover mentions unknown vertices")
    if not is_vertex_cover(graph, cover_set):
        raise ValueError("the given vertex set is not a vertex cover")

    n = graph.vertex_count
    alphabet = graph_alphabet(graph)
    plain = {v: v for v in range(n)}
    post = {v: n + v for v in range(n)}
    flagged = {v: 2 * n + rank for rank, v in enumerate(sorted(cover_set))}

    delta: dict = {}
    priority: dict = {}

    def vertex_row(v: int) -> dict:
        row: dict = {}
        for w in range(n):
            sym = vertex_symbol(w)
            if w == v:
                row[sym] = frozenset({plain[v]})
            elif graph.has_edge(v, w):
                row[sym] = frozenset({flagged[w] if w in cover_set else plain[w]})
            else:
                row[sym] = Sink.BOT
        row[STOP_SYMBOL] = frozenset({post[v]})
        return row

    for v in range(n):
        row = vertex_row(v)
        for sym, target in row.items():
            delta[(plain[v], sym)] = target
            if v in cover_set:
                delta[(flagged[v], sym)] = target
        for sym in alphabet:
            delta[(post[v], sym)] = Sink.TOP if sym == vertex_symbol(v) else Sink.BOT

    marked, unmarked = (2, 1) if kind is Kind.BUCHI else (3, 2)
    for v in range(n):
        priority[plain[v]] = unmarked
        priority[post[v]] = unmarked
        if v in cover_set:
            priority[flagged[v]] = marked

    return ParityAutomaton.make(
        alphabet=alphabet,
        state_count=2 * n + len(cover_set),
        initial=plain[graph.initial_vertex],
        delta=delta,
        priority=priority,
        kind=kind,
    )


# -- state classification ------------------------------------------------------


@dataclass(frozen=True)
class StateClassification:
    """Per-vertex reachable state sets of an automaton over a graph alphabet.

    ``v_states[v]`` holds every state some run can sit in after a word that
    walks the graph and currently rests on ``v``; ``natural_states[v]`` holds
    every state reachable from those by reading the stop letter.  Sinks can
    occur in both sets.
    """

    v_states: dict
    natural_states: dict


def classify_states(aut: ParityAutomaton, graph: NiceGraph) -> StateClassification:
    """Least fixpoint of walk-reachability over (vertex, state) pairs."""
    expected = graph_alphabet(graph)
    if aut.alphabet.symbols != expected.symbols:
        raise ValueError("automaton alphabet does not match the graph alphabet")
    problems = validate_nice(graph)
    if problems:
        raise ValueError("; ".join(problems))

    v_states: dict[int, set] = {v: set() for v in range(graph.vertex_count)}
    pending: deque[tuple[int, StateRef]] = deque()

    def add(v: int, ref: StateRef) -> None:
        if ref not in v_states[v]:
            v_states[v].add(ref)
            pending.append((v, ref))

    add(graph.initial_vertex, aut.initial)
    while pending:
        v, ref = pending.popleft()
        for nxt in aut.successor_refs(ref, vertex_symbol(v)):
            add(v, nxt)
        for w in graph.neighbors(v):
            for nxt in aut.successor_refs(ref, vertex_symbol(w)):
                add(w, nxt)

    natural_states: dict[int, set] = {}
    for v in range(graph.vertex_count):
        out: set = set()
        for ref in v_states[v]:
            out.update(aut.successor_refs(ref, STOP_SYMBOL))
        natural_states[v] = out

    order = lambda ref: ref_sort_key(ref, aut.state_count)  # noqa: E731
    return StateClassification(
        v_states={v: frozenset(sorted(s, key=order)) for v, s in v_states.items()},
        natural_states={v: frozenset(sorted(s, key=order)) for v, s in natural_states.items()},
    )


def extract_cover(aut: ParityAutomaton, graph: NiceGraph) -> frozenset:
    """Vertices holding an even-priority v-state.

    For any automaton of the characteristic language this set is forced to
    be a vertex cover, which is what makes the state bound tight.
    """
    classified = classify_states(aut, graph)
    return frozenset(
        v
        for v in range(graph.vertex_count)
        if any(aut.priority_of(ref) % 2 == 0 for ref in classified.v_states[v])
    )


# -- structure check -----------------------------------------------------------


class StructureMode(Enum):
    CHARACTERISTIC = "characteristic"
    ADJUSTED = "adjusted"


@dataclass(frozen=True)
class ItemResult:
    number: int
    holds: bool
    description: str
    failures: tuple[str, ...] = ()


@dataclass(frozen=True)
class StructureReport:
    mode: StructureMode
    items: tuple[ItemResult, ...]
    notes: tuple[str, ...]

    @property
    def all_hold(self) -> bool:
        return all(item.holds for item in self.items)


def _stop_then_vertex_witness(alphabet: Alphabet, v_sym: str) -> ParityAutomaton:
    """Three-state automaton accepting exactly the lassos starting ``# v``."""
    delta: dict = {}
    for sym in alphabet:
        delta[(0, sym)] = frozenset({1}) if sym == STOP_SYMBOL else Sink.BOT
        delta[(1, sym)] = frozenset({2}) if sym == v_sym else Sink.BOT
        delta[(2, sym)] = frozenset({2})
    return ParityAutomaton.make(
        alphabet=alphabet,
        state_count=3,
        initial=0,
        delta=delta,
        priority={0: 1, 1: 1, 2: 2},
        kind=Kind.BUCHI,
    )


def _vertex_first_witness(alphabet: Alphabet, v_sym: str) -> ParityAutomaton:
    """Two-state automaton accepting exactly the lassos starting ``v``."""
    delta: dict = {}
    for sym in alphabet:
        delta[(0, sym)] = frozenset({1}) if sym == v_sym else Sink.BOT
        delta[(1, sym)] = frozenset({1})
    return ParityAutomaton.make(
        alphabet=alphabet,
        state_count=2,
        initial=0,
        delta=delta,
        priority={0: 1, 1: 2},
        kind=Kind.BUCHI,
    )


def check_core_structure(
    aut: ParityAutomaton, graph: NiceGraph, mode: StructureMode
) -> StructureReport:
    """Verify the six structural facts behind the ``2|V| + |C|`` lower bound.

    The "accepts everything of this shape" items are decided by inclusion
    games against small witness automata; the "accepts nothing of this
    shape" items by reaching two letters deep and demanding every reached
    state have an empty language.  The parity expectations of items 2 and 6
    swap between the two modes.
    """
    if aut.state_count > _MAX_CHECK_STATES:
        raise ValueError(f"structure check is capped at {_MAX_CHECK_STATES} states")
    if graph.vertex_count > _MAX_CHECK_VERTICES:
        raise ValueError(f"structure check is capped at {_MAX_CHECK_VERTICES} vertices")

    classified = classify_states(aut, graph)
    nonempty = states_with_nonempty_language(aut)
    alphabet = aut.alphabet
    vertices = range(graph.vertex_count)
    order = lambda ref: ref_sort_key(ref, aut.state_count)  # noqa: E731

    core_v: dict[int, list] = {}
    for v in vertices:
        witness = _stop_then_vertex_witness(alphabet, vertex_symbol(v))
        core_v[v] = [
            ref
            for ref in sorted(classified.v_states[v], key=order)
            if includes(witness, aut.rebase(ref))
        ]

    core_natural: dict[int, list] = {}
    for v in vertices:
        witness = _vertex_first_witness(alphabet, vertex_symbol(v))
        core_natural[v] = [
            ref
            for ref in sorted(classified.natural_states[v], key=order)
            if includes(witness, aut.rebase(ref))
        ]

    failures1 = tuple(
        f"vertex {v}: no v-state accepts every word starting '{STOP_SYMBOL} {vertex_symbol(v)}'"
        for v in vertices
        if not core_v[v]
    )

    want_even_core = mode is StructureMode.ADJUSTED
    wanted = "even" if want_even_core else "odd"
    failures2 = tuple(
        f"vertex {v}: no core v-state has an {wanted} priority"
        for v in vertices
        if not any(aut.priority_of(ref) % 2 == (0 if want_even_core else 1) for ref in core_v[v])
    )

    letters = [vertex_symbol(v) for v in vertices] + [STOP_SYMBOL]

    def all_empty(refs) -> bool:
        return all(ref not in nonempty for ref in refs)

    failures3: list[str] = []
    for v in vertices:
        for ref in sorted(classified.v_states[v], key=order):
            after_stop = aut.successor_refs(ref, STOP_SYMBOL)
            for letter in letters:
                if letter == vertex_symbol(v):
                    continue
                landed = {nxt for mid in after_stop for nxt in aut.successor_refs(mid, letter)}
                if not all_empty(landed):
                    failures3.append(
                        f"v-state {format_ref(ref)} of vertex {v} accepts a word starting "
                        f"'{STOP_SYMBOL} {letter}'"
                    )

    failures4 = tuple(
        f"vertex {v}: no post-stop state accepts every word starting '{vertex_symbol(v)}'"
        for v in vertices
        if not core_natural[v]
    )

    failures5: list[str] = []
    for v in vertices:
        for ref in sorted(classified.natural_states[v], key=order):
            for letter in letters:
                if letter == vertex_symbol(v):
                    continue
                landed = aut.successor_refs(ref, letter)
                if not all_empty(landed):
                    failures5.append(
                        f"post-stop state {format_ref(ref)} of vertex {v} accepts a word "
                        f"starting '{letter}'"
                    )

    want_even_edge = mode is StructureMode.CHARACTERISTIC
    wanted_edge = "even" if want_even_edge else "odd"
    failures6: list[str] = []
    for a, b in sorted(graph.edges):
        hit = any(
            aut.priority_of(ref) % 2 == (0 if want_even_edge else 1)
            for ref in classified.v_states[a] | classified.v_states[b]
        )
        if not hit:
            failures6.append(f"edge ({a}, {b}): no {wanted_edge}-priority state on either end")

    items = (
        ItemResult(1, not failures1, "every vertex has a core v-state", failures1),
        ItemResult(2, not failures2, f"every vertex has an {wanted}-priority core v-state", failures2),
        ItemResult(3, not failures3, "v-states reject stop-words of other vertices", tuple(failures3)),
        ItemResult(4, not failures4, "every vertex has a core post-stop state", failures4),
        ItemResult(5, not failures5, "post-stop states reject words of other letters", tuple(failures5)),
        ItemResult(6, not failures6, f"every edge sees an {wanted_edge}-priority endpoint state", tuple(failures6)),
    )
    notes = (
        "item 5 is checked over the post-stop states of each vertex; the plain v-state "
        "reading would be vacuous because those states change on the stop letter",
    )
    return StructureReport(mode=mode, items=items, notes=notes)
