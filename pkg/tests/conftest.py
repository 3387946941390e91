"""Shared fixtures: the graph corpus, its cover automata, and small automata."""

from __future__ import annotations

import pytest

from gfgmin import (
    Alphabet,
    Kind,
    NiceGraph,
    ParityAutomaton,
    Sink,
    build_cover_automaton,
    make_graph,
    min_vertex_cover_bruteforce,
)


def path_graph(length: int) -> NiceGraph:
    return make_graph(length, [(i, i + 1) for i in range(length - 1)], 0)


@pytest.fixture(scope="session")
def g2() -> NiceGraph:
    """The one-edge graph: smallest nice graph."""
    return path_graph(2)


@pytest.fixture(scope="session")
def p5() -> NiceGraph:
    """Five-vertex path; its unique two-vertex cover is {1, 3}."""
    return path_graph(5)


@pytest.fixture(scope="session")
def c4() -> NiceGraph:
    """Four-cycle; it has exactly two minimum covers, {0, 2} and {1, 3}."""
    return make_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)], 0)


@pytest.fixture(scope="session")
def s4() -> NiceGraph:
    """Star with four leaves; the center alone is the minimum cover."""
    return make_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)], 0)


@pytest.fixture(scope="session")
def graph_corpus(g2, p5, c4, s4) -> dict[str, NiceGraph]:
    return {
        "P2": g2,
        "P3": path_graph(3),
        "P4": path_graph(4),
        "P5": p5,
        "C4": c4,
        "S4": s4,
    }


# Several vertex covers per graph, the brute-force minimum first.
COVERS = {
    "P2": [frozenset({0}), frozenset({1}), frozenset({0, 1})],
    "P3": [frozenset({1}), frozenset({0, 2})],
    "P4": [frozenset({0, 2}), frozenset({1, 3}), frozenset({1, 2})],
    "P5": [frozenset({1, 3}), frozenset({0, 2, 4})],
    "C4": [frozenset({0, 2}), frozenset({1, 3}), frozenset({0, 1, 2})],
    "S4": [frozenset({0}), frozenset({1, 2, 3, 4})],
}


@pytest.fixture(scope="session")
def min_covers(graph_corpus) -> dict[str, frozenset]:
    return {name: min_vertex_cover_bruteforce(g) for name, g in graph_corpus.items()}


@pytest.fixture(scope="session")
def buchi_references(graph_corpus, min_covers) -> dict[str, ParityAutomaton]:
    """The Büchi cover automaton of each graph's minimum cover."""
    return {
        name: build_cover_automaton(g, min_covers[name], Kind.BUCHI)
        for name, g in graph_corpus.items()
    }


@pytest.fixture(scope="session")
def cobuchi_references(graph_corpus, min_covers) -> dict[str, ParityAutomaton]:
    return {
        name: build_cover_automaton(g, min_covers[name], Kind.COBUCHI)
        for name, g in graph_corpus.items()
    }


@pytest.fixture(scope="session")
def g2_buchi(buchi_references) -> ParityAutomaton:
    return buchi_references["P2"]


@pytest.fixture(scope="session")
def p5_buchi(buchi_references) -> ParityAutomaton:
    return buchi_references["P5"]


@pytest.fixture(scope="session")
def ab() -> Alphabet:
    return Alphabet(("a", "b"))


@pytest.fixture(scope="session")
def inf_a(ab) -> ParityAutomaton:
    """Deterministic two-state automaton for "infinitely many a"."""
    return ParityAutomaton.make(
        alphabet=ab,
        state_count=2,
        initial=0,
        delta={
            (0, "a"): frozenset({1}),
            (0, "b"): frozenset({0}),
            (1, "a"): frozenset({1}),
            (1, "b"): frozenset({0}),
        },
        priority={0: 1, 1: 2},
        kind=Kind.BUCHI,
    )


def small_automata(ab: Alphabet) -> dict[str, ParityAutomaton]:
    """A small mixed corpus over {a, b}: deterministic and not, win and lose."""

    def make(state_count, delta, priority, initial=0):
        return ParityAutomaton.make(
            alphabet=ab,
            state_count=state_count,
            initial=initial,
            delta=delta,
            priority=priority,
            kind=Kind.BUCHI,
        )

    every = make(1, {(0, "a"): frozenset({0}), (0, "b"): frozenset({0})}, {0: 2})
    nothing = make(1, {(0, "a"): frozenset({0}), (0, "b"): frozenset({0})}, {0: 1})
    inf_a = make(
        2,
        {
            (0, "a"): frozenset({1}),
            (0, "b"): frozenset({0}),
            (1, "a"): frozenset({1}),
            (1, "b"): frozenset({0}),
        },
        {0: 1, 1: 2},
    )
    # Guesses the point after which only a's appear; rejects if the guess
    # meets a b.  Equivalent to "finitely many b" but not determinizable
    # without extra states; resolves choices by clairvoyance, not history.
    guess_tail = make(
        2,
        {
            (0, "a"): frozenset({0, 1}),
            (0, "b"): frozenset({0}),
            (1, "a"): frozenset({1}),
            (1, "b"): Sink.BOT,
        },
        {0: 1, 1: 2},
    )
    # Accepts everything, but only if the verifier keeps choosing state 0.
    trap = make(
        2,
        {
            (0, "a"): frozenset({0, 1}),
            (0, "b"): frozenset({0, 1}),
            (1, "a"): frozenset({1}),
            (1, "b"): frozenset({1}),
        },
        {0: 2, 1: 1},
    )
    return {
        "every": every,
        "nothing": nothing,
        "inf-a": inf_a,
        "guess-tail": guess_tail,
        "trap": trap,
    }


@pytest.fixture(scope="session")
def small_corpus(ab) -> dict[str, ParityAutomaton]:
    return small_automata(ab)
