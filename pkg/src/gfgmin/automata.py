"""Nondeterministic parity automata with accept/reject sinks, and lasso words.

States are dense integers ``0 .. state_count-1`` plus two implicit sinks:
``Sink.TOP`` (accepting, even priority) and ``Sink.BOT`` (rejecting, odd
priority).  Sinks are not counted by ``state_count``.  A transition target is
either a non-empty ``frozenset`` of state indices or exactly one sink —
mixing sink and regular targets in one set is not representable on purpose.

Ultimately periodic words are the only word representation: ``LassoWord``
holds a finite prefix and a non-empty period repeated forever.

Automata are frozen dataclasses; the ``delta``/``priority`` dicts they carry
are treated as immutable by convention, and every operation returns a new
automaton instead of mutating.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Union

from .scc import has_cycle_through, strongly_connected_components


class Sink(Enum):
    """The two transition sinks: TOP accepts every continuation, BOT none."""

    TOP = "TOP"
    BOT = "BOT"

    def __repr__(self) -> str:
        return self.value


StateRef = Union[int, Sink]
Target = Union[frozenset, Sink]


class Kind(Enum):
    BUCHI = "buchi"
    COBUCHI = "cobuchi"
    PARITY = "parity"


def default_sink_priorities(kind: Kind) -> tuple[int, int]:
    """Default (TOP, BOT) priorities for each automaton kind."""
    if kind is Kind.BUCHI:
        return (2, 1)
    if kind is Kind.COBUCHI:
        return (2, 3)
    return (0, 1)


def ref_sort_key(ref: StateRef, state_count: int) -> int:
    """Canonical ordering: regular states by index, then TOP, then BOT."""
    if isinstance(ref, Sink):
        return state_count + (0 if ref is Sink.TOP else 1)
    return ref


def format_ref(ref: StateRef) -> str:
    return ref.value if isinstance(ref, Sink) else str(ref)


@dataclass(frozen=True)
class Alphabet:
    """An ordered, duplicate-free tuple of symbol names."""

    symbols: tuple[str, ...]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {sym: i for i, sym in enumerate(self.symbols)}

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} is not in the alphabet") from None

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._index

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class LassoWord:
    """The ultimately periodic word ``prefix . period^ω``."""

    prefix: tuple[str, ...]
    period: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.period:
            raise ValueError("lasso period must be non-empty")

    @property
    def length(self) -> int:
        return len(self.prefix) + len(self.period)

    def symbol_at(self, position: int) -> str:
        """Symbol of the infinite word at ``position`` (0-based)."""
        if position < len(self.prefix):
            return self.prefix[position]
        return self.period[(position - len(self.prefix)) % len(self.period)]

    def unrolled(self) -> "LassoWord":
        """Same word with one period copy moved into the prefix."""
        return LassoWord(self.prefix + self.period, self.period)

    def doubled(self) -> "LassoWord":
        """Same word with the period repeated twice."""
        return LassoWord(self.prefix, self.period + self.period)

    def rotated(self) -> "LassoWord":
        """Same word with the first period symbol absorbed into the prefix."""
        return LassoWord(self.prefix + self.period[:1], self.period[1:] + self.period[:1])

    def __str__(self) -> str:
        return f"{' '.join(self.prefix)} ; {' '.join(self.period)}"


@dataclass(frozen=True)
class ParityAutomaton:
    """A nondeterministic parity automaton over ``alphabet``.

    ``delta`` maps ``(state, symbol)`` to a target; ``priority`` maps each
    regular state to its priority.  A run is accepting iff the highest
    priority it visits infinitely often is even.
    """

    alphabet: Alphabet
    state_count: int
    initial: StateRef
    delta: dict
    priority: dict
    kind: Kind
    top_priority: int
    bottom_priority: int

    @classmethod
    def make(
        cls,
        alphabet: Alphabet,
        state_count: int,
        initial: StateRef,
        delta: dict,
        priority: dict,
        kind: Kind = Kind.PARITY,
        top_priority: int | None = None,
        bottom_priority: int | None = None,
    ) -> "ParityAutomaton":
        """Construct an automaton, filling sink priorities from kind defaults."""
        top_default, bottom_default = default_sink_priorities(kind)
        return cls(
            alphabet=alphabet,
            state_count=state_count,
            initial=initial,
            delta=dict(delta),
            priority=dict(priority),
            kind=kind,
            top_priority=top_default if top_priority is None else top_priority,
            bottom_priority=bottom_default if bottom_priority is None else bottom_priority,
        )

    # -- basic accessors ---------------------------------------------------

    def states(self) -> range:
        return range(self.state_count)

    def priority_of(self, ref: StateRef) -> int:
        if ref is Sink.TOP:
            return self.top_priority
        if ref is Sink.BOT:
            return self.bottom_priority
        return self.priority[ref]

    def successor_refs(self, ref: StateRef, symbol: str) -> tuple[StateRef, ...]:
        """Ordered successors of ``ref`` on ``symbol``; sinks loop on themselves."""
        if isinstance(ref, Sink):
            return (ref,)
        target = self.delta[(ref, symbol)]
        if isinstance(target, Sink):
            return (target,)
        return tuple(sorted(target))

    # -- structural checks -------------------------------------------------

    def validate(self) -> list[str]:
        """Diagnostics for every violated well-formedness condition (empty = valid)."""
        problems: list[str] = []
        syms = self.alphabet.symbols
        if not syms:
            problems.append("alphabet is empty")
        seen: set[str] = set()
        for sym in syms:
            if not sym or any(ch.isspace() for ch in sym):
                problems.append(f"alphabet symbol {sym!r} is empty or contains whitespace")
            if sym in seen:
                problems.append(f"alphabet symbol {sym!r} occurs twice")
            seen.add(sym)
        if self.state_count < 0:
            problems.append(f"state_count is negative ({self.state_count})")
        if isinstance(self.initial, int) and not 0 <= self.initial < self.state_count:
            problems.append(f"initial state {self.initial} is out of range")
        for state in self.states():
            for sym in syms:
                target = self.delta.get((state, sym))
                if target is None:
                    problems.append(f"no transition for (state {state}, symbol {sym!r})")
                elif isinstance(target, frozenset):
                    if not target:
                        problems.append(f"empty transition target at (state {state}, symbol {sym!r})")
                    for member in target:
                        if not isinstance(member, int) or not 0 <= member < self.state_count:
                            problems.append(
                                f"transition target {member!r} at (state {state}, symbol {sym!r}) is out of range"
                            )
                elif not isinstance(target, Sink):
                    problems.append(f"malformed transition target at (state {state}, symbol {sym!r})")
        for key in self.delta:
            state, sym = key
            if not (isinstance(state, int) and 0 <= state < self.state_count) or sym not in seen:
                problems.append(f"transition declared for unknown pair {key!r}")
        for state in self.states():
            value = self.priority.get(state)
            if value is None:
                problems.append(f"no priority for state {state}")
            elif not isinstance(value, int) or value < 0:
                problems.append(f"priority of state {state} must be a natural number, got {value!r}")
        for state in self.priority:
            if not isinstance(state, int) or not 0 <= state < self.state_count:
                problems.append(f"priority declared for unknown state {state!r}")
        if self.top_priority % 2 != 0:
            problems.append(f"TOP priority must be even, got {self.top_priority}")
        if self.bottom_priority % 2 != 1:
            problems.append(f"BOT priority must be odd, got {self.bottom_priority}")
        allowed = {Kind.BUCHI: {1, 2}, Kind.COBUCHI: {2, 3}}.get(self.kind)
        if allowed is not None:
            used = {v for v in self.priority.values() if isinstance(v, int)}
            used |= {self.top_priority, self.bottom_priority}
            extra = sorted(used - allowed)
            if extra:
                problems.append(f"{self.kind.value} automaton uses priorities {extra} outside {sorted(allowed)}")
        return problems

    def is_deterministic(self) -> bool:
        """True when every transition target is a sink or a singleton."""
        for state in self.states():
            for sym in self.alphabet:
                target = self.delta[(state, sym)]
                if isinstance(target, frozenset) and len(target) != 1:
                    return False
        return True

    def transition_table_size(self) -> int:
        """Total number of table entries: sinks count one, sets their size."""
        total = 0
        for state in self.states():
            for sym in self.alphabet:
                target = self.delta[(state, sym)]
                total += 1 if isinstance(target, Sink) else len(target)
        return total

    # -- transformations ----------------------------------------------------

    def normalize_priorities(self) -> "ParityAutomaton":
        """Compact the priority range without changing the language.

        While some priority ``p >= 2`` is absent below the maximum, every
        priority above ``p`` drops by two (parities are preserved).  The
        result uses a maximum priority of at most ``state_count + 1``.
        """
        priority = dict(self.priority)
        top, bottom = self.top_priority, self.bottom_priority
        while True:
            present = set(priority.values()) | {top, bottom}
            highest = max(present)
            missing = next((p for p in range(2, highest) if p not in present), None)
            if missing is None:
                break
            priority = {q: (v - 2 if v > missing else v) for q, v in priority.items()}
            top = top - 2 if top > missing else top
            bottom = bottom - 2 if bottom > missing else bottom
        return dataclasses.replace(self, priority=priority, top_priority=top, bottom_priority=bottom)

    def rebase(self, ref: StateRef) -> "ParityAutomaton":
        """The same automaton started at ``ref`` (a state index or a sink)."""
        if isinstance(ref, int) and not 0 <= ref < self.state_count:
            raise ValueError(f"cannot rebase to unknown state {ref}")
        if not isinstance(ref, (int, Sink)):
            raise ValueError(f"cannot rebase to {ref!r}")
        return dataclasses.replace(self, initial=ref)

    # -- acceptance ----------------------------------------------------------

    def accepts_lasso(self, word: LassoWord) -> bool:
        """Does some run on ``word`` make the highest infinitely-repeated priority even?

        Builds the product of the automaton with the word's loop structure,
        then looks — for each candidate even priority ``p`` in descending
        order — for a reachable SCC within the ``<= p`` sub-product that
        contains a priority-``p`` node on a cycle.
        """
        symbols = list(word.prefix + word.period)
        for sym in symbols:
            if sym not in self.alphabet:
                raise ValueError(f"symbol {sym!r} is not in the alphabet")
        total = word.length
        loop_start = len(word.prefix)

        ids: dict[tuple[StateRef, int], int] = {}
        succ: list[list[int]] = []
        prio: list[int] = []
        refs: list[tuple[StateRef, int]] = []

        def intern(key: tuple[StateRef, int]) -> int:
            node = ids.get(key)
            if node is None:
                node = len(refs)
                ids[key] = node
                refs.append(key)
                succ.append([])
                prio.append(self.priority_of(key[0]))
            return node

        start = intern((self.initial, 0))
        frontier = [start]
        while frontier:
            node = frontier.pop()
            ref, pos = refs[node]
            nxt_pos = pos + 1 if pos + 1 < total else loop_start
            out = succ[node]
            if out:
                continue
            for nxt_ref in self.successor_refs(ref, symbols[pos]):
                key = (nxt_ref, nxt_pos)
                known = key in ids
                child = intern(key)
                out.append(child)
                if not known:
                    frontier.append(child)

        for p in sorted({v for v in prio if v % 2 == 0}, reverse=True):
            sub = [i for i, v in enumerate(prio) if v <= p]
            for component in strongly_connected_components(sub, succ):
                if any(prio[i] == p for i in component) and has_cycle_through(component, succ):
                    return True
        return False


def states_with_nonempty_language(aut: ParityAutomaton) -> frozenset:
    """All state refs (sinks included) from which some lasso is accepted."""
    n = aut.state_count
    all_refs: list[StateRef] = list(range(n)) + [Sink.TOP, Sink.BOT]
    node_of = {ref: i for i, ref in enumerate(all_refs)}
    succ: list[list[int]] = []
    for ref in all_refs:
        out: set[int] = set()
        for sym in aut.alphabet:
            for nxt in aut.successor_refs(ref, sym):
                out.add(node_of[nxt])
        succ.append(sorted(out))
    prio = [aut.priority_of(ref) for ref in all_refs]

    seeds: set[int] = set()
    for p in {v for v in prio if v % 2 == 0}:
        sub = [i for i, v in enumerate(prio) if v <= p]
        for component in strongly_connected_components(sub, succ):
            if any(prio[i] == p for i in component) and has_cycle_through(component, succ):
                seeds.update(component)

    pred: list[list[int]] = [[] for _ in all_refs]
    for node, out in enumerate(succ):
        for nxt in out:
            pred[nxt].append(node)
    alive = set(seeds)
    frontier = list(seeds)
    while frontier:
        node = frontier.pop()
        for before in pred[node]:
            if before not in alive:
                alive.add(before)
                frontier.append(before)
    return frozenset(all_refs[i] for i in alive)
