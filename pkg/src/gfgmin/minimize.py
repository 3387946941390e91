"""Bounded minimization by canonical enumeration of candidate automata.

``enumerate_candidates`` streams every automaton within a size bound, in a
fixed canonical order: the two sink-initial automata first, then all
structures with 1, 2, ... states.  A structure is a transition table in
canonical form — state indices equal first-reference order under a row-major
scan, and every state is reachable.  For deterministic tables that rules out
isomorphic duplicates entirely; a nondeterministic target that introduces
two fresh states at once leaves their relative order open, so a few
isomorphic twins survive there (harmless for search, they only cost time).
Each structure is paired with every priority assignment allowed by the
automaton kind.

``minimize`` walks the same candidate stream looking for one equivalent to a
reference automaton.  Before paying for an equivalence game it probes each
candidate with all short lasso words: a candidate that disagrees with the
reference on any word cannot be equivalent, and for deterministic structures
the probe outcomes depend only on the transition table, so whole batches of
priority assignments are screened against memoized runs.  The result is
``FOUND`` with a witness, ``NONE`` when the bound is exhausted, or
``INCONCLUSIVE`` when a candidate or time budget cut the search short.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union

from .automata import Alphabet, Kind, LassoWord, ParityAutomaton, Sink, Target
from .gfg import gfg_equivalent

_PROBE_TOTAL_LENGTH = 3


class Measure(Enum):
    """What the size bound counts."""

    STATES = "states"
    TRANSITIONS = "transitions"


@dataclass(frozen=True)
class Budget:
    """Optional caps on the search; ``None`` means unlimited."""

    max_candidates: int | None = None
    max_seconds: float | None = None


@dataclass(frozen=True)
class Truncation:
    """End-of-stream marker: candidates past this point were not produced."""

    reason: str


@dataclass(frozen=True)
class SearchSpec:
    """The candidate space: alphabet, size bound, kind, and shape limits."""

    alphabet: Alphabet
    bound: int
    kind: Kind
    measure: Measure = Measure.STATES
    deterministic: bool = False
    max_priority: int | None = None

    def __post_init__(self) -> None:
        if not self.alphabet.symbols:
            raise ValueError("search alphabet must be non-empty")
        if self.bound < 0:
            raise ValueError(f"search bound must be non-negative, got {self.bound}")
        if self.kind is not Kind.PARITY and self.max_priority is not None:
            raise ValueError("max_priority applies to parity searches only")
        if self.max_priority is not None and self.max_priority < 0:
            raise ValueError(f"max_priority must be non-negative, got {self.max_priority}")

    @property
    def state_bound(self) -> int:
        """Largest state count any candidate may have."""
        if self.measure is Measure.STATES:
            return self.bound
        return self.bound // len(self.alphabet)

    @property
    def effective_max_priority(self) -> int:
        """Parity priority ceiling; compacted priorities never need more.

        Any automaton with ``n`` states is equivalent to one whose priorities
        stay within ``0 .. n + 1``, so that is the default ceiling.
        """
        if self.max_priority is not None:
            return self.max_priority
        return self.state_bound + 1


class SearchStatus(Enum):
    FOUND = "found"
    NONE = "none"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class MinimizeOutcome:
    status: SearchStatus
    automaton: ParityAutomaton | None
    candidates_checked: int
    elapsed_seconds: float
    reason: str | None = None


# -- canonical structures ------------------------------------------------------


def _target_options(mask_limit: int, next_new: int, deterministic: bool) -> list:
    """Canonical target order for one cell: state sets ascending, then sinks.

    A set may reference already-introduced states (below ``next_new``) and a
    contiguous run of brand-new states starting exactly at ``next_new``; any
    gap would leave a state whose index disagrees with first-reference order.
    Returns ``(target, next_new_after)`` pairs.
    """
    options: list = []
    for mask in range(1, mask_limit):
        if deterministic and mask & (mask - 1):
            continue
        fresh = mask >> next_new
        if fresh & (fresh + 1):
            continue
        states = frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)
        options.append((states, max(next_new, mask.bit_length())))
    options.append((Sink.TOP, next_new))
    options.append((Sink.BOT, next_new))
    return options


def _iter_structures(alphabet: Alphabet, n: int, deterministic: bool) -> Iterator[dict]:
    """All canonical ``n``-state transition tables, in enumeration order."""
    if n == 0:
        yield {}
        return
    symbols = alphabet.symbols
    cells = [(q, sym) for q in range(n) for sym in symbols]
    first_symbol = symbols[0]
    mask_limit = 1 << n
    delta: dict = {}

    def fill(index: int, next_new: int) -> Iterator[dict]:
        if index == len(cells):
            if next_new == n:
                yield dict(delta)
            return
        q, sym = cells[index]
        if sym == first_symbol and 0 < q >= next_new:
            return  # state q was never referenced: it can no longer be reachable
        if deterministic and n - next_new > len(cells) - index:
            return  # too few cells left to introduce every missing state
        for target, after in _target_options(mask_limit, next_new, deterministic):
            delta[(q, sym)] = target
            yield from fill(index + 1, after)
        del delta[(q, sym)]

    yield from fill(0, 1)


def _priority_tuples(spec: SearchSpec, n: int) -> list[tuple[int, ...]]:
    """All priority assignments for ``n`` states, in enumeration order."""
    if n == 0:
        return [()]
    if spec.kind is Kind.BUCHI:
        values: tuple[int, ...] = (1, 2)
    elif spec.kind is Kind.COBUCHI:
        values = (2, 3)
    else:
        values = tuple(range(spec.effective_max_priority + 1))
    tuples = itertools.product(values, repeat=n)
    if spec.kind is Kind.PARITY:
        return sorted(tuples, key=lambda t: (max(t), t))
    return list(tuples)


def _structure_table_size(delta: dict) -> int:
    return sum(1 if isinstance(t, Sink) else len(t) for t in delta.values())


def _sink_initial(spec: SearchSpec, sink: Sink) -> ParityAutomaton:
    return ParityAutomaton.make(
        alphabet=spec.alphabet,
        state_count=0,
        initial=sink,
        delta={},
        priority={},
        kind=spec.kind,
    )


def _assemble(spec: SearchSpec, n: int, delta: dict, priorities: tuple[int, ...]) -> ParityAutomaton:
    return ParityAutomaton.make(
        alphabet=spec.alphabet,
        state_count=n,
        initial=0 if n else Sink.TOP,
        delta=delta,
        priority=dict(enumerate(priorities)),
        kind=spec.kind,
    )


def measure_of(aut: ParityAutomaton, measure: Measure) -> int:
    if measure is Measure.STATES:
        return aut.state_count
    return aut.transition_table_size()


def _structure_stream(spec: SearchSpec) -> Iterator[tuple[int, dict]]:
    """Measure-passing structures as ``(state_count, delta)``, sinks first."""
    yield (0, {})  # resolved to the two sink-initial automata by the caller
    for n in range(1, spec.state_bound + 1):
        for delta in _iter_structures(spec.alphabet, n, spec.deterministic):
            if spec.measure is Measure.TRANSITIONS and _structure_table_size(delta) > spec.bound:
                continue
            yield (n, delta)


def enumerate_candidates(
    spec: SearchSpec, budget: Budget | None = None
) -> Iterator[Union[ParityAutomaton, Truncation]]:
    """Every candidate in canonical order; a ``Truncation`` ends a cut stream.

    The order is: sink-initial automata (accepting first), then structures by
    state count and table shape, each paired with its priority assignments in
    kind order.  With a budget, the stream stops right before the first
    candidate it is not allowed to produce and reports why.
    """
    budget = budget or Budget()
    started = time.monotonic()
    produced = 0

    def cut() -> Truncation | None:
        if budget.max_candidates is not None and produced >= budget.max_candidates:
            return Truncation(f"candidate budget of {budget.max_candidates} exhausted")
        if budget.max_seconds is not None and time.monotonic() - started > budget.max_seconds:
            return Truncation(f"time budget of {budget.max_seconds} seconds exhausted")
        return None

    tuples_cache: dict[int, list[tuple[int, ...]]] = {}
    for n, delta in _structure_stream(spec):
        if n == 0:
            candidates = [_sink_initial(spec, Sink.TOP), _sink_initial(spec, Sink.BOT)]
        else:
            tuples = tuples_cache.get(n)
            if tuples is None:
                tuples = tuples_cache[n] = _priority_tuples(spec, n)
            candidates = (_assemble(spec, n, delta, prio) for prio in tuples)
        for candidate in candidates:
            stop = cut()
            if stop is not None:
                yield stop
                return
            produced += 1
            yield candidate


# -- probe filtering -----------------------------------------------------------


def _probe_words(alphabet: Alphabet, total_length: int = _PROBE_TOTAL_LENGTH) -> list[LassoWord]:
    """All lassos with ``|prefix| + |period| <= total_length``, in canonical order."""
    words: list[LassoWord] = []
    for total in range(1, total_length + 1):
        for prefix_len in range(total):
            period_len = total - prefix_len
            for prefix in itertools.product(alphabet.symbols, repeat=prefix_len):
                for period in itertools.product(alphabet.symbols, repeat=period_len):
                    words.append(LassoWord(prefix, period))
    return words


def _is_deterministic_table(delta: dict) -> bool:
    return all(isinstance(t, Sink) or len(t) == 1 for t in delta.values())


def _det_run_outcome(delta: dict, word: LassoWord) -> Union[Sink, frozenset]:
    """Outcome of the unique run from state 0: a sink, or the loop's state set."""
    state: Union[int, Sink] = 0

    def step(current: Union[int, Sink], symbol: str) -> Union[int, Sink]:
        if isinstance(current, Sink):
            return current
        target: Target = delta[(current, symbol)]
        return target if isinstance(target, Sink) else next(iter(target))

    for symbol in word.prefix:
        state = step(state, symbol)
    if isinstance(state, Sink):
        return state
    seen: dict[tuple[int, int], int] = {}
    trace: list[int] = []
    phase = 0
    while True:
        if isinstance(state, Sink):
            return state
        key = (state, phase)
        if key in seen:
            return frozenset(trace[seen[key] :])
        seen[key] = len(trace)
        trace.append(state)
        state = step(state, word.period[phase])
        phase = (phase + 1) % len(word.period)


class _ProbeOracle:
    """Reference verdicts for the probe words, computed once per search."""

    def __init__(self, reference: ParityAutomaton, words: list[LassoWord]):
        self.words = words
        self.verdicts = [reference.accepts_lasso(word) for word in words]


class _StructureProber:
    """Lazily memoized probe runs of one deterministic structure."""

    def __init__(self, delta: dict, oracle: _ProbeOracle):
        self._delta = delta
        self._oracle = oracle
        self._outcomes: list[Union[Sink, frozenset]] = []

    def outcome(self, index: int) -> Union[Sink, frozenset]:
        while len(self._outcomes) <= index:
            word = self._oracle.words[len(self._outcomes)]
            self._outcomes.append(_det_run_outcome(self._delta, word))
        return self._outcomes[index]

    def surviving(self, tuples: list[tuple[int, ...]], alive: list[int]) -> list[int]:
        """Indices in ``alive`` whose priorities agree with every probe verdict."""
        for index, want in enumerate(self._oracle.verdicts):
            if not alive:
                break
            outcome = self.outcome(index)
            if isinstance(outcome, Sink):
                if (outcome is Sink.TOP) != want:
                    alive = []
                continue
            loop = tuple(outcome)
            alive = [
                t for t in alive if (max(tuples[t][q] for q in loop) % 2 == 0) == want
            ]
        return alive

    def survives(self, priorities: tuple[int, ...]) -> bool:
        for index, want in enumerate(self._oracle.verdicts):
            outcome = self.outcome(index)
            if isinstance(outcome, Sink):
                verdict = outcome is Sink.TOP
            else:
                verdict = max(priorities[q] for q in outcome) % 2 == 0
            if verdict != want:
                return False
        return True


def _passes_probes(candidate: ParityAutomaton, oracle: _ProbeOracle) -> bool:
    return all(
        candidate.accepts_lasso(word) == want
        for word, want in zip(oracle.words, oracle.verdicts)
    )


# -- the search ----------------------------------------------------------------


def minimize(
    reference: ParityAutomaton, spec: SearchSpec, budget: Budget | None = None
) -> MinimizeOutcome:
    """Search the candidate space for an automaton equivalent to ``reference``.

    Candidates are taken in the order of :func:`enumerate_candidates`; the
    first one that simulates the reference in both directions is returned as
    ``FOUND``.  Exhausting the space yields ``NONE``; running out of budget
    yields ``INCONCLUSIVE``.  Probe words cut candidates that differ from the
    reference on some short lasso — such a candidate can never win both
    simulation games, so the filter only skips work, never answers.
    """
    if reference.alphabet.symbols != spec.alphabet.symbols:
        raise ValueError("reference and search spec must share one alphabet")
    budget = budget or Budget()
    started = time.monotonic()
    oracle = _ProbeOracle(reference, _probe_words(spec.alphabet))
    checked = 0

    def elapsed() -> float:
        return time.monotonic() - started

    def remaining_candidates() -> int | None:
        if budget.max_candidates is None:
            return None
        return budget.max_candidates - checked

    def out_of_time() -> bool:
        return budget.max_seconds is not None and elapsed() > budget.max_seconds

    def found(aut: ParityAutomaton) -> MinimizeOutcome:
        return MinimizeOutcome(SearchStatus.FOUND, aut, checked, elapsed())

    def cut(reason: str) -> MinimizeOutcome:
        return MinimizeOutcome(SearchStatus.INCONCLUSIVE, None, checked, elapsed(), reason)

    tuples_cache: dict[int, list[tuple[int, ...]]] = {}
    for n, delta in _structure_stream(spec):
        if out_of_time():
            return cut(f"time budget of {budget.max_seconds} seconds exhausted")

        if n == 0:
            for sink in (Sink.TOP, Sink.BOT):
                if remaining_candidates() == 0:
                    return cut(f"candidate budget of {budget.max_candidates} exhausted")
                candidate = _sink_initial(spec, sink)
                checked += 1
                if _passes_probes(candidate, oracle) and gfg_equivalent(candidate, reference):
                    return found(candidate)
            continue

        tuples = tuples_cache.get(n)
        if tuples is None:
            tuples = tuples_cache[n] = _priority_tuples(spec, n)

        room = remaining_candidates()
        deterministic = _is_deterministic_table(delta)
        prober = _StructureProber(delta, oracle) if deterministic else None

        if room is None or room >= len(tuples):
            # Whole structure fits in the budget: screen all assignments at once.
            if prober is not None:
                survivors = prober.surviving(tuples, list(range(len(tuples))))
                before = checked
                checked += len(tuples)
                for t in survivors:
                    candidate = _assemble(spec, n, delta, tuples[t])
                    if gfg_equivalent(candidate, reference):
                        # Report the winner's canonical position, not the
                        # whole screened batch.
                        checked = before + t + 1
                        return found(candidate)
            else:
                for prio in tuples:
                    candidate = _assemble(spec, n, delta, prio)
                    checked += 1
                    if _passes_probes(candidate, oracle) and gfg_equivalent(candidate, reference):
                        return found(candidate)
            continue

        # Budget boundary: take assignments one at a time so the cut is exact.
        for t, prio in enumerate(tuples):
            if remaining_candidates() == 0:
                return cut(f"candidate budget of {budget.max_candidates} exhausted")
            if out_of_time():
                return cut(f"time budget of {budget.max_seconds} seconds exhausted")
            checked += 1
            if prober is not None:
                if not prober.survives(prio):
                    continue
            candidate = _assemble(spec, n, delta, prio)
            if prober is None and not _passes_probes(candidate, oracle):
                continue
            if gfg_equivalent(candidate, reference):
                return found(candidate)

    return MinimizeOutcome(SearchStatus.NONE, None, checked, elapsed())
