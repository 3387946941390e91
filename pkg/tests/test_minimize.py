"""Canonical candidate enumeration and the bounded equivalent-automaton search."""

from __future__ import annotations

from pathlib import Path

import pytest

from gfgmin import (
    Alphabet,
    Budget,
    Kind,
    Measure,
    SearchSpec,
    SearchStatus,
    Sink,
    Truncation,
    enumerate_candidates,
    gfg_equivalent,
    measure_of,
    minimize,
    serialize_automaton,
)

from oracles import brute_force_canonical_structures, structure_form

DATA = Path(__file__).parent / "data"

A1 = Alphabet(("a",))


def candidates(spec: SearchSpec, budget: Budget | None = None):
    out = [c for c in enumerate_candidates(spec, budget) if not isinstance(c, Truncation)]
    return out


# -- the search spec --------------------------------------------------------


def test_spec_validation_errors(ab):
    with pytest.raises(ValueError, match="non-empty"):
        SearchSpec(alphabet=Alphabet(()), bound=1, kind=Kind.BUCHI)
    with pytest.raises(ValueError, match="non-negative"):
        SearchSpec(alphabet=ab, bound=-1, kind=Kind.BUCHI)
    with pytest.raises(ValueError, match="parity"):
        SearchSpec(alphabet=ab, bound=1, kind=Kind.BUCHI, max_priority=3)
    with pytest.raises(ValueError, match="non-negative"):
        SearchSpec(alphabet=ab, bound=1, kind=Kind.PARITY, max_priority=-1)


def test_spec_derived_bounds(ab):
    by_states = SearchSpec(alphabet=ab, bound=3, kind=Kind.PARITY)
    assert by_states.state_bound == 3
    assert by_states.effective_max_priority == 4

    by_transitions = SearchSpec(
        alphabet=ab, bound=5, kind=Kind.PARITY, measure=Measure.TRANSITIONS
    )
    assert by_transitions.state_bound == 2  # each state owns |alphabet| cells
    assert by_transitions.effective_max_priority == 3

    capped = SearchSpec(alphabet=ab, bound=3, kind=Kind.PARITY, max_priority=2)
    assert capped.effective_max_priority == 2


# -- canonical enumeration ---------------------------------------------------


def test_one_symbol_one_state_space_by_hand(ab):
    spec = SearchSpec(alphabet=A1, bound=1, kind=Kind.BUCHI)
    got = candidates(spec)
    assert len(got) == 8
    # Sink-initial automata come first, the accepting one before the
    # rejecting one; then the single self-loop structure with its two
    # priorities, then the structures that jump straight into a sink.
    assert got[0].state_count == 0 and got[0].initial is Sink.TOP
    assert got[1].state_count == 0 and got[1].initial is Sink.BOT
    tables = [(c.delta.get((0, "a")), c.priority.get(0)) for c in got[2:]]
    assert tables == [
        (frozenset({0}), 1),
        (frozenset({0}), 2),
        (Sink.TOP, 1),
        (Sink.TOP, 2),
        (Sink.BOT, 1),
        (Sink.BOT, 2),
    ]


def test_enumeration_matches_golden_listing():
    spec = SearchSpec(alphabet=A1, bound=1, kind=Kind.BUCHI)
    rendered = "".join(
        f"# candidate {i}\n{serialize_automaton(c)}"
        for i, c in enumerate(candidates(spec))
    )
    assert rendered == (DATA / "one-symbol-bound-1.txt").read_text(encoding="utf-8")


@pytest.mark.parametrize("deterministic", [True, False])
@pytest.mark.parametrize("alphabet", [A1, Alphabet(("a", "b"))])
@pytest.mark.parametrize("n", [1, 2])
def test_enumeration_reaches_every_canonical_structure(alphabet, n, deterministic):
    spec = SearchSpec(alphabet=alphabet, bound=n, kind=Kind.BUCHI, deterministic=deterministic)
    enumerated = {
        structure_form(alphabet, c.state_count, c.delta)
        for c in candidates(spec)
        if c.state_count == n
    }
    expected = brute_force_canonical_structures(alphabet, n, deterministic)
    assert enumerated == expected


def test_candidates_are_valid_and_within_bounds(ab):
    spec = SearchSpec(alphabet=ab, bound=2, kind=Kind.BUCHI)
    seen = set()
    found_nondeterministic = False
    for c in candidates(spec):
        assert c.validate() == []
        assert measure_of(c, spec.measure) <= spec.bound
        found_nondeterministic |= not c.is_deterministic()
        text = serialize_automaton(c)
        assert text not in seen
        seen.add(text)
    assert found_nondeterministic


def test_deterministic_only_restricts_candidates(ab):
    spec = SearchSpec(alphabet=ab, bound=2, kind=Kind.BUCHI, deterministic=True)
    got = candidates(spec)
    assert all(c.is_deterministic() for c in got)
    wider = candidates(SearchSpec(alphabet=ab, bound=2, kind=Kind.BUCHI))
    assert len(got) < len(wider)


def test_growing_the_bound_extends_the_stream(ab):
    smaller = candidates(SearchSpec(alphabet=ab, bound=1, kind=Kind.BUCHI))
    larger = candidates(SearchSpec(alphabet=ab, bound=2, kind=Kind.BUCHI))
    assert larger[: len(smaller)] == smaller
    assert len(larger) > len(smaller)


def test_transition_measure_filters_by_table_size(ab):
    spec = SearchSpec(alphabet=ab, bound=4, kind=Kind.BUCHI, measure=Measure.TRANSITIONS)
    got = candidates(spec)
    assert all(c.transition_table_size() <= 4 for c in got)
    assert any(c.state_count == 2 for c in got)
    # A two-state candidate with a two-state set target needs five entries.
    assert all(c.is_deterministic() for c in got if c.state_count == 2)


def test_parity_priorities_ordered_by_ceiling(ab):
    spec = SearchSpec(alphabet=A1, bound=1, kind=Kind.PARITY, max_priority=2)
    picks = [c.priority.get(0) for c in candidates(spec) if c.state_count == 1]
    # Per structure: low ceilings first, ties in lexicographic order.
    assert picks[:3] == [0, 1, 2]


def test_cobuchi_priorities(ab):
    spec = SearchSpec(alphabet=A1, bound=1, kind=Kind.COBUCHI)
    picks = [c.priority.get(0) for c in candidates(spec) if c.state_count == 1]
    assert picks[:2] == [2, 3]


def test_zero_bound_yields_only_sinks(ab):
    got = candidates(SearchSpec(alphabet=ab, bound=0, kind=Kind.BUCHI))
    assert [c.initial for c in got] == [Sink.TOP, Sink.BOT]


# -- budgets ------------------------------------------------------------------


def test_candidate_budget_truncates_with_reason(ab):
    spec = SearchSpec(alphabet=ab, bound=1, kind=Kind.BUCHI)
    stream = list(enumerate_candidates(spec, Budget(max_candidates=3)))
    assert len(stream) == 4
    assert isinstance(stream[-1], Truncation)
    assert "candidate budget" in stream[-1].reason


def test_time_budget_truncates_with_reason(ab):
    spec = SearchSpec(alphabet=ab, bound=2, kind=Kind.BUCHI)
    stream = list(enumerate_candidates(spec, Budget(max_seconds=0.0)))
    assert isinstance(stream[-1], Truncation)
    assert "time budget" in stream[-1].reason


def test_exact_budget_boundary_is_not_a_truncation(ab):
    spec = SearchSpec(alphabet=ab, bound=1, kind=Kind.BUCHI)
    size = len(candidates(spec))
    exact = list(enumerate_candidates(spec, Budget(max_candidates=size)))
    assert not any(isinstance(c, Truncation) for c in exact)
    assert len(exact) == size


# -- the search ---------------------------------------------------------------


def test_search_requires_matching_alphabet(inf_a):
    spec = SearchSpec(alphabet=Alphabet(("x", "y")), bound=1, kind=Kind.BUCHI)
    with pytest.raises(ValueError, match="alphabet"):
        minimize(inf_a, spec)


def test_search_none_exhausts_the_space(inf_a, ab):
    spec = SearchSpec(alphabet=ab, bound=1, kind=Kind.BUCHI)
    outcome = minimize(inf_a, spec)
    assert outcome.status is SearchStatus.NONE
    assert outcome.automaton is None
    assert outcome.reason is None
    assert outcome.candidates_checked == len(candidates(spec))


def test_search_found_is_the_first_equivalent_candidate(inf_a, ab):
    spec = SearchSpec(alphabet=ab, bound=2, kind=Kind.BUCHI)
    outcome = minimize(inf_a, spec)
    assert outcome.status is SearchStatus.FOUND
    assert outcome.automaton is not None
    assert outcome.automaton.state_count == 2
    assert gfg_equivalent(outcome.automaton, inf_a)

    for index, candidate in enumerate(candidates(spec)):
        if gfg_equivalent(candidate, inf_a):
            assert candidate == outcome.automaton
            assert outcome.candidates_checked == index + 1
            break
    else:  # pragma: no cover - would mean FOUND was wrong
        pytest.fail("no equivalent candidate in the enumeration")


def test_search_found_respects_transition_measure(inf_a, ab):
    spec = SearchSpec(alphabet=ab, bound=4, kind=Kind.BUCHI, measure=Measure.TRANSITIONS)
    outcome = minimize(inf_a, spec)
    assert outcome.status is SearchStatus.FOUND
    assert outcome.automaton.transition_table_size() == 4


def test_search_zero_bound(small_corpus, ab):
    outcome = minimize(small_corpus["every"], SearchSpec(alphabet=ab, bound=0, kind=Kind.BUCHI))
    assert outcome.status is SearchStatus.FOUND
    assert outcome.automaton.initial is Sink.TOP
    assert outcome.candidates_checked == 1


def test_search_budget_boundary(inf_a, ab):
    spec = SearchSpec(alphabet=ab, bound=1, kind=Kind.BUCHI)
    size = len(candidates(spec))

    complete = minimize(inf_a, spec, Budget(max_candidates=size))
    assert complete.status is SearchStatus.NONE

    clipped = minimize(inf_a, spec, Budget(max_candidates=size - 1))
    assert clipped.status is SearchStatus.INCONCLUSIVE
    assert clipped.candidates_checked == size - 1
    assert "candidate budget" in clipped.reason


def test_search_time_budget_zero(inf_a, ab):
    spec = SearchSpec(alphabet=ab, bound=2, kind=Kind.BUCHI)
    outcome = minimize(inf_a, spec, Budget(max_seconds=0.0))
    assert outcome.status is SearchStatus.INCONCLUSIVE
    assert "time budget" in outcome.reason


def test_search_agrees_between_kinds(small_corpus, ab):
    # The co-Büchi hunt for an accept-all automaton succeeds immediately with
    # the accepting sink, same as the Büchi hunt.
    outcome = minimize(
        small_corpus["every"], SearchSpec(alphabet=ab, bound=1, kind=Kind.COBUCHI)
    )
    assert outcome.status is SearchStatus.FOUND
    assert outcome.automaton.initial is Sink.TOP


def test_measure_of(g2_buchi):
    assert measure_of(g2_buchi, Measure.STATES) == 5
    assert measure_of(g2_buchi, Measure.TRANSITIONS) == 15
