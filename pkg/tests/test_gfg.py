"""Inclusion and equivalence checks built on the simulation game."""

from __future__ import annotations

import pytest

from gfgmin import (
    Kind,
    ParityAutomaton,
    Sink,
    gfg_equivalent,
    includes,
    is_gfg_with_reference,
)


def test_includes_is_reflexive_on_fixtures(small_corpus, buchi_references):
    for aut in small_corpus.values():
        assert includes(aut, aut)
    for aut in buchi_references.values():
        assert includes(aut, aut)


def test_includes_respects_strict_containment(small_corpus, inf_a):
    every, nothing = small_corpus["every"], small_corpus["nothing"]
    assert includes(nothing, inf_a)
    assert includes(inf_a, every)
    assert not includes(every, inf_a)
    assert not includes(inf_a, nothing)


def test_empty_language_is_included_in_everything(small_corpus):
    nothing = small_corpus["nothing"]
    for aut in small_corpus.values():
        assert includes(nothing, aut)


def test_gfg_equivalent_reflexive_and_symmetric(small_corpus):
    every, trap = small_corpus["every"], small_corpus["trap"]
    assert gfg_equivalent(every, every)
    # Both accept every word, and both resolve their choices on the fly.
    assert gfg_equivalent(every, trap)
    assert gfg_equivalent(trap, every)


def test_gfg_equivalent_distinguishes_languages(small_corpus, inf_a):
    assert not gfg_equivalent(inf_a, small_corpus["every"])
    assert not gfg_equivalent(small_corpus["every"], inf_a)
    assert not gfg_equivalent(inf_a, small_corpus["nothing"])


def test_guess_tail_is_not_interchangeable_with_its_language(small_corpus, ab):
    # guess-tail accepts words with finitely many b, but only by committing
    # to the position after the last b before seeing it; no on-the-fly
    # strategy can do that, so it fails the mutual-simulation test against a
    # deterministic automaton for a superset language and, more to the
    # point, against the accept-all automaton that includes its language.
    guess = small_corpus["guess-tail"]
    every = small_corpus["every"]
    assert includes(guess, every)  # plain language inclusion, left to right
    assert not includes(every, guess)


def test_acceptance_kind_changes_answer(ab):
    buchi = ParityAutomaton.make(
        alphabet=ab,
        state_count=1,
        kind=Kind.BUCHI,
        initial=0,
        priority={0: 2},
        delta={(0, "a"): frozenset({0}), (0, "b"): frozenset({0})},
    )
    cobuchi = ParityAutomaton.make(
        alphabet=ab,
        state_count=1,
        kind=Kind.COBUCHI,
        initial=0,
        priority={0: 3},
        delta={(0, "a"): frozenset({0}), (0, "b"): frozenset({0})},
    )
    # Same transition structure; the priorities make one accept everything
    # and the other nothing.
    assert not gfg_equivalent(buchi, cobuchi)
    assert not includes(buchi, cobuchi)
    assert includes(cobuchi, buchi)


def test_is_gfg_with_reference_requires_deterministic_reference(small_corpus):
    trap = small_corpus["trap"]
    with pytest.raises(ValueError, match="deterministic"):
        is_gfg_with_reference(trap, trap)


def test_is_gfg_with_reference_accepts_and_rejects(small_corpus, inf_a):
    every = small_corpus["every"]
    assert is_gfg_with_reference(small_corpus["trap"], every)
    # guess-tail's language differs from the reference's, so it fails.
    assert not is_gfg_with_reference(small_corpus["guess-tail"], every)
    assert is_gfg_with_reference(inf_a, inf_a)


def test_cover_automata_with_same_cover_are_equivalent(buchi_references, g2):
    from gfgmin import build_cover_automaton

    ref = buchi_references["P2"]
    again = build_cover_automaton(g2, {1}, Kind.BUCHI)
    assert gfg_equivalent(again, ref)
