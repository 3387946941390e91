"""Language inclusion and equivalence checks built on simulation games.

All verdicts here are conditional on a trust assumption: the reference
automaton must resolve its nondeterminism on the fly (a property the games
themselves cannot certify unless the reference is deterministic).  Callers
that got the reference from an untrusted source should pass a deterministic
one, or treat the answers as one-sided.
"""

from __future__ import annotations

from .automata import ParityAutomaton
from .simulation import build_arena, solve_verifier


def includes(p1: ParityAutomaton, p2: ParityAutomaton) -> bool:
    """Does the verifier win the game where p2 simulates p1?

    With a trustworthy ``p2`` this certifies the language of ``p1`` is
    contained in the language of ``p2``.
    """
    return solve_verifier(build_arena(p1, p2)).verifier_wins


def gfg_equivalent(candidate: ParityAutomaton, reference: ParityAutomaton) -> bool:
    """Can the candidate both be simulated by and simulate the reference?

    Runs the inclusion game first and short-circuits; a true verdict means
    the candidate resolves its own nondeterminism on the fly and recognizes
    the same language as the (trusted) reference.
    """
    return includes(candidate, reference) and includes(reference, candidate)


def is_gfg_with_reference(candidate: ParityAutomaton, reference: ParityAutomaton) -> bool:
    """Like :func:`gfg_equivalent` but insists on a machine-checkable reference."""
    if not reference.is_deterministic():
        raise ValueError("reference must be deterministic for an unconditional verdict")
    return gfg_equivalent(candidate, reference)
