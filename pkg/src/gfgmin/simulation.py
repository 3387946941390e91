"""Two-player simulation games between parity automata.

The arena for "p2 simulates p1" alternates between Choice positions
``(q1, q2)`` where the spoiler picks a symbol and a p1-successor, and
Response positions ``(q1', symbol, q2)`` where the verifier answers with a
p2-successor.  The verifier wins a play iff the p1 run it traces is
rejecting or the p2 run is accepting: the highest pri1 seen infinitely often
is odd, or the highest pri2 seen infinitely often is even.

``solve_verifier`` decides the winner from the initial position and, when
the verifier wins, extracts a positional strategy.  The winning condition is
a disjunction of two parity conditions; it is turned into a single parity
game with a latest-appearance-record memory over the (pri1, pri2) pairs,
solved by Zielonka's recursive algorithm.  Positional strategies are then
recovered greedily: fix one Response choice at a time, keeping the game
winnable (the verifier's side of the condition admits positional strategies,
so some choice always works).
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from .automata import ParityAutomaton, Sink, StateRef, format_ref
from .scc import has_cycle_through, reachable, strongly_connected_components

_PRODUCT_NODE_CAP = 2_000_000


@dataclass(frozen=True)
class Choice:
    """Spoiler to move: pick a symbol and a p1-successor."""

    q1: StateRef
    q2: StateRef


@dataclass(frozen=True)
class Response:
    """Verifier to move: p1 already advanced to ``q1`` on ``letter``; answer in p2."""

    q1: StateRef
    letter: str
    q2: StateRef


Position = Union[Choice, Response]


@dataclass(frozen=True)
class SimulationArena:
    """Reachable game graph; position 0 is the initial Choice position."""

    positions: tuple[Position, ...]
    edges: tuple[tuple[int, ...], ...]
    pri1: tuple[int, ...]
    pri2: tuple[int, ...]

    @cached_property
    def response_ids(self) -> tuple[int, ...]:
        return tuple(i for i, pos in enumerate(self.positions) if isinstance(pos, Response))

    def is_response(self, position_id: int) -> bool:
        return isinstance(self.positions[position_id], Response)


@dataclass(frozen=True)
class PositionalStrategy:
    """One chosen successor per Response position, keyed by position id."""

    choices: dict

    def __getitem__(self, position_id: int) -> int:
        return self.choices[position_id]


@dataclass(frozen=True)
class SolveResult:
    verifier_wins: bool
    strategy: PositionalStrategy | None


def build_arena(p1: ParityAutomaton, p2: ParityAutomaton) -> SimulationArena:
    """The reachable "p2 simulates p1" arena for two same-alphabet automata."""
    if p1.alphabet.symbols != p2.alphabet.symbols:
        raise ValueError("automata must share one alphabet to build a simulation arena")
    symbols = p1.alphabet.symbols

    ids: dict[Position, int] = {}
    positions: list[Position] = []
    edges: list[tuple[int, ...]] = []
    pri1: list[int] = []
    pri2: list[int] = []

    def intern(position: Position) -> int:
        known = ids.get(position)
        if known is not None:
            return known
        node = len(positions)
        ids[position] = node
        positions.append(position)
        edges.append(())
        pri1.append(p1.priority_of(position.q1))
        pri2.append(p2.priority_of(position.q2))
        return node

    start = intern(Choice(p1.initial, p2.initial))
    queue = deque([start])
    done: set[int] = set()
    while queue:
        node = queue.popleft()
        if node in done:
            continue
        done.add(node)
        position = positions[node]
        if isinstance(position, Choice):
            out = [
                intern(Response(q1_next, sym, position.q2))
                for sym in symbols
                for q1_next in p1.successor_refs(position.q1, sym)
            ]
        else:
            out = [
                intern(Choice(position.q1, q2_next))
                for q2_next in p2.successor_refs(position.q2, position.letter)
            ]
        edges[node] = tuple(out)
        for child in out:
            if child not in done:
                queue.append(child)

    return SimulationArena(
        positions=tuple(positions),
        edges=tuple(edges),
        pri1=tuple(pri1),
        pri2=tuple(pri2),
    )


def dump_arena(arena: SimulationArena) -> str:
    """Line-per-position, line-per-edge rendering of the arena."""
    lines: list[str] = []
    for node, position in enumerate(arena.positions):
        if isinstance(position, Choice):
            lines.append(
                f"POS {node} CHOICE {format_ref(position.q1)} {format_ref(position.q2)} "
                f"{arena.pri1[node]} {arena.pri2[node]}"
            )
        else:
            lines.append(
                f"POS {node} RESPONSE {format_ref(position.q1)} {position.letter} "
                f"{format_ref(position.q2)} {arena.pri1[node]} {arena.pri2[node]}"
            )
    for node, out in enumerate(arena.edges):
        for child in out:
            lines.append(f"EDGE {node} {child}")
    return "\n".join(lines) + "\n"


# -- strategy checking (the one-player certificate) --------------------------


def _one_player_safe(arena: SimulationArena, succ: list) -> bool:
    """No reachable closed walk may have even max pri1 and odd max pri2.

    Checked per priority pair: restrict to positions with pri1 <= p1 and
    pri2 <= p2 and look for a reachable SCC holding a pri1 = p1 position and
    a pri2 = p2 position on a cycle.  One SCC may combine two simple cycles,
    which is exactly why the test is per-component, not per-cycle.
    """
    seen = reachable(0, succ)
    even_p1 = sorted({arena.pri1[i] for i in seen if arena.pri1[i] % 2 == 0})
    odd_p2 = sorted({arena.pri2[i] for i in seen if arena.pri2[i] % 2 == 1})
    for p1 in even_p1:
        for p2 in odd_p2:
            sub = [i for i in seen if arena.pri1[i] <= p1 and arena.pri2[i] <= p2]
            for component in strongly_connected_components(sub, succ):
                if (
                    any(arena.pri1[i] == p1 for i in component)
                    and any(arena.pri2[i] == p2 for i in component)
                    and has_cycle_through(component, succ)
                ):
                    return False
    return True


def check_positional_strategy(arena: SimulationArena, strategy: PositionalStrategy) -> bool:
    """Is the fixed verifier strategy winning from the initial position?

    Raises ``ValueError`` if the strategy misses a Response position or picks
    a successor that is not an arena edge.
    """
    for position_id in strategy.choices:
        if not (0 <= position_id < len(arena.positions)) or not arena.is_response(position_id):
            raise ValueError(f"strategy maps non-Response position {position_id}")
    succ: list[tuple[int, ...]] = list(arena.edges)
    for response_id in arena.response_ids:
        chosen = strategy.choices.get(response_id)
        if chosen is None:
            raise ValueError(f"strategy is not total: Response position {response_id} has no choice")
        if chosen not in arena.edges[response_id]:
            raise ValueError(
                f"strategy picks {chosen} at position {response_id}, which is not an arena edge"
            )
        succ[response_id] = (chosen,)
    return _one_player_safe(arena, succ)


# -- parity game machinery ----------------------------------------------------


def _zielonka_even_region(succ: list, owner_even: list, prio: list) -> set[int]:
    """Winning region of the even player in a max-parity game."""
    pred: list[list[int]] = [[] for _ in succ]
    for node, out in enumerate(succ):
        for child in out:
            pred[child].append(node)

    def attractor(targets: set[int], region: set[int], for_even: bool) -> set[int]:
        attracted = set(targets)
        queue = deque(targets)
        remaining: dict[int, int] = {}
        while queue:
            node = queue.popleft()
            for before in pred[node]:
                if before not in region or before in attracted:
                    continue
                if owner_even[before] == for_even:
                    attracted.add(before)
                    queue.append(before)
                else:
                    count = remaining.get(before)
                    if count is None:
                        count = sum(1 for child in succ[before] if child in region)
                    count -= 1
                    remaining[before] = count
                    if count == 0:
                        attracted.add(before)
                        queue.append(before)
        return attracted

    def solve(region: set[int]) -> tuple[set[int], set[int]]:
        if not region:
            return set(), set()
        top = max(prio[node] for node in region)
        even_turn = top % 2 == 0
        summit = {node for node in region if prio[node] == top}
        head = attractor(summit, region, even_turn)
        even_rest, odd_rest = solve(region - head)
        opponent_rest = odd_rest if even_turn else even_rest
        if not opponent_rest:
            return (set(region), set()) if even_turn else (set(), set(region))
        trap = attractor(opponent_rest, region, not even_turn)
        even_final, odd_final = solve(region - trap)
        if even_turn:
            return even_final, odd_final | trap
        return even_final | trap, odd_final

    limit = sys.getrecursionlimit()
    needed = 4 * len(succ) + 10_000
    if needed > limit:
        sys.setrecursionlimit(needed)
    try:
        even_region, _ = solve(set(range(len(succ))))
    finally:
        if needed > limit:
            sys.setrecursionlimit(limit)
    return even_region


def _verifier_wins(arena: SimulationArena, allowed: dict) -> bool:
    """Does the verifier win from position 0 when Response moves are restricted?

    ``allowed`` maps a Response position id to the successor ids it may still
    use; unrestricted positions keep their full edge list.  Once every
    Response position is down to one successor the game is one-player and the
    closed-walk certificate decides it directly; otherwise the two-priority
    condition is reduced to a single parity game over a latest-appearance
    record of the (pri1, pri2) pairs and solved recursively.
    """

    def moves(position_id: int) -> tuple[int, ...]:
        if arena.is_response(position_id):
            return allowed.get(position_id, arena.edges[position_id])
        return arena.edges[position_id]

    if all(len(moves(rid)) == 1 for rid in arena.response_ids):
        succ = [
            (moves(node) if arena.is_response(node) else arena.edges[node])
            for node in range(len(arena.positions))
        ]
        return _one_player_safe(arena, succ)

    colors = sorted({(arena.pri1[i], arena.pri2[i]) for i in range(len(arena.positions))})
    color_id = {pair: i for i, pair in enumerate(colors)}
    color_of = [color_id[(arena.pri1[i], arena.pri2[i])] for i in range(len(arena.positions))]

    # Memory update: move the seen color to the front; the hit position (how
    # deep it sat) decides the emitted priority.  The first ``hit`` record
    # entries are exactly the colors seen since the hit color was last seen,
    # so their combined verdict decides good (even) versus bad (odd).
    update_cache: dict[tuple[tuple[int, ...], int], tuple[tuple[int, ...], int, int]] = {}

    def update(record: tuple[int, ...], color: int) -> tuple[tuple[int, ...], int, int]:
        key = (record, color)
        cached = update_cache.get(key)
        if cached is not None:
            return cached
        at = record.index(color)
        new_record = (color,) + record[:at] + record[at + 1 :]
        hit = at + 1
        window = new_record[:hit]
        max1 = max(colors[c][0] for c in window)
        max2 = max(colors[c][1] for c in window)
        good = max1 % 2 == 1 or max2 % 2 == 0
        priority = 2 * hit if good else 2 * hit + 1
        result = (new_record, hit, priority)
        update_cache[key] = result
        return result

    base = tuple(range(len(colors)))
    init_record, init_hit, init_prio = update(base, color_of[0])

    ids: dict[tuple[int, tuple[int, ...], int], int] = {}
    succ_nodes: list[list[int]] = []
    owner_even: list[bool] = []
    prio: list[int] = []
    keys: list[tuple[int, tuple[int, ...], int, int]] = []

    def intern(position_id: int, record: tuple[int, ...], hit: int, priority: int) -> int:
        key = (position_id, record, hit)
        node = ids.get(key)
        if node is None:
            node = len(keys)
            if node >= _PRODUCT_NODE_CAP:
                raise RuntimeError("simulation game is too large to solve at desk scale")
            ids[key] = node
            keys.append((position_id, record, hit, priority))
            succ_nodes.append([])
            owner_even.append(arena.is_response(position_id))
            prio.append(priority)
        return node

    start = intern(0, init_record, init_hit, init_prio)
    frontier = [start]
    expanded: set[int] = set()
    while frontier:
        node = frontier.pop()
        if node in expanded:
            continue
        expanded.add(node)
        position_id, record, _, _ = keys[node]
        out = succ_nodes[node]
        for child_position in moves(position_id):
            new_record, hit, priority = update(record, color_of[child_position])
            child = intern(child_position, new_record, hit, priority)
            out.append(child)
            if child not in expanded:
                frontier.append(child)

    return start in _zielonka_even_region(succ_nodes, owner_even, prio)


def solve_verifier(arena: SimulationArena) -> SolveResult:
    """Decide the simulation game and extract a winning positional strategy.

    When the verifier wins, her side of the condition (a disjunction of two
    parity objectives) guarantees a positional winning strategy; it is found
    by fixing Response choices one position at a time, in id order, keeping
    the smallest successor that preserves the win.
    """
    if not _verifier_wins(arena, {}):
        return SolveResult(False, None)

    fixed: dict[int, int] = {}

    def allowed() -> dict:
        return {rid: (choice,) for rid, choice in fixed.items()}

    for response_id in arena.response_ids:
        options = sorted(set(arena.edges[response_id]))
        if len(options) == 1:
            fixed[response_id] = options[0]
            continue
        for option in options:
            fixed[response_id] = option
            if _verifier_wins(arena, allowed()):
                break
            del fixed[response_id]
        else:  # pragma: no cover - positional determinacy guarantees a choice
            raise RuntimeError(f"no winning choice at Response position {response_id}")

    return SolveResult(True, PositionalStrategy(dict(fixed)))
