"""Iterative reachability and strongly-connected-component helpers.

Product graphs built from automaton pairs can reach tens of thousands of
nodes, so everything here is iterative on purpose: no recursion limits.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Mapping, Sequence

Graph = Sequence[Sequence[int]] | Mapping[int, Sequence[int]]


def reachable(start: int, succ: Graph) -> set[int]:
    """Every node reachable from ``start`` (inclusive)."""
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in succ[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def strongly_connected_components(nodes: Iterable[int], succ: Graph) -> list[list[int]]:
    """Tarjan SCCs of the subgraph induced by ``nodes``.

    Edges leaving the induced subgraph are ignored.  Roots are visited in
    sorted order so the component list is deterministic.
    """
    node_set = set(nodes)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for root in sorted(node_set):
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work: list[tuple[int, Iterator[int]]] = [(root, iter(succ[root]))]
        while work:
            node, edges = work[-1]
            descended = False
            for nxt in edges:
                if nxt not in node_set:
                    continue
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(succ[nxt])))
                    descended = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component: list[int] = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                components.append(component)
    return components


def has_cycle_through(component: Sequence[int], succ: Graph) -> bool:
    """True if the SCC ``component`` contains an actual cycle.

    Multi-node SCCs always do; a singleton only via a self-loop.
    """
    if len(component) > 1:
        return True
    node = component[0]
    return node in succ[node]
