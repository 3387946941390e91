"""Matplotlib figure rendering for graphs, automata, and game arenas.

Imported lazily by the command line so that report-only runs never pay for
(or require a display from) matplotlib; the Agg backend keeps rendering
purely file-based.  Layouts are deterministic: nodes sit on a circle in
index order, so the same input always produces the same picture.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .automata import ParityAutomaton, Sink, format_ref
from .reduction import NiceGraph, vertex_symbol
from .simulation import Choice, SimulationArena

_LABEL_LIMIT = 60


def _circle(count: int, radius: float = 1.0) -> list[tuple[float, float]]:
    if count == 1:
        return [(0.0, 0.0)]
    return [
        (radius * math.cos(2 * math.pi * i / count - math.pi / 2),
         radius * math.sin(2 * math.pi * i / count - math.pi / 2))
        for i in range(count)
    ]


def _new_axes(size: float):
    figure, axes = plt.subplots(figsize=(size, size))
    axes.set_aspect("equal")
    axes.axis("off")
    margin = 1.45
    axes.set_xlim(-margin, margin)
    axes.set_ylim(-margin, margin)
    return figure, axes


def _arrow(axes, source, target, rad: float = 0.12, color: str = "0.35") -> None:
    axes.add_patch(
        FancyArrowPatch(
            source,
            target,
            connectionstyle=f"arc3,rad={rad}",
            arrowstyle="-|>",
            mutation_scale=9,
            color=color,
            shrinkA=11,
            shrinkB=11,
            linewidth=0.9,
        )
    )


def _self_loop(axes, point, color: str = "0.35") -> None:
    x, y = point
    away = math.hypot(x, y) or 1.0
    cx, cy = x * (1 + 0.16 / away), y * (1 + 0.16 / away)
    loop = plt.Circle((cx, cy), 0.07, fill=False, color=color, linewidth=0.9)
    axes.add_patch(loop)


def save_graph_figure(graph: NiceGraph, path: str | Path) -> None:
    """Render a nice graph: vertices on a circle, initial vertex ringed."""
    figure, axes = _new_axes(4.5)
    points = _circle(graph.vertex_count)
    for a, b in sorted(graph.edges):
        (x1, y1), (x2, y2) = points[a], points[b]
        axes.plot([x1, x2], [y1, y2], color="0.5", linewidth=1.2, zorder=1)
    for v, (x, y) in enumerate(points):
        face = "#ffd27f" if v == graph.initial_vertex else "#9fc8e8"
        axes.add_patch(plt.Circle((x, y), 0.1, color=face, zorder=2))
        if v == graph.initial_vertex:
            axes.add_patch(plt.Circle((x, y), 0.13, fill=False, color="#b06000", zorder=2))
        axes.text(x, y, vertex_symbol(v), ha="center", va="center", fontsize=9, zorder=3)
    figure.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(figure)


def save_automaton_figure(aut: ParityAutomaton, path: str | Path) -> None:
    """Render an automaton: states and sinks on a circle, labeled transitions."""
    refs = list(aut.states()) + [Sink.TOP, Sink.BOT]
    index = {ref: i for i, ref in enumerate(refs)}
    points = _circle(len(refs))
    figure, axes = _new_axes(max(4.5, 0.55 * len(refs)))

    labels: dict[tuple[int, int], list[str]] = {}
    for state in aut.states():
        for symbol in aut.alphabet:
            for target in aut.successor_refs(state, symbol):
                labels.setdefault((index[state], index[target]), []).append(symbol)

    for (source, target), symbols in sorted(labels.items()):
        if source == target:
            _self_loop(axes, points[source])
        else:
            _arrow(axes, points[source], points[target])
        sx, sy = points[source]
        tx, ty = points[target]
        if source == target:
            away = math.hypot(sx, sy) or 1.0
            lx, ly = sx * (1 + 0.3 / away), sy * (1 + 0.3 / away)
        else:
            mx, my = (sx + tx) / 2, (sy + ty) / 2
            nx, ny = -(ty - sy), tx - sx
            norm = math.hypot(nx, ny) or 1.0
            lx, ly = mx + 0.14 * nx / norm, my + 0.14 * ny / norm
        if len(refs) <= _LABEL_LIMIT:
            axes.text(lx, ly, ",".join(symbols), ha="center", va="center", fontsize=7, color="0.2")

    for ref in refs:
        x, y = points[index[ref]]
        is_initial = ref == aut.initial
        face = "#ffd27f" if is_initial else ("#d8d8d8" if isinstance(ref, Sink) else "#9fc8e8")
        axes.add_patch(plt.Circle((x, y), 0.11, color=face, zorder=2))
        if is_initial:
            axes.add_patch(plt.Circle((x, y), 0.14, fill=False, color="#b06000", zorder=2))
        axes.text(
            x,
            y,
            f"{format_ref(ref)}\n{aut.priority_of(ref)}",
            ha="center",
            va="center",
            fontsize=7,
            zorder=3,
        )
    figure.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(figure)


def save_arena_figure(arena: SimulationArena, path: str | Path) -> None:
    """Render a simulation arena: round spoiler spots, square verifier spots."""
    count = len(arena.positions)
    points = _circle(count)
    figure, axes = _new_axes(max(4.5, 0.3 * count))
    for source, out in enumerate(arena.edges):
        for target in out:
            if source == target:
                _self_loop(axes, points[source], color="0.6")
            else:
                _arrow(axes, points[source], points[target], rad=0.08, color="0.6")
    for node, position in enumerate(arena.positions):
        x, y = points[node]
        if isinstance(position, Choice):
            axes.add_patch(plt.Circle((x, y), 0.09, color="#e8a8a0", zorder=2))
        else:
            axes.add_patch(
                plt.Rectangle((x - 0.08, y - 0.08), 0.16, 0.16, color="#a8d8a8", zorder=2)
            )
        if count <= _LABEL_LIMIT:
            axes.text(
                x,
                y,
                f"{node}\n{arena.pri1[node]},{arena.pri2[node]}",
                ha="center",
                va="center",
                fontsize=6,
                zorder=3,
            )
    figure.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(figure)
