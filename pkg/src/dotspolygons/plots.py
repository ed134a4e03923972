"""Matplotlib renderings for game states, boards, gadget graphs and reports.

Every CLI report path can drop a PNG next to its CSV so a run is
eyeballable without extra tooling.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .boxes import BoxesState, all_walls, cell_walls
from .geometry import rat_to_float
from .polygons import PolygonGameState

OWNER_COLORS = {"R": "#d9434e", "B": "#3a66c6", "W": "#b9b4aa"}


def draw_polygon_state(state: PolygonGameState, ax=None, title=None):
    ax = ax or plt.gca()
    for region in state.regions:
        xs = [rat_to_float(p.x) for p in region.boundary]
        ys = [rat_to_float(p.y) for p in region.boundary]
        ax.fill(xs, ys, color=OWNER_COLORS.get(region.owner, "#cccccc"),
                alpha=0.45, linewidth=0)
        for hole in region.holes:
            hx = [rat_to_float(p.x) for p in hole]
            hy = [rat_to_float(p.y) for p in hole]
            ax.fill(hx, hy, color="white", alpha=1.0, linewidth=0)
    for i, j in sorted(state.edges):
        a, b = state.points[i], state.points[j]
        ax.plot([rat_to_float(a.x), rat_to_float(b.x)],
                [rat_to_float(a.y), rat_to_float(b.y)],
                color="#222222", linewidth=1.6)
    xs = [rat_to_float(p.x) for p in state.points]
    ys = [rat_to_float(p.y) for p in state.points]
    ax.scatter(xs, ys, s=22, color="#111111", zorder=5)
    ax.set_aspect("equal")
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    return ax


def draw_boxes_state(board: BoxesState, ax=None, title=None):
    ax = ax or plt.gca()
    for (x, y), owner in board.claimed.items():
        ax.fill([x, x + 1, x + 1, x], [y, y, y + 1, y + 1],
                color=OWNER_COLORS.get(owner, "#cccccc"), alpha=0.5,
                linewidth=0)
    for wall in all_walls(board.width, board.height):
        kind, x, y = wall
        drawn = wall in board.walls
        style = dict(color="#222222", linewidth=1.8) if drawn else \
            dict(color="#bbbbbb", linewidth=0.6, linestyle=":")
        if kind == "h":
            ax.plot([x, x + 1], [y, y], **style)
        else:
            ax.plot([x, x], [y, y + 1], **style)
    ax.set_aspect("equal")
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    return ax


def draw_gadget_graph(graph: nx.Graph, labels=None, ax=None, title=None):
    ax = ax or plt.gca()
    kind_color = {"variable": "#3a66c6", "wire": "#777777", "clause": "#d9434e"}
    colors = []
    for v in graph.nodes():
        kind = (labels or {}).get(v, {}).get("kind", "wire")
        colors.append(kind_color.get(kind, "#777777"))
    pos = nx.kamada_kawai_layout(graph)
    nx.draw_networkx_edges(graph, pos, ax=ax, width=0.8, edge_color="#444444")
    nx.draw_networkx_nodes(graph, pos, ax=ax, node_size=28, node_color=colors)
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    return ax


def save_figure(path, draw, *args, figsize=(7, 7), **kwargs):
    fig, ax = plt.subplots(figsize=figsize)
    draw(*args, ax=ax, **kwargs)
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)
    return path


def save_margin_histogram(path, margins, title):
    fig, ax = plt.subplots(figsize=(6, 4))
    values = [rat_to_float(m) if hasattr(m, "denominator") else float(m)
              for m in margins]
    ax.hist(values, bins=20, color="#3a66c6", alpha=0.8)
    ax.axvline(0.0, color="#d9434e", linewidth=1.2)
    ax.set_xlabel("margin for the first player")
    ax.set_ylabel("instances")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)
    return path
