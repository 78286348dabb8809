"""Static diagrams: the N-gon with diagonals, and the AR quiver on arcs.

DOT is produced as plain text.  SVG is rendered with matplotlib under fixed
settings (hash salt, no timestamp, text kept as text) so identical input gives
identical bytes.
"""

from __future__ import annotations

import io
import math
from typing import Iterable, Mapping

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import derived  # noqa: E402
from .orbit import Arc, ArcModel, CatParams  # noqa: E402

KINDS = ("polygon", "arquiver")
FORMATS = ("dot", "svg")

# fills follow the worked example's figure: E0 green, E1 red, E2 gray
FILLS = {"E0": "#8fd18f", "E1": "#f08c8c", "E2": "#c8c8c8"}
OUTLINES = {"A": "#c0392b", "B": "#2e5fb8"}

_RC = {
    "svg.hashsalt": "negcat",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "font.size": 8,
}


class DiagramError(ValueError):
    pass


def corner_xy(params: CatParams, k: int, radius: float = 1.0) -> tuple[float, float]:
    """Corner k of the N-gon; corners run anticlockwise from the bottom."""
    ang = -math.pi / 2 + 2 * math.pi * k / params.N
    return radius * math.cos(ang), radius * math.sin(ang)


def irreducible_maps(model: ArcModel) -> list[tuple[Arc, Arc]]:
    """Arrows of the AR quiver: middle terms of the AR triangle starting at each arc."""
    out = set()
    for x in model.arcs:
        lx = model.lift[x]
        z = derived.tau_inv(lx)
        mid = derived.cone(z, derived.sigma(lx, 1))
        for e in mid:
            out.add((x, model.to_arc(derived.sigma(e, -1))))
    return sorted(out)


def _arc_id(x: Arc) -> str:
    return f"a{x.a}_{x.b}"


def polygon_dot(params: CatParams, arcs: Iterable[Arc]) -> str:
    lines = ["graph polygon {", '  graph [layout=neato, splines=line];',
             '  node [shape=plaintext, fontsize=10];']
    for k in range(params.N):
        x, y = corner_xy(params, k, 4.0)
        lines.append(f'  c{k} [label="{k}", pos="{x:.3f},{y:.3f}!"];')
    for k in range(params.N):
        lines.append(f"  c{k} -- c{(k + 1) % params.N} [color=gray];")
    for t in sorted(arcs):
        lines.append(f"  c{t.a} -- c{t.b} [penwidth=2];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def arquiver_dot(model: ArcModel, fills: Mapping[str, Iterable[Arc]] = (),
                 outlines: Mapping[str, Iterable[Arc]] = ()) -> str:
    fills = {k: set(v) for k, v in dict(fills).items()}
    outlines = {k: set(v) for k, v in dict(outlines).items()}
    lines = ["digraph arquiver {", "  graph [rankdir=LR];", "  node [shape=box, fontsize=10];"]
    for x in model.arcs:
        attrs = [f'label="({x.a},{x.b})"']
        for name, members in sorted(fills.items()):
            if x in members:
                attrs.append(f'style=filled, fillcolor="{FILLS.get(name, "#dddddd")}"')
                break
        colors = [OUTLINES.get(name, "black") for name, members in sorted(outlines.items()) if x in members]
        if colors:
            attrs.append(f'color="{":".join(colors)}", penwidth=2')
        lines.append(f"  {_arc_id(x)} [{', '.join(attrs)}];")
    for s, t in irreducible_maps(model):
        lines.append(f"  {_arc_id(s)} -> {_arc_id(t)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _svg(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def polygon_svg(params: CatParams, arcs: Iterable[Arc], title: str = "") -> str:
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 5))
        xs = [corner_xy(params, k)[0] for k in range(params.N + 1)]
        ys = [corner_xy(params, k)[1] for k in range(params.N + 1)]
        ax.plot(xs, ys, color="0.6", lw=0.8)
        for k in range(params.N):
            x, y = corner_xy(params, k, 1.09)
            ax.text(x, y, str(k), ha="center", va="center", fontsize=6)
        for t in sorted(arcs):
            (x0, y0), (x1, y1) = corner_xy(params, t.a), corner_xy(params, t.b)
            ax.plot([x0, x1], [y0, y1], color="k", lw=1.4)
        ax.set_aspect("equal")
        ax.axis("off")
        if title:
            ax.set_title(title)
        return _svg(fig)


def arquiver_layout(model: ArcModel) -> dict[Arc, tuple[float, float]]:
    return {x: tuple(float(c) for c in model.mesh_position(x)) for x in model.arcs}


def arquiver_svg(model: ArcModel, fills: Mapping[str, Iterable[Arc]] = (),
                 outlines: Mapping[str, Iterable[Arc]] = (), title: str = "") -> str:
    fills = {k: set(v) for k, v in dict(fills).items()}
    outlines = {k: set(v) for k, v in dict(outlines).items()}
    pos = arquiver_layout(model)
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(max(6.0, model.N / 3.2), 0.9 * model.n + 1.2))
        for s, t in irreducible_maps(model):
            (x0, y0), (x1, y1) = pos[s], pos[t]
            if abs(x1 - x0) != 1:
                continue  # the arrow leaves the strip on one side and re-enters on the other
            ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                        arrowprops=dict(arrowstyle="->", color="0.6", lw=0.5, shrinkA=8, shrinkB=8))
        for x in model.arcs:
            px, py = pos[x]
            face = "white"
            for name, members in sorted(fills.items()):
                if x in members:
                    face = FILLS.get(name, "#dddddd")
                    break
            edges = [OUTLINES.get(name, "black") for name, members in sorted(outlines.items()) if x in members]
            for k, color in enumerate(edges[1:], start=1):
                ax.text(px, py, f"{x.a},{x.b}", ha="center", va="center", fontsize=5, color="none",
                        bbox=dict(boxstyle=f"round,pad={0.25 + 0.22 * k}", fc="none", ec=color, lw=1.0))
            ax.text(px, py, f"{x.a},{x.b}", ha="center", va="center", fontsize=5,
                    bbox=dict(boxstyle="round,pad=0.25", fc=face, ec=edges[0] if edges else "0.7",
                              lw=1.0 if edges else 0.4))
        ax.set_xlim(-1, model.N)
        ax.set_ylim(0.4, model.n + 0.6)
        ax.axis("off")
        if title:
            ax.set_title(title)
        return _svg(fig)


def render(kind: str, fmt: str, model: ArcModel, arcs: Iterable[Arc] = (),
           fills: Mapping[str, Iterable[Arc]] = (), outlines: Mapping[str, Iterable[Arc]] = (),
           title: str = "") -> str:
    if kind not in KINDS:
        raise DiagramError(f"unknown diagram kind {kind!r}; expected one of {KINDS}")
    if fmt not in FORMATS:
        raise DiagramError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if kind == "polygon":
        return polygon_dot(model.params, arcs) if fmt == "dot" else polygon_svg(model.params, arcs, title)
    if fmt == "dot":
        return arquiver_dot(model, fills, outlines)
    return arquiver_svg(model, fills, outlines, title)
