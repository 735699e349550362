"""SVG pictures of balanced graphs on the fundamental octagon in the Poincaré disk."""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .fuchsian import FuchsianGroup
from .mink import distance, inverse_isometry, tangent_toward, to_disk

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b")
MIN_WIDTH = 0.3
MAX_WIDTH = 3.0
SAMPLES = 32


def project(p):
    """Hyperboloid point(s) to the Poincaré disk."""
    return to_disk(p)


def _on_segment(a, u, s):
    s = np.asarray(s, dtype=float)
    return np.cosh(s)[..., None] * a + np.sinh(s)[..., None] * u


def edge_pieces(G: FuchsianGroup, a, b, n=SAMPLES):
    """Cut the segment [a, b] where it leaves octagon translates and fold each piece into the octagon.

    Returns a list of (n, 3) arrays of hyperboloid points.
    """
    L = float(distance(a, b))
    if L == 0.0:
        return []
    u = tangent_toward(a, b)

    def word_at(s):
        return G.reduce_to_domain(_on_segment(a, u, s))[1]

    grid = np.linspace(0.0, L, 8 * n + 1)
    mids = []
    words = [word_at(s) for s in grid]
    for k in range(len(grid) - 1):
        if words[k] != words[k + 1]:
            lo, hi = grid[k], grid[k + 1]
            for _ in range(40):
                m = 0.5 * (lo + hi)
                if word_at(m) == words[k]:
                    lo = m
                else:
                    hi = m
            mids.append((0.5 * (lo + hi), words[k + 1]))
    cuts = [0.0] + [m for m, _ in mids] + [L]
    piece_words = [words[0]] + [w for _, w in mids]
    out = []
    for (s0, s1), w in zip(zip(cuts[:-1], cuts[1:]), piece_words):
        if s1 - s0 < 1e-12:
            continue
        back = inverse_isometry(G.evaluate_word(w))
        out.append(_on_segment(a, u, np.linspace(s0, s1, n)) @ back.T)
    return out


def _widths(graphs):
    ws = np.concatenate([g.weights() for g in graphs if g.edges] or [np.zeros(0)])
    lo, hi = (float(ws.min()), float(ws.max())) if len(ws) else (0.0, 0.0)

    def width(w):
        if hi - lo < 1e-12:
            return 1.5
        return MIN_WIDTH + (MAX_WIDTH - MIN_WIDTH) * (w - lo) / (hi - lo)

    return width


def _points(xy):
    # y is flipped so the picture matches the usual orientation of the disk
    return " ".join(f"{x:.6f},{-y:.6f}" for x, y in xy)


def render_svg(G: FuchsianGroup, graphs, path=None, size=600, labels=None) -> str:
    """Draw the disk, the octagon outline and every edge; writes to ``path`` when given."""
    dom = G._require_domain()
    width = _widths(graphs)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="-1.05 -1.05 2.1 2.1">',
        '<circle cx="0" cy="0" r="1" fill="none" stroke="#888888" stroke-width="1" vector-effect="non-scaling-stroke"/>',
        f'<polygon class="octagon" points="{_points(project(dom.boundary(SAMPLES)))}" fill="#f4f4f4" '
        'stroke="#000000" stroke-width="1" vector-effect="non-scaling-stroke"/>',
    ]
    for k, g in enumerate(graphs):
        colour = PALETTE[k % len(PALETTE)]
        name = escape(labels[k]) if labels else f"graph{k}"
        out.append(f'<g class="graph" id="{name}" stroke="{colour}" fill="none">')
        for e in g.edges:
            a, b = g.lift(G, e)
            for piece in edge_pieces(G, a, b):
                out.append(f'<polyline class="edge" data-edge="{e.id}" points="{_points(project(piece))}" '
                           f'stroke-width="{width(e.weight):.3f}" vector-effect="non-scaling-stroke"/>')
        for v in g.vertices:
            x, y = project(v.point)
            out.append(f'<circle class="vertex" cx="{x:.6f}" cy="{-y:.6f}" r="0.012" fill="{colour}" stroke="none"/>')
        out.append("</g>")
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
