"""Matplotlib rendering of subdivisions and tropical curves to SVG files.

Presentation only: nothing numeric depends on this module.  Figures are
written with scrubbed metadata so identical inputs give identical files.
"""

from __future__ import annotations

import os
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .dual_curve import TropicalCurve
from .lattice import LatticePolygon
from .subdivision import Subdivision

matplotlib.rcParams["svg.hashsalt"] = "tropsev"


def _save(fig, path: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def render_subdivision(s: Subdivision, path: str, title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(4, 4))
    for e in s.edges:
        (x1, y1), (x2, y2) = e.segment.a, e.segment.b
        color = "tab:blue" if e.interior else "black"
        ax.plot([x1, x2], [y1, y2], "-", color=color, linewidth=1.4)
    pts = s.polygon.lattice_points
    ax.plot([p[0] for p in pts], [p[1] for p in pts], "o", color="0.6", markersize=3)
    vs = s.vertices
    ax.plot([p[0] for p in vs], [p[1] for p in vs], "o", color="black", markersize=5)
    ax.set_aspect("equal")
    ax.set_title(title)
    ax.autoscale()
    ax.margins(0.15)
    _save(fig, path)


def render_curve(
    curve: TropicalCurve, path: str, points=None, title: str = "", ray_length=None
) -> None:
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    xs = [float(v[0]) for v in curve.vertices]
    ys = [float(v[1]) for v in curve.vertices]
    if points:
        xs += [float(Fraction(p[0])) for p in points]
        ys += [float(Fraction(p[1])) for p in points]
    spread = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    reach = ray_length if ray_length is not None else 0.45 * spread + 1.0
    for e in curve.edges:
        a = curve.vertices[e.start]
        b = curve.vertices[e.end]
        ax.plot([float(a[0]), float(b[0])], [float(a[1]), float(b[1])], "-", color="black")
        if e.weight > 1:
            mx, my = (float(a[0] + b[0]) / 2, float(a[1] + b[1]) / 2)
            ax.annotate(str(e.weight), (mx, my), color="tab:red", fontsize=9)
    for r in curve.rays:
        src = curve.vertices[r.source]
        dx, dy = r.direction
        norm = max(abs(dx), abs(dy))
        tip = (float(src[0]) + reach * dx / norm, float(src[1]) + reach * dy / norm)
        ax.plot([float(src[0]), tip[0]], [float(src[1]), tip[1]], "-", color="black")
        if r.weight > 1:
            ax.annotate(str(r.weight), tip, color="tab:red", fontsize=9)
    vx = [float(v[0]) for v in curve.vertices]
    vy = [float(v[1]) for v in curve.vertices]
    ax.plot(vx, vy, "o", color="black", markersize=4)
    if points:
        ax.plot(
            [float(Fraction(p[0])) for p in points],
            [float(Fraction(p[1])) for p in points],
            "*",
            color="tab:orange",
            markersize=9,
        )
    ax.set_aspect("equal")
    ax.set_title(title)
    _save(fig, path)


def render_solution(solution, polygon: LatticePolygon, directory: str, index: int) -> None:
    """One SVG per counted curve plus its dual subdivision."""
    from .dual_curve import dualize

    curve = dualize(polygon, solution.omega)
    render_curve(
        curve,
        os.path.join(directory, f"solution_{index:03d}_curve.svg"),
        title=f"solution {index}, mu={solution.mu}",
    )
    render_subdivision(
        solution.subdivision,
        os.path.join(directory, f"solution_{index:03d}_subdivision.svg"),
        title=f"dual subdivision {index}",
    )
