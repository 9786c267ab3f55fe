"""Deterministic SVG drawings of invariant bodies, norms and trajectories.

Figures are built on a bare :class:`matplotlib.figure.Figure` (no pyplot
state). The SVG id salt is pinned and the date stamp dropped, so rendering
the same object twice gives identical bytes.
"""

from __future__ import annotations

import itertools

import numpy as np
from matplotlib import rc_context
from matplotlib.figure import Figure

from .errors import DimensionMismatch
from .polytope import ELLIPSE, MONOTONE, REAL, InvariantBody, symmetric_points

ROOT_COLOR = "red"
BODY_COLOR = "#1f4e79"
POLAR_COLOR = "#7a7a7a"
_SVG_RC = {"svg.hashsalt": "jsrkit", "svg.fonttype": "none"}
_CIRCLE = 720


def _save(fig: Figure, path: str) -> None:
    with rc_context(_SVG_RC):
        fig.savefig(path, format="svg", metadata={"Date": None})


def _ordered_hull(points: np.ndarray) -> np.ndarray:
    from scipy.spatial import ConvexHull

    hull = ConvexHull(points)
    return points[hull.vertices]  # counter-clockwise in 2-D


def _ellipse_points(x, y, n=_CIRCLE) -> np.ndarray:
    th = 2.0 * np.pi * np.arange(n) / n
    y = np.zeros_like(x) if y is None else y
    return np.cos(th)[:, None] * x[None, :] + np.sin(th)[:, None] * y[None, :]


def boundary_2d(body: InvariantBody) -> np.ndarray:
    """Ordered boundary polygon of a planar body (ellipse hulls are sampled)."""
    if body.dim != 2:
        raise DimensionMismatch("boundary_2d needs a planar body")
    if body.kind == REAL:
        return _ordered_hull(symmetric_points(body))
    if body.kind == MONOTONE:
        V = body.vertex_array()
        pts = [V, V * [1.0, 0.0], V * [0.0, 1.0], np.zeros((1, 2))]
        return _ordered_hull(np.vstack(pts))
    pts = np.vstack([_ellipse_points(x, y) for x, y in body.generators])
    return _ordered_hull(pts)


def _closed(poly: np.ndarray) -> np.ndarray:
    return np.vstack([poly, poly[:1]])


def body_figure(body: InvariantBody, polar: bool = False, title: str = "") -> Figure:
    fig = Figure(figsize=(5, 5))
    ax = fig.add_subplot()
    poly = _closed(boundary_2d(body))
    ax.fill(poly[:, 0], poly[:, 1], color=BODY_COLOR, alpha=0.12, lw=0)
    ax.plot(poly[:, 0], poly[:, 1], color=BODY_COLOR, lw=1.4, label="body")
    for x, y in body.root_elements:
        if y is None or body.kind != ELLIPSE:
            ax.plot([x[0]], [x[1]], "o", color=ROOT_COLOR, ms=6)
        else:
            e = _closed(_ellipse_points(x, y))
            ax.plot(e[:, 0], e[:, 1], color=ROOT_COLOR, lw=1.2)
    if polar:
        from .norm import polar_2d

        p = _closed(polar_2d(body))
        ax.plot(p[:, 0], p[:, 1], "--", color=POLAR_COLOR, lw=1.0, label="polar")
        ax.legend(loc="upper right", frameon=False)
    ax.set_aspect("equal")
    ax.axhline(0, color="0.85", lw=0.5, zorder=0)
    ax.axvline(0, color="0.85", lw=0.5, zorder=0)
    if title:
        ax.set_title(title)
    return fig


def body_figure_3d(body: InvariantBody, title: str = "") -> Figure:
    from mpl_toolkits.mplot3d.art3d import Poly3DCollection

    verts, faces = hull_mesh(body)
    fig = Figure(figsize=(5, 5))
    ax = fig.add_subplot(projection="3d")
    coll = Poly3DCollection([verts[f] for f in faces], facecolor=BODY_COLOR, alpha=0.15,
                            edgecolor=BODY_COLOR, linewidth=0.6)
    ax.add_collection3d(coll)
    R = np.array([x for x, _ in body.root_elements])
    ax.scatter(R[:, 0], R[:, 1], R[:, 2], color=ROOT_COLOR, s=18, depthshade=False)
    lim = float(np.abs(verts).max())
    for set_lim in (ax.set_xlim, ax.set_ylim, ax.set_zlim):
        set_lim(-lim, lim)
    if title:
        ax.set_title(title)
    return fig


def render_body(body: InvariantBody, path: str, polar: bool = False, title: str = "") -> str:
    """Draw a body of dimension 2 or 3 to an SVG file; root elements are red."""
    if body.dim == 2:
        fig = body_figure(body, polar, title)
    elif body.dim == 3:
        if body.kind == ELLIPSE:
            raise DimensionMismatch("3-D drawing supports polytopes only")
        fig = body_figure_3d(body, title)
    else:
        raise DimensionMismatch(f"cannot draw a body of dimension {body.dim}")
    _save(fig, path)
    return path


def hull_mesh(body: InvariantBody, decimals: int = 9):
    """Vertices and polygonal faces (coplanar triangles merged) of a 3-D polytope."""
    from scipy.spatial import ConvexHull

    if body.dim != 3 or body.kind == ELLIPSE:
        raise DimensionMismatch("meshes are produced for 3-D polytopes")
    if body.kind == REAL:
        pts = symmetric_points(body)
    else:
        V = body.vertex_array()
        masks = np.array(list(itertools.product((0.0, 1.0), repeat=3)))
        pts = np.vstack([V * m for m in masks])
        pts = np.unique(np.round(pts, 14), axis=0)
    hull = ConvexHull(pts)
    keep = hull.vertices
    index = {int(v): i for i, v in enumerate(keep)}
    verts = pts[keep]
    groups = {}
    for simplex, eq in zip(hull.simplices, hull.equations):
        key = tuple(np.round(eq, decimals))
        groups.setdefault(key, set()).update(int(s) for s in simplex)
    faces = []
    for key, members in groups.items():
        ids = [index[m] for m in members if m in index]
        P = verts[ids]
        c = P.mean(axis=0)
        n = np.array(key[:3])
        u = P[0] - c
        u /= np.linalg.norm(u)
        w = np.cross(n, u)
        ang = np.arctan2((P - c) @ w, (P - c) @ u)
        faces.append([ids[i] for i in np.argsort(ang)])
    faces.sort()
    return verts, faces


def write_off(body: InvariantBody, path: str) -> str:
    verts, faces = hull_mesh(body)
    with open(path, "w") as fh:
        fh.write("OFF\n")
        fh.write(f"{len(verts)} {len(faces)} 0\n")
        for v in verts:
            fh.write(" ".join(repr(float(t)) for t in v) + "\n")
        for f in faces:
            fh.write(f"{len(f)} " + " ".join(str(i) for i in f) + "\n")
    return path


def norm_unit_ball(f, samples: int = _CIRCLE) -> np.ndarray:
    """Boundary of the unit ball of a planar norm, sampled along rays."""
    if f.dim != 2:
        raise DimensionMismatch("unit balls are drawn for planar norms")
    if f.kind == "MonotoneLinear":
        th = 0.5 * np.pi * np.arange(samples + 1) / samples
    else:
        th = 2.0 * np.pi * np.arange(samples) / samples
    U = np.column_stack([np.cos(th), np.sin(th)])
    return U / f.evaluate_many(U)[:, None]


def render_norm(f, path: str, title: str = "") -> str:
    ball = norm_unit_ball(f)
    if f.kind == "MonotoneLinear":
        ball = np.vstack([[0.0, 0.0], ball, [0.0, 0.0]])
    else:
        ball = _closed(ball)
    fig = Figure(figsize=(5, 5))
    ax = fig.add_subplot()
    ax.fill(ball[:, 0], ball[:, 1], color=BODY_COLOR, alpha=0.12, lw=0)
    ax.plot(ball[:, 0], ball[:, 1], color=BODY_COLOR, lw=1.4)
    ax.set_aspect("equal")
    ax.set_title(title or f"unit ball, {f.kind}")
    _save(fig, path)
    return path


def render_trajectory(records, path: str, title: str = "") -> str:
    """G-norm (log scale) against the step for ``simulate`` output."""
    k = np.array([r[0] for r in records])
    g = np.array([np.nan if r[2] is None else r[2] for r in records], dtype=float)
    fig = Figure(figsize=(6, 3.5))
    ax = fig.add_subplot()
    pos = g > 0
    ax.semilogy(k[pos], g[pos], color=BODY_COLOR, lw=1.0)
    ax.set_xlabel("step")
    ax.set_ylabel("G-norm")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    _save(fig, path)
    return path
