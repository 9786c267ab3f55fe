"""Membership oracles for symmetric polytopes, hulls of ellipses and monotone hulls.

All oracles return the optimal scaling ``t0``: the largest ``t`` such that
``t * v`` still lies in the hull. The candidate is strictly interior when
``t0 > 1 + delta``; ``1 / t0`` is its gauge (Minkowski norm) in the hull.

Ellipses are pairs ``(x, y)`` standing for ``{x cos s + y sin s}``; a pair with
``y = 0`` is the segment ``[-x, x]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .lp import DEFAULT_METHOD, LpProblem, lp_solve

DEFAULT_DELTA = 1e-8
DEFAULT_FACETS = 32


@dataclass(frozen=True)
class MembershipVerdict:
    t0: float
    interior: bool
    margin: float

    @classmethod
    def from_t0(cls, t0: float, delta: float) -> "MembershipVerdict":
        return cls(t0=t0, interior=bool(t0 > 1.0 + delta), margin=t0 - 1.0)

    @property
    def gauge(self) -> float:
        if self.t0 == math.inf:
            return 0.0
        if self.t0 <= 0:
            return math.inf
        return 1.0 / self.t0


def symmetric_hull_lp(v, vertices) -> LpProblem:
    """The LP ``t0 -> max`` over ``t0 v = sum t_i v_i``, ``|t_i| <= s_i``, ``sum s_i <= 1``.

    Variable order is ``(t0, t_1..t_l, s_1..s_l)``.
    """
    v = np.asarray(v, dtype=float)
    V = np.atleast_2d(np.asarray(vertices, dtype=float))
    ell, d = V.shape
    n = 1 + 2 * ell
    c = np.zeros(n)
    c[0] = 1.0
    eye = sp.identity(ell, format="csr")
    zcol = sp.csr_matrix((ell, 1))
    A_ub = sp.vstack([
        sp.hstack([zcol, eye, -eye]),
        sp.hstack([zcol, -eye, -eye]),
        sp.hstack([sp.csr_matrix((1, 1 + ell)), sp.csr_matrix(np.ones((1, ell)))]),
    ], format="csr")
    b_ub = np.zeros(2 * ell + 1)
    b_ub[-1] = 1.0
    A_eq = sp.csr_matrix(np.hstack([v[:, None], -V.T, np.zeros((d, ell))]))
    b_eq = np.zeros(d)
    bounds = [(None, None)] * (1 + ell) + [(0, None)] * ell
    return LpProblem(c, "max", A_ub, b_ub, A_eq, b_eq, bounds)


def hull_t0(v, vertices, method: str = DEFAULT_METHOD) -> float:
    """Optimal ``t0`` of the symmetric-hull LP (``inf`` for the zero vector)."""
    v = np.asarray(v, dtype=float)
    if not np.any(v):
        return math.inf
    V = np.atleast_2d(np.asarray(vertices, dtype=float))
    if V.size == 0:
        return 0.0
    res = lp_solve(symmetric_hull_lp(v, V), method=method)
    if res.status == "unbounded":
        return math.inf
    if res.status == "infeasible":
        return 0.0
    return max(res.value, 0.0)


def point_in_hull(v, vertices, delta: float = DEFAULT_DELTA,
                  method: str = DEFAULT_METHOD) -> MembershipVerdict:
    """Is ``v`` strictly inside ``co{+-v_i}``?"""
    return MembershipVerdict.from_t0(hull_t0(v, vertices, method), delta)


def inscribed_points(x, y, facets: int) -> np.ndarray:
    """Half of the vertices of the regular ``facets``-gon inscribed in the ellipse.

    The other half are the negatives, implied by symmetry.
    """
    x = np.asarray(x, dtype=float)
    if y is None or not np.any(y):
        return x[None, :]
    th = 2.0 * np.pi * np.arange(facets // 2) / facets
    return np.cos(th)[:, None] * x[None, :] + np.sin(th)[:, None] * np.asarray(y)[None, :]


def circumscribed_points(x, y, facets: int) -> np.ndarray:
    """Half of the vertices of a regular ``facets``-gon circumscribed about the ellipse."""
    x = np.asarray(x, dtype=float)
    if y is None or not np.any(y):
        return x[None, :]
    th = np.pi * (2.0 * np.arange(facets // 2) + 1.0) / facets
    r = 1.0 / math.cos(math.pi / facets)
    return r * (np.cos(th)[:, None] * x[None, :] + np.sin(th)[:, None] * np.asarray(y)[None, :])


def generator_points(generators, facets: int) -> np.ndarray:
    """Point cloud (up to sign) whose symmetric hull is inscribed in the hull of ellipses."""
    pts = [inscribed_points(x, y, facets) for x, y in generators]
    return np.vstack(pts) if pts else np.zeros((0, 0))


def ellipse_t0(x, y, points, facets: int = DEFAULT_FACETS, stop_below: float | None = None,
               method: str = DEFAULT_METHOD) -> float:
    """Lower bound for the scaling at which the ellipse ``(x, y)`` fits in ``co(points)``.

    With ``stop_below`` the scan over the circumscribed polygon stops at the
    first vertex whose ``t0`` is at most that value.
    """
    best = math.inf
    for w in circumscribed_points(x, y, facets):
        t = hull_t0(w, points, method)
        best = min(best, t)
        if stop_below is not None and best <= stop_below:
            break
    return best


def ellipse_in_hull(x, y, generators, delta: float = DEFAULT_DELTA,
                    facets: int = DEFAULT_FACETS, method: str = DEFAULT_METHOD,
                    early_exit: bool = True) -> MembershipVerdict:
    """Sufficient test that the ellipse ``(x, y)`` lies strictly inside ``co`` of the generators.

    Every generator ellipse is replaced by its inscribed regular polygon and the
    candidate by its circumscribed one, so a positive answer is always right
    while a negative one is inconclusive.
    """
    if facets < 8 or facets % 2:
        raise ValueError("facets must be an even integer >= 8")
    pts = generator_points(generators, facets)
    t0 = ellipse_t0(x, y, pts, facets, stop_below=(1.0 + delta) if early_exit else None,
                    method=method)
    return MembershipVerdict.from_t0(t0, delta)


def monotone_hull_lp(v, vertices) -> LpProblem:
    """``t0 -> max`` over ``t0 v <= sum t_i v_i``, ``t_i >= 0``, ``sum t_i <= 1``."""
    v = np.asarray(v, dtype=float)
    V = np.atleast_2d(np.asarray(vertices, dtype=float))
    ell, d = V.shape
    c = np.zeros(1 + ell)
    c[0] = 1.0
    A_ub = np.zeros((d + 1, 1 + ell))
    A_ub[:d, 0] = v
    A_ub[:d, 1:] = -V.T
    A_ub[d, 1:] = 1.0
    b_ub = np.zeros(d + 1)
    b_ub[d] = 1.0
    return LpProblem(c, "max", A_ub, b_ub, None, None, [(0, None)] * (1 + ell))


def monotone_t0(v, vertices, method: str = DEFAULT_METHOD) -> float:
    v = np.asarray(v, dtype=float)
    if not np.any(v > 0):
        return math.inf
    V = np.atleast_2d(np.asarray(vertices, dtype=float))
    if V.size == 0:
        return 0.0
    res = lp_solve(monotone_hull_lp(v, V), method=method)
    if res.status == "unbounded":
        return math.inf
    if res.status == "infeasible":
        return 0.0
    return max(res.value, 0.0)


def point_in_monotone_hull(v, vertices, delta: float = DEFAULT_DELTA,
                           method: str = DEFAULT_METHOD) -> MembershipVerdict:
    """Is the nonnegative ``v`` strictly inside the monotone hull ``co_-`` of the vertices?"""
    v = np.asarray(v, dtype=float)
    if (v < 0).any() or (np.asarray(vertices) < 0).any():
        raise ValueError("monotone membership needs nonnegative vectors")
    return MembershipVerdict.from_t0(monotone_t0(v, vertices, method), delta)
