"""Support functions of finite unions of ellipses (and segments).

The hull ``K = co{E_1, ..., E_l}`` of centred ellipses ``E_i = {x_i cos s + y_i sin s}``
has support function ``h_K(u) = max_i sqrt(<x_i,u>^2 + <y_i,u>^2)``. An ellipse
``E`` lies in ``t K`` iff ``h_E <= t h_K`` on the sphere, so the smallest such
``t`` is ``max_u h_E(u) / h_K(u)``. The maximum is located on a direction grid
and then polished by a local search. Used where the M-gon LP is too
conservative: pruning, a posteriori verification and G-norms of ellipse hulls.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize

_GRID_2D = 4096
_GRID_3D = 6000
_GRID_HIGH = 20000
_POLISH = 4


@lru_cache(maxsize=16)
def direction_grid(d: int) -> np.ndarray:
    """Deterministic unit directions covering the half-sphere (support is even)."""
    if d == 1:
        return np.ones((1, 1))
    if d == 2:
        th = np.pi * np.arange(_GRID_2D) / _GRID_2D
        return np.column_stack([np.cos(th), np.sin(th)])
    if d == 3:
        n = _GRID_3D
        i = np.arange(n) + 0.5
        z = 1.0 - i / n  # upper half only
        r = np.sqrt(1.0 - z * z)
        ang = np.pi * (1.0 + 5.0**0.5) * i
        return np.column_stack([r * np.cos(ang), r * np.sin(ang), z])
    rng = np.random.default_rng(20240607 + d)
    u = rng.standard_normal((_GRID_HIGH, d))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    return np.vstack([u, np.eye(d)])


def _stack(gens, d):
    X = np.array([g[0] for g in gens], dtype=float).reshape(-1, d)
    Y = np.array([np.zeros(d) if g[1] is None else g[1] for g in gens], dtype=float).reshape(-1, d)
    return X, Y


def hull_support(gens, U) -> np.ndarray:
    """``h_K`` at the rows of ``U`` for ``K = co`` of the (x, y) generators."""
    U = np.atleast_2d(U)
    X, Y = _stack(gens, U.shape[1])
    return np.sqrt((U @ X.T) ** 2 + (U @ Y.T) ** 2).max(axis=1)


def ellipse_support(x, y, U) -> np.ndarray:
    U = np.atleast_2d(U)
    h = (U @ x) ** 2
    if y is not None:
        h = h + (U @ y) ** 2
    return np.sqrt(h)


def containment_ratio(x, y, gens) -> float:
    """``min{t : E(x, y) in t * co(gens)}``, to optimisation accuracy.

    Returns ``inf`` when some direction has ``h_K = 0`` but ``h_E > 0`` (the
    generators do not span a subspace containing ``E``).
    """
    x = np.asarray(x, dtype=float)
    d = x.shape[0]
    if not np.any(x) and (y is None or not np.any(y)):
        return 0.0
    if not gens:
        return math.inf
    X, Y = _stack(gens, d)
    U = direction_grid(d)

    def ratio_at(Umat):
        hk = np.sqrt((Umat @ X.T) ** 2 + (Umat @ Y.T) ** 2).max(axis=1)
        he = ellipse_support(x, y, Umat)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.where(hk > 0, he / np.where(hk > 0, hk, 1.0),
                         np.where(he > 1e-14 * max(np.abs(x).max(), 1e-300), np.inf, 0.0))
        return r

    r = ratio_at(U)
    best = float(r.max())
    if not math.isfinite(best) or d == 1:
        return best
    # the ratio is smooth away from ties of the max; polish the best grid points
    top = np.argsort(-r)[:_POLISH]
    for idx in top:
        res = minimize(lambda u: -float(ratio_at(u[None, :] / max(np.linalg.norm(u), 1e-300))[0]),
                       U[idx], method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 400 * d})
        best = max(best, -float(res.fun))
    return best


def point_gauge(v, gens) -> float:
    """Minkowski functional of ``co(gens)`` at ``v``."""
    return containment_ratio(v, None, gens)
