"""Nonnegative families: positive irreducibility, Perron data and monotone bodies."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import DegenerateLeading, NegativeEntry, NonConvergence
from .feasibility.membership import DEFAULT_DELTA
from .polytope import DEFAULT_MAX_ITER, DEFAULT_MAX_NODES, MONOTONE, run_algorithm1

_POWER_TOL = 1e-14
_POWER_MAX_ITER = 20000
_DENSE_LIMIT = 200


@dataclass(frozen=True)
class PositiveIrreducibility:
    irreducible: bool
    subspace: Optional[tuple] = None  # 1-based coordinate indices of a closed class

    def describe(self) -> str:
        if self.irreducible:
            return "PositivelyIrreducible"
        return f"InvariantCoordinateSubspace({set(self.subspace)})"


def positive_irreducibility(family) -> PositiveIrreducibility:
    """Strong connectivity of the graph with an edge ``j -> i`` when some ``A[i, j] > 0``."""
    mats = family.matrices if hasattr(family, "matrices") else family
    if any((np.asarray(a) < 0).any() for a in mats):
        raise NegativeEntry("positive irreducibility needs nonnegative matrices")
    pattern = sum((np.asarray(a) > 0).astype(np.int8) for a in mats)
    adj = csr_matrix(pattern.T > 0)  # adj[j, i] = edge j -> i
    n_comp, labels = connected_components(adj, directed=True, connection="strong")
    if n_comp == 1:
        return PositiveIrreducibility(True)
    # a class without edges leaving it spans an invariant coordinate subspace
    src, dst = adj.nonzero()
    leaving = set(labels[src[labels[src] != labels[dst]]])
    for c in range(n_comp):
        if c not in leaving:
            idx = tuple(int(i) + 1 for i in np.flatnonzero(labels == c))
            return PositiveIrreducibility(False, idx)
    raise AssertionError("a finite digraph always has a closed strong component")


def perron_root(P, tol: float = _POWER_TOL, max_iter: int = _POWER_MAX_ITER):
    """Spectral radius and nonnegative eigenvector of a nonnegative matrix.

    Small matrices use a dense eigensolver. Large ones use power iteration on
    ``P + c I`` (same Perron vector, no peripheral spectrum to oscillate on).
    """
    P = np.asarray(P, dtype=float)
    d = P.shape[0]
    if d <= _DENSE_LIMIT:
        w, V = np.linalg.eig(P)
        i = int(np.argmax(np.abs(w)))
        v = np.abs(V[:, i].real)
        rho = float(abs(w[i]))
        return rho, v / np.linalg.norm(v)
    c = float(np.abs(P).sum(axis=1).mean()) * 0.5 + 1e-300
    x = np.full(d, 1.0 / np.sqrt(d))
    rho = 0.0
    for _ in range(max_iter):
        y = P @ x
        rho = float(x @ y)
        if np.linalg.norm(y - rho * x) <= tol * max(rho, 1e-300) * 10:
            break
        z = y + c * x
        x = z / np.linalg.norm(z)
    else:
        raise NonConvergence("power iteration did not converge")
    x = np.abs(x)
    return rho, x / np.linalg.norm(x)


def perron_vector(P) -> np.ndarray:
    return perron_root(P)[1]


def run_monotone_algorithm1(family, candidate, delta=DEFAULT_DELTA, max_iter=DEFAULT_MAX_ITER,
                            max_nodes=DEFAULT_MAX_NODES, time_limit=None, verify="auto"):
    """Monotone variant: Perron root and the downward-closed hull oracle."""
    if not family.is_nonnegative():
        raise NegativeEntry("the monotone variant needs a nonnegative family")
    if not candidate.nu > 0:
        raise DegenerateLeading("candidate product has zero spectral radius (nilpotent)")
    return run_algorithm1(family, candidate, delta=delta, max_iter=max_iter,
                          max_nodes=max_nodes, time_limit=time_limit, monotone=True,
                          verify=verify)


def monotone_barabanov(family, delta=DEFAULT_DELTA, **kw):
    """Monotone Barabanov norm ``f(x) = max <v*, x>`` over the dual monotone body."""
    from .norm import build_barabanov

    return build_barabanov(family, delta=delta, monotone=True, **kw)


def is_monotone_body(body) -> bool:
    return body.kind == MONOTONE
