"""Several dominant products: balanced roots and the search for a balancing vector."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DuplicateCandidates, MismatchedNu
from .feasibility.lp import DEFAULT_METHOD
from .feasibility.membership import DEFAULT_DELTA, DEFAULT_FACETS
from .polytope import (
    DEFAULT_MAX_ITER,
    DEFAULT_MAX_NODES,
    Budget,
    Halted,
    NotDominantEvidence,
    _want_verify,
    build_root,
    run_engine,
    roots_on_boundary,
    verify_invariance,
)
from .search import TIE_RTOL, cyclic_primitive_normalize

DEFAULT_GRID = 5
DEFAULT_SEARCH_BUDGET = 40


@dataclass(frozen=True)
class BalancingVector:
    alphas: tuple

    def __post_init__(self):
        a = np.asarray(self.alphas, dtype=float)
        if a.ndim != 1 or a.size == 0 or not np.all(a > 0):
            raise ValueError("balancing weights must be positive")
        object.__setattr__(self, "alphas", tuple(float(t) for t in a / a.sum()))

    @property
    def r(self) -> int:
        return len(self.alphas)


@dataclass
class Found:
    alpha: BalancingVector
    result: Halted
    trials: int
    balanced: bool = True
    status: str = "found"


@dataclass
class NotFound:
    trials: int
    best_alpha: Optional[BalancingVector]
    reason: str
    evidence: Optional[NotDominantEvidence] = None
    status: str = "not_found"


def check_candidates(candidates):
    nus = [c.nu for c in candidates]
    if max(nus) - min(nus) > TIE_RTOL * max(nus):
        raise MismatchedNu(f"candidate nu values differ: {nus}")
    forms = [cyclic_primitive_normalize(c.word).word for c in candidates]
    if len(set(forms)) != len(forms):
        raise DuplicateCandidates("two candidates are cyclic rotations of one word")


def run_algorithm2(family, candidates, alpha, delta=DEFAULT_DELTA, facets=DEFAULT_FACETS,
                   max_iter=DEFAULT_MAX_ITER, max_nodes=DEFAULT_MAX_NODES, time_limit=None,
                   method=DEFAULT_METHOD, monotone=False, verify="auto", check_evidence=True):
    """Multi-root run with root ``i`` scaled by ``alpha_i``; same outcomes as the single-root run."""
    candidates = list(candidates)
    if not isinstance(alpha, BalancingVector):
        alpha = BalancingVector(tuple(alpha))
    if alpha.r != len(candidates):
        raise ValueError("one balancing weight per candidate is required")
    check_candidates(candidates)
    nu = candidates[0].nu
    roots = [build_root(family, c, monotone=monotone, nu=nu) for c in candidates]
    alphas = None if alpha.r == 1 else alpha.alphas
    res = run_engine(roots, alphas, monotone, delta, facets, max_iter, max_nodes, time_limit,
                     method, check_evidence, fingerprint=family.fingerprint())
    if isinstance(res, Halted) and _want_verify(verify, res.body):
        verify_invariance(res.body, raise_on_failure=True)
    return res


def simplex_grid(r: int, points: int = DEFAULT_GRID):
    """Interior grid of the simplex with ``points`` values per coordinate, centre first."""
    n = points + r - 1
    out = []
    for k in itertools.product(range(1, points + 1), repeat=r - 1):
        last = n - sum(k)
        if last >= 1:
            out.append(np.array(k + (last,), dtype=float) / n)
    centre = np.full(r, 1.0 / r)
    out.sort(key=lambda a: (float(np.linalg.norm(a - centre)), tuple(a)))
    if not np.allclose(out[0], centre):
        out.insert(0, centre)
    return out


def find_balancing(family, candidates, delta=DEFAULT_DELTA, facets=DEFAULT_FACETS,
                   max_iter=DEFAULT_MAX_ITER, max_nodes=DEFAULT_MAX_NODES, time_limit=None,
                   search_budget=DEFAULT_SEARCH_BUDGET, grid=DEFAULT_GRID, monotone=False,
                   method=DEFAULT_METHOD):
    """Grid search on the simplex, then a shrinking pattern search around the best trial.

    A trial that hits its budget is scored by the size of its frontier; the
    smallest frontier seeds the refinement. A halted trial whose body has a
    root element strictly inside is unbalanced: its body is still invariant,
    so it is kept as a fallback while the search goes on. Returns ``Found``
    for the first balanced weights (or the first unbalanced fallback once the
    budget is spent), otherwise ``NotFound``, which is no evidence against
    dominance.
    """
    candidates = list(candidates)
    check_candidates(candidates)
    r = len(candidates)
    trials = 0
    best = None  # (frontier, alpha)
    last_other = None
    fallback = None
    deadline = None if time_limit is None else time.perf_counter() + time_limit

    def out_of_time():
        return deadline is not None and time.perf_counter() >= deadline

    def trial(a):
        nonlocal trials, best, last_other, fallback
        trials += 1
        # the time limit covers the whole search, not each trial
        left = None if deadline is None else max(deadline - time.perf_counter(), 1e-3)
        res = run_algorithm2(family, candidates, BalancingVector(tuple(a)), delta, facets,
                             max_iter, max_nodes, left, method, monotone)
        if isinstance(res, Halted):
            if r == 1 or roots_on_boundary(res.body):
                return res
            if fallback is None:
                fallback = Found(BalancingVector(tuple(a)), res, 0, balanced=False)
            return None
        if isinstance(res, Budget):
            score = res.n_frontier
            if best is None or score < best[0]:
                best = (score, np.asarray(a, dtype=float))
        else:
            last_other = res
        return None

    def evidence():
        # a closed word beating the candidates refutes them for every choice of weights
        if isinstance(last_other, NotDominantEvidence) and not math.isnan(last_other.nu):
            return NotFound(trials, None, _why(last_other), last_other)
        return None

    if r == 1:
        res = trial((1.0,))
        if res is not None:
            return Found(BalancingVector((1.0,)), res, trials)
        return evidence() or NotFound(trials, None, _why(last_other))
    for a in simplex_grid(r, grid):
        if trials >= search_budget or out_of_time():
            break
        res = trial(a)
        if res is not None:
            return Found(BalancingVector(tuple(a)), res, trials)
        if evidence() is not None:
            return evidence()
    if best is None:
        return _fallback(fallback, trials) or NotFound(trials, None, _why(last_other))
    step = 0.5 / (grid + r - 1)
    centre = best[1]
    while trials < search_budget and step > 1e-6 and not out_of_time():
        moved = False
        for i, j in itertools.permutations(range(r), 2):
            if trials >= search_budget or out_of_time():
                break
            a = centre.copy()
            a[i] += step
            a[j] -= step
            if a[j] <= 0:
                continue
            res = trial(a)
            if res is not None:
                return Found(BalancingVector(tuple(a)), res, trials)
            if evidence() is not None:
                return evidence()
            if best[1] is not centre and np.allclose(best[1], a):
                centre, moved = best[1], True
        if not moved:
            step /= 2
    return _fallback(fallback, trials) or NotFound(trials, BalancingVector(tuple(best[1])),
                                                   _why(last_other))


def _fallback(found, trials):
    if found is None:
        return None
    found.trials = trials
    return found


def _why(other):
    if other is None:
        return "no balancing vector halted within the search budget; either the weights " \
               "are wrong or the candidates are not dominant"
    return f"trial ended with {other.status}: {getattr(other, 'reason', '')}"


def replay_alpha(alpha: BalancingVector, rel: float) -> BalancingVector:
    """Weights perturbed by the relative factor ``1 + rel`` on the first root."""
    a = np.array(alpha.alphas)
    a[0] *= 1.0 + rel
    return BalancingVector(tuple(a))


def alpha_separation(a: BalancingVector, b: BalancingVector) -> float:
    return float(np.max(np.abs(np.log(np.array(a.alphas) / np.array(b.alphas)))))


def ratio_signature(alpha: BalancingVector) -> tuple:
    return tuple(round(math.log(x), 12) for x in alpha.alphas)
