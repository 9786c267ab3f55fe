"""End-to-end JSR certification: search, invariant body, restarts and bounds."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import CycleMismatch, DegenerateLeading
from .feasibility.lp import DEFAULT_METHOD
from .feasibility.membership import DEFAULT_DELTA, DEFAULT_FACETS
from .multi import Found, find_balancing
from .polytope import (
    DEFAULT_MAX_ITER,
    DEFAULT_MAX_NODES,
    Budget,
    Halted,
    NotDominantEvidence,
    prune_redundant,
    run_algorithm1,
)
from .search import (
    enumerate_candidates,
    format_word,
    make_candidate,
    same_cycle,
    top_group,
)

DEFAULT_RESTARTS = 5


@dataclass
class JsrResult:
    status: str  # "halted" | "budget" | "degenerate" | "not_found"
    rho: Optional[float]
    lower: float
    upper: Optional[float]
    candidates: list
    body: Optional[object] = None  # pruned body
    raw_body: Optional[object] = None
    alphas: Optional[tuple] = None
    restarts: int = 0
    warnings: list = field(default_factory=list)
    elapsed: float = 0.0
    detail: str = ""

    @property
    def halted(self) -> bool:
        return self.status == "halted"

    @property
    def words(self) -> list:
        return [c.word for c in self.candidates]

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "rho": self.rho,
            "lower": self.lower,
            "upper": self.upper,
            "words": [format_word(w) for w in self.words],
            "restarts": self.restarts,
            "warnings": list(self.warnings),
            "detail": self.detail,
        }
        if self.alphas is not None:
            out["alphas"] = list(self.alphas)
        if self.body is not None:
            out["body"] = {
                "kind": self.body.kind,
                "generators": self.body.n_generators,
                "raw_generators": self.raw_body.n_generators,
                "iterations": self.body.iterations,
            }
        leading = []
        for c in self.candidates:
            item = {"word": format_word(c.word), "nu": c.nu}
            if c.leading is not None:
                item["leading"] = "real" if c.leading.is_real else "complex"
            if c.argclass is not None:
                item["argument"] = c.argclass.describe()
            leading.append(item)
        out["candidates"] = leading
        return out


def _warnings(group):
    out = []
    for c in group:
        if c.argclass is not None and c.argclass.is_rational:
            out.append(f"candidate {format_word(c.word)} has a complex leading eigenvalue with "
                       f"argument {c.argclass.describe()}: the invariant body is not unique "
                       "(the one reported is built on the leading ellipse)")
        if c.leading is not None and c.leading.gap < 1e-6 * c.leading.modulus:
            out.append(f"candidate {format_word(c.word)} has a nearly degenerate spectral gap "
                       f"({c.leading.gap:.3g})")
    if len(group) > 1:
        out.append(f"{len(group)} dominant products share nu: the invariant body depends on the "
                   "balancing vector and is not unique")
    return out


def certify_jsr(family, max_len=None, top_k=5, delta=DEFAULT_DELTA, facets=DEFAULT_FACETS,
                max_iter=DEFAULT_MAX_ITER, max_nodes=DEFAULT_MAX_NODES, time_limit=None,
                method=DEFAULT_METHOD, monotone=False, max_restarts=DEFAULT_RESTARTS,
                prune=True, verify="auto", search_budget=None) -> JsrResult:
    """Find a dominant product and prove it with an invariant body.

    When a run exposes a closed word of larger averaged spectral radius the
    pipeline restarts with that word; at most ``max_restarts`` times.
    """
    t0 = time.perf_counter()
    cands = enumerate_candidates(family, max_len=max_len, top_k=top_k)
    group = top_group(cands)
    restarts = 0
    extra = []
    while True:
        remaining = None if time_limit is None else max(time_limit - (time.perf_counter() - t0),
                                                         1e-3)
        try:
            if len(group) == 1:
                res = run_algorithm1(family, group[0], delta, facets, max_iter, max_nodes,
                                     remaining, method, monotone=monotone, verify=verify)
                alphas = None
            else:
                kw = {} if search_budget is None else {"search_budget": search_budget}
                fb = find_balancing(family, group, delta, facets, max_iter, max_nodes,
                                    remaining, monotone=monotone, method=method, **kw)
                if isinstance(fb, Found):
                    res, alphas = fb.result, fb.alpha.alphas
                    if not fb.balanced:
                        extra.append("no balancing vector put every root on the boundary; the "
                                     "body is invariant but a root element is interior")
                elif fb.evidence is not None:
                    res, alphas = fb.evidence, None
                else:
                    return JsrResult("not_found", None, group[0].nu, None, group,
                                     restarts=restarts, warnings=_warnings(group),
                                     elapsed=time.perf_counter() - t0, detail=fb.reason)
        except (DegenerateLeading, CycleMismatch) as exc:
            return JsrResult("degenerate", None, group[0].nu, None, group, restarts=restarts,
                             warnings=_warnings(group), elapsed=time.perf_counter() - t0,
                             detail=str(exc))
        if isinstance(res, Halted):
            raw = res.body
            left = None if time_limit is None else max(
                time_limit - (time.perf_counter() - t0), 0.0)
            body = prune_redundant(raw, time_limit=left) if prune else raw
            return JsrResult("halted", group[0].nu, group[0].nu, group[0].nu, group, body, raw,
                             alphas, restarts, _warnings(group) + extra, time.perf_counter() - t0)
        if isinstance(res, NotDominantEvidence) and restarts < max_restarts \
                and not math.isnan(res.nu):
            new = make_candidate(res.word, family)
            if new.nu > group[0].nu and not any(same_cycle(new.word, c.word) for c in group):
                restarts += 1
                group = [new]
                continue
        if isinstance(res, Budget):
            return JsrResult("budget", None, group[0].nu, res.nu_upper, group,
                             restarts=restarts, warnings=_warnings(group),
                             elapsed=time.perf_counter() - t0, detail=res.reason)
        return JsrResult("budget", None, group[0].nu, None, group, restarts=restarts,
                         warnings=_warnings(group), elapsed=time.perf_counter() - t0,
                         detail=getattr(res, "reason", "restart limit reached"))
