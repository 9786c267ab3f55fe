"""Desk-scale benchmarks on seeded random pairs."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .fixtures import random_pair
from .pipeline import certify_jsr


@dataclass
class Trial:
    dim: int
    index: int
    status: str
    words: list
    raw_vertices: int | None
    vertices: int | None
    iterations: int | None
    restarts: int
    seconds: float

    def to_json(self, timings: bool = True) -> dict:
        out = {"dim": self.dim, "index": self.index, "status": self.status,
               "words": self.words, "raw_vertices": self.raw_vertices,
               "vertices": self.vertices, "iterations": self.iterations,
               "restarts": self.restarts}
        if timings:
            out["seconds"] = self.seconds
        return out


@dataclass
class Row:
    dim: int
    trials: list = field(default_factory=list)

    @property
    def halted(self) -> int:
        return sum(t.status == "halted" for t in self.trials)

    def _median(self, attr):
        vals = [getattr(t, attr) for t in self.trials if t.status == "halted"]
        return statistics.median(vals) if vals else None

    def summary(self, timings: bool = True) -> dict:
        out = {"dim": self.dim, "trials": len(self.trials), "halted": self.halted,
               "median_vertices": self._median("vertices"),
               "median_raw_vertices": self._median("raw_vertices"),
               "median_iterations": self._median("iterations")}
        if timings:
            out["median_seconds"] = self._median("seconds")
        return out


def trial_rng(seed: int, dim: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, dim, index])


def run_bench(dims, trials: int = 20, normalization: str = "spec", nonnegative: bool = False,
              sparsity: float = 0.0, seed: int = 0, time_limit: float = 120.0,
              progress=None) -> list:
    """One :class:`Row` per dimension; trial ``i`` of dimension ``d`` draws from ``(seed, d, i)``."""
    rows = []
    for d in dims:
        row = Row(d)
        for i in range(trials):
            fam = random_pair(d, trial_rng(seed, d, i), normalization, nonnegative, sparsity)
            t = time.perf_counter()
            res = certify_jsr(fam, time_limit=time_limit, monotone=nonnegative, verify=False)
            dt = time.perf_counter() - t
            tr = Trial(d, i, res.status, [c.label() for c in res.candidates],
                       res.raw_body.n_generators if res.raw_body is not None else None,
                       _vertex_count(res.body) if res.body is not None else None,
                       res.body.iterations if res.body is not None else None,
                       res.restarts, dt)
            row.trials.append(tr)
            if progress is not None:
                progress(tr)
        rows.append(row)
    return rows


def _vertex_count(body) -> int:
    # a symmetric polytope with n generator pairs has 2n vertices
    return body.n_generators * (1 if body.kind == "MonotonePolytope" else 2) \
        if body.kind != "EllipseHull" else body.n_generators


def format_table(rows, nonnegative: bool = False, timings: bool = True) -> str:
    unit = "#V" if nonnegative else "#V (both signs)"
    head = ["d", "halted", f"median {unit}", "median raw", "median iter"]
    if timings:
        head.append("median time, s")
    lines = [head]
    for r in rows:
        s = r.summary(timings)
        cells = [str(s["dim"]), f"{s['halted']}/{s['trials']}", _fmt(s["median_vertices"]),
                 _fmt(s["median_raw_vertices"]), _fmt(s["median_iterations"])]
        if timings:
            cells.append(_fmt(s["median_seconds"], 2))
        lines.append(cells)
    widths = [max(len(line[i]) for line in lines) for i in range(len(head))]
    out = []
    for j, line in enumerate(lines):
        out.append("  ".join(c.rjust(w) for c, w in zip(line, widths)))
        if j == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out)


def _fmt(v, digits=1):
    if v is None:
        return "-"
    if float(v).is_integer():
        return str(int(v))
    return f"{v:.{digits}f}"
