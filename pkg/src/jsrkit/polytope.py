"""Invariant polytope algorithm: roots, the cyclic tree and the invariant body.

The same engine drives three body kinds:

``RealPolytope``
    symmetric hull of vertices (real leading eigenvalue);
``EllipseHull``
    hull of centred ellipses and segments (complex leading eigenvalue, or a
    mix of real and complex roots in the multi-root variant);
``MonotonePolytope``
    downward-closed hull inside the orthant (nonnegative families).

Tree nodes are processed first in, first out; the children of a node are
ordered by matrix index. Each child is tested against the hull of every
generator accepted so far, including those accepted earlier in the same
iteration.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import CycleMismatch, DegenerateLeading, InputError
from .feasibility.lp import DEFAULT_METHOD
from .feasibility.membership import (
    DEFAULT_DELTA,
    DEFAULT_FACETS,
    ellipse_t0,
    generator_points,
    hull_t0,
    inscribed_points,
    monotone_t0,
)
from .linalg import canonical_pair, leading_eigenpair, spectral_radius, word_product
from .search import CandidateProduct, format_word, normalize_family, parse_word
from .support import containment_ratio

REAL = "RealPolytope"
ELLIPSE = "EllipseHull"
MONOTONE = "MonotonePolytope"

DEFAULT_MAX_ITER = 200
DEFAULT_MAX_NODES = 200_000
CLOSURE_RTOL = 1e-8
EVIDENCE_RTOL = 1e-9
EVIDENCE_MAX_DIM = 64
_PARALLEL_RTOL = 1e-10
_SEGMENT_RTOL = 1e-14
_BLOWUP = 1e8
# direction grids resolve support-function maxima reliably up to this dimension
EXACT_SUPPORT_MAX_DIM = 3


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("JSRKIT_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class RootSet:
    """Cycle of root elements ``V_1..V_n`` built from one candidate.

    Each element is a pair ``(x, y)``; ``y is None`` for a vertex. ``family``
    is the normalized family the cycle lives in.
    """

    elements: tuple
    cycle_word: tuple
    candidate: CandidateProduct
    family: object
    complex: bool = False
    monotone: bool = False
    nu: float = 1.0

    @property
    def n(self) -> int:
        return len(self.cycle_word)


@dataclass
class Node:
    x: np.ndarray
    y: Optional[np.ndarray]
    word: tuple
    root: int  # index into the list of roots (0-based) of the run
    root_index: int  # 1..n inside that root's cycle
    level: int
    alive: bool
    t0: float = math.nan

    @property
    def payload(self):
        return self.x if self.y is None else (self.x, self.y)


@dataclass
class InvariantBody:
    kind: str
    generators: list  # list of (x, y) pairs; y is None for vertices
    words: list  # (root, root_index, word) per generator
    roots: list  # RootSet per root of the run
    family: object  # normalized family
    nu: float
    alphas: tuple = (1.0,)
    iterations: int = 0
    delta: float = DEFAULT_DELTA
    facets: int = DEFAULT_FACETS
    nodes: list = field(default_factory=list, repr=False)
    mu_recorded: float = math.nan
    fingerprint: str = ""
    pruned: bool = False
    loaded_roots: Optional[list] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.family.dim

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    @property
    def root_elements(self) -> list:
        if self.loaded_roots is not None:
            return list(self.loaded_roots)
        out = []
        for r, (root, a) in enumerate(zip(self.roots, self.alphas)):
            for x, y in root.elements:
                out.append((a * x, None if y is None else a * y))
        return out

    def vertex_array(self) -> np.ndarray:
        return np.array([g[0] for g in self.generators])

    def gauge(self, v) -> float:
        """Minkowski functional of the body at ``v``."""
        v = np.asarray(v, dtype=float)
        if self.kind == REAL:
            t = hull_t0(v, self.vertex_array())
        elif self.kind == MONOTONE:
            t = monotone_t0(np.abs(v), self.vertex_array())
        else:
            return containment_ratio(v, None, self.generators)
        return 0.0 if t == math.inf else (math.inf if t <= 0 else 1.0 / t)

    def element_t0(self, x, y=None, exclude=None) -> float:
        """Exact-as-possible scaling ``t0`` of an element against the body."""
        gens = self.generators if exclude is None else [
            g for i, g in enumerate(self.generators) if i != exclude]
        if not gens:
            return 0.0
        if self.kind == REAL and y is None:
            return hull_t0(x, np.array([g[0] for g in gens]))
        if self.kind == MONOTONE:
            return monotone_t0(x, np.array([g[0] for g in gens]))
        r = containment_ratio(x, y, gens)
        return math.inf if r == 0 else 1.0 / r

    def to_json(self) -> dict:
        def vec(a):
            return [float(t) for t in a]

        gens = []
        for x, y in self.generators:
            gens.append(vec(x) if y is None else {"x": vec(x), "y": vec(y)})
        roots = []
        for x, y in self.root_elements:
            roots.append(vec(x) if y is None else {"x": vec(x), "y": vec(y)})
        return {
            "kind": self.kind,
            "dim": self.dim,
            "nu": float(self.nu),
            "generators": gens,
            "words": [{"root": r + 1, "root_index": j, "word": format_word(w) if w else ""}
                      for r, j, w in self.words],
            "roots": roots,
            "cycle_words": [format_word(r.cycle_word) for r in self.roots],
            "alphas": [float(a) for a in self.alphas],
            "mu": None if math.isnan(self.mu_recorded) else float(self.mu_recorded),
            "iterations": self.iterations,
            "delta": self.delta,
            "facets_M": self.facets,
            "pruned": self.pruned,
            "fingerprint": self.fingerprint,
            "family": self.family.to_json(),
        }


def body_from_json(obj) -> InvariantBody:
    """Rebuild a finished body from :meth:`InvariantBody.to_json` output.

    The tree and root bookkeeping are not stored, so the result supports
    gauges, geometry and rendering but not :func:`decay_certificate`.
    """
    from .family import family_from_json

    def elem(e):
        if isinstance(e, dict):
            return np.array(e["x"], dtype=float), np.array(e["y"], dtype=float)
        return np.array(e, dtype=float), None

    try:
        kind = obj["kind"]
        if kind not in (REAL, ELLIPSE, MONOTONE):
            raise ValueError(f"unknown body kind {kind!r}")
        gens = [elem(e) for e in obj["generators"]]
        roots = [elem(e) for e in obj.get("roots", [])]
        fam = family_from_json(obj["family"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed body JSON: {exc}") from exc
    words = [(w["root"] - 1, w["root_index"], parse_word(w["word"]) if w["word"] else ())
             for w in obj.get("words", [])]
    mu = obj.get("mu")
    return InvariantBody(kind, gens, words, [], fam, float(obj["nu"]),
                         tuple(obj.get("alphas", (1.0,))), int(obj.get("iterations", 0)),
                         float(obj.get("delta", DEFAULT_DELTA)),
                         int(obj.get("facets_M", DEFAULT_FACETS)), [],
                         math.nan if mu is None else float(mu), obj.get("fingerprint", ""),
                         bool(obj.get("pruned", False)), roots)


@dataclass
class Halted:
    body: InvariantBody
    status: str = "halted"


@dataclass
class NotDominantEvidence:
    word: tuple
    nu: float  # averaged spectral radius of ``word`` in the ORIGINAL family
    reason: str
    status: str = "not_dominant"


@dataclass
class Budget:
    reason: str
    iterations: int
    n_generators: int
    n_frontier: int
    nu_lower: float
    nu_upper: Optional[float]
    status: str = "budget"


# ---------------------------------------------------------------------------
# roots


def _canon_ellipse(x, y):
    x, y = canonical_pair(x, y)
    if np.linalg.norm(y) <= _SEGMENT_RTOL * np.linalg.norm(x):
        y = np.zeros_like(y)
    return x, y


def _quad(x, y):
    P = np.outer(x, x)
    if y is not None:
        P = P + np.outer(y, y)
    return P


def build_root(family, candidate: CandidateProduct, monotone: bool = False,
               nu: Optional[float] = None) -> RootSet:
    """Root cycle of ``candidate`` inside the family normalized by ``nu``.

    ``nu`` defaults to the candidate's own value; the multi-root variant passes
    one common value for all roots.
    """
    if not candidate.nu > 0:
        raise DegenerateLeading(f"candidate {format_word(candidate.word)} is nilpotent")
    nu = candidate.nu if nu is None else nu
    fam = normalize_family(family, nu)
    word = candidate.word
    P = word_product(word, fam)
    if monotone:
        from .positive import perron_vector

        v = perron_vector(P)
        elems = [(v, None)]
        cx = False
    else:
        lead = leading_eigenpair(P, strict=False)
        if not (lead.unique and lead.simple):
            raise DegenerateLeading(f"candidate {format_word(word)} has a degenerate leading "
                                    "eigenvalue", leading=lead)
        cx = not lead.is_real
        elems = [(lead.re, lead.im) if cx else (lead.vec, None)]
    for s in word[:-1]:
        x, y = elems[-1]
        A = fam.matrices[s - 1]
        if cx:
            elems.append(_canon_ellipse(A @ x, A @ y))
        else:
            elems.append((A @ x, None))
    # closure of the cycle: A_{s_n} V_n must reproduce V_1 (up to sign / phase)
    x, y = elems[-1]
    A = fam.matrices[word[-1] - 1]
    x1, y1 = elems[0]
    if cx:
        err = np.linalg.norm(_quad(A @ x, A @ y) - _quad(x1, y1)) / np.linalg.norm(_quad(x1, y1))
    else:
        img = A @ x
        err = min(np.linalg.norm(img - x1), np.linalg.norm(img + x1)) / np.linalg.norm(x1)
    if not err <= CLOSURE_RTOL:
        raise CycleMismatch(f"root cycle of {format_word(word)} does not close (rel err {err:.3g})")
    return RootSet(tuple(elems), tuple(word), candidate, fam, cx, monotone, nu)


# ---------------------------------------------------------------------------
# the engine


class _Generators:
    """Growing generator set with the matching membership oracle."""

    def __init__(self, kind, d, delta, facets, method):
        self.kind, self.d, self.delta, self.facets, self.method = kind, d, delta, facets, method
        self.items = []  # (x, y)
        self._V = np.zeros((0, d))
        self._pts = np.zeros((0, d))
        self._P = np.zeros((0, d * d))
        self._Pn = np.zeros(0)

    def __len__(self):
        return len(self.items)

    def add(self, x, y):
        self.items.append((x, y))
        self._V = np.vstack([self._V, x[None, :]])
        if self.kind == ELLIPSE:
            self._pts = np.vstack([self._pts, inscribed_points(x, y, self.facets)])
            P = _quad(x, y).ravel()
            self._P = np.vstack([self._P, P[None, :]])
            self._Pn = np.append(self._Pn, P @ P)

    def snapshot(self):
        s = _Generators.__new__(_Generators)
        s.__dict__.update(self.__dict__)
        s.items = list(self.items)
        return s

    def covered(self, x, y) -> Optional[float]:
        """``t0`` when the element is a scaled copy (or, monotone, a minorant) of a generator."""
        if not self.items:
            return None
        if self.kind == MONOTONE:
            V = self._V
            tol = 1e-12 * max(np.max(V), np.max(x), 1e-300)
            dom = np.all(x[None, :] <= V + tol, axis=1)
            if not dom.any():
                return None
            pos = x > tol
            if not pos.any():
                return math.inf
            return float(np.max(np.min(V[dom][:, pos] / x[pos], axis=1)))
        if self.kind == REAL:
            V = self._V
            nn = np.einsum("ij,ij->i", V, V)
            c = (V @ x) / nn
            res = np.linalg.norm(x[None, :] - c[:, None] * V, axis=1)
            par = res <= _PARALLEL_RTOL * np.linalg.norm(x)
            if not par.any():
                return None
            return float(1.0 / np.min(np.abs(c[par])))
        P = _quad(x, y).ravel()
        c = (self._P @ P) / self._Pn
        res = np.linalg.norm(P[None, :] - c[:, None] * self._P, axis=1)
        par = (res <= _PARALLEL_RTOL * np.linalg.norm(P)) & (c > 0)
        if not par.any():
            return None
        return float(1.0 / math.sqrt(np.min(c[par])))

    def test(self, x, y):
        """``(t0, covered)``; a covered element adds nothing to the hull."""
        cov = self.covered(x, y)
        if cov is not None and cov >= 1.0 - self.delta:
            return cov, True
        if self.kind == REAL:
            return hull_t0(x, self._V, self.method), False
        if self.kind == MONOTONE:
            return monotone_t0(x, self._V, self.method), False
        return ellipse_t0(x, y, self._pts, self.facets, stop_below=1.0 + self.delta,
                          method=self.method), False

    def t0(self, x, y) -> float:
        return self.test(x, y)[0]

    def gauge_upper(self, x, y) -> float:
        """Upper bound on the gauge of an element (used for budget bounds)."""
        if self.kind == ELLIPSE:
            t = ellipse_t0(x, y, self._pts, self.facets, method=self.method)
        else:
            t = self.t0(x, y)
        return 0.0 if t == math.inf else (math.inf if t <= 0 else 1.0 / t)


def _body_kind(roots, monotone):
    if monotone:
        return MONOTONE
    return ELLIPSE if any(r.complex for r in roots) else REAL


def _evidence(roots, node, fam, nu_ref):
    """Closed word through ``node`` whose averaged spectral radius beats the candidate."""
    root = roots[node.root]
    u = tuple(root.cycle_word[:node.root_index - 1]) + tuple(node.word)
    if not u:
        return None
    r = spectral_radius(word_product(u, fam)) ** (1.0 / len(u))
    if r > 1.0 + EVIDENCE_RTOL:
        return NotDominantEvidence(u, r * nu_ref,
                                   f"word {format_word(u)} has normalized nu {r:.12g} > 1")
    return None


def run_engine(roots, alphas=None, monotone=False, delta=DEFAULT_DELTA, facets=DEFAULT_FACETS,
               max_iter=DEFAULT_MAX_ITER, max_nodes=DEFAULT_MAX_NODES, time_limit=None,
               method=DEFAULT_METHOD, check_evidence=True, threads=None, fingerprint=""):
    """Iterate the cyclic tree grown from ``roots`` until no alive leaves remain.

    All roots must share one normalized family. ``alphas`` scale the root
    elements of each root (the multi-root variant); ``None`` means all ones.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    fam = roots[0].family
    nu = roots[0].nu
    alphas = tuple(1.0 for _ in roots) if alphas is None else tuple(float(a) for a in alphas)
    kind = _body_kind(roots, monotone)
    d = fam.dim
    mats = fam.matrices
    m = len(mats)
    threads = thread_count() if threads is None else threads
    t_start = time.perf_counter()
    gens = _Generators(kind, d, delta, facets, method)
    nodes = []
    gen_nodes = []
    frontier = []
    for r, (root, a) in enumerate(zip(roots, alphas)):
        for j, (x, y) in enumerate(root.elements, start=1):
            if kind == ELLIPSE and y is None:
                y = np.zeros(d)
            node = Node(a * x, None if y is None else a * y, (), r, j, 0, True, math.nan)
            nodes.append(node)
            gens.add(node.x, node.y)
            gen_nodes.append(len(nodes) - 1)
            frontier.append(len(nodes) - 1)

    mu_rec = 0.0
    k = 0

    def budget(reason, timed_out=False):
        # after a time-out the bound would cost time the caller no longer has
        upper = None if timed_out else _budget_upper(gens, frontier, nodes, mats, nu)
        return Budget(reason, k, len(gens), len(frontier), nu, upper)

    while frontier:
        if k >= max_iter:
            return budget(f"max_iter={max_iter} reached")
        k += 1
        children = []
        for nid in frontier:
            parent = nodes[nid]
            excl = None
            if k == 1:
                excl = roots[parent.root].cycle_word[parent.root_index - 1] - 1
            for i in range(m):
                if i == excl:
                    continue
                A = mats[i]
                if parent.y is None:
                    cx, cy = A @ parent.x, None
                else:
                    cx, cy = _canon_ellipse(A @ parent.x, A @ parent.y)
                children.append((parent, i + 1, cx, cy))
        screened = None
        if threads > 1 and len(children) > 1:
            snap = gens.snapshot()
            with ThreadPoolExecutor(max_workers=threads) as pool:
                screened = list(pool.map(lambda c: snap.test(c[2], c[3]), children))
            n_snap = len(snap)
        new_frontier = []
        for idx, (parent, letter, cx, cy) in enumerate(children):
            if screened is not None and (screened[idx][1] or screened[idx][0] > 1.0 + delta
                                         or len(gens) == n_snap):
                t0, covered = screened[idx]
            else:
                t0, covered = gens.test(cx, cy)
            # a scaled copy of a generator spawns a subtree covered by that generator's
            alive = not (covered or t0 > 1.0 + delta)
            node = Node(cx, cy, parent.word + (letter,), parent.root, parent.root_index,
                        k, alive, t0)
            nodes.append(node)
            nid = len(nodes) - 1
            if alive:
                if not np.all(np.isfinite(cx)) or np.linalg.norm(cx) > _BLOWUP:
                    return NotDominantEvidence(node.word, math.nan, "unbounded growth of a node")
                if check_evidence and d <= EVIDENCE_MAX_DIM:
                    ev = _evidence(roots, node, fam, nu)
                    if ev is not None:
                        return ev
                gens.add(cx, cy)
                gen_nodes.append(nid)
                new_frontier.append(nid)
            else:
                mu_rec = max(mu_rec, 0.0 if t0 == math.inf else 1.0 / t0)
            if len(nodes) >= max_nodes:
                frontier = new_frontier
                return budget(f"max_nodes={max_nodes} reached")
            if time_limit is not None and time.perf_counter() - t_start > time_limit:
                frontier = new_frontier
                return budget(f"time_limit={time_limit}s reached", timed_out=True)
        frontier = new_frontier

    body = InvariantBody(
        kind=kind,
        generators=[(nodes[i].x, nodes[i].y) for i in gen_nodes],
        words=[(nodes[i].root, nodes[i].root_index, nodes[i].word) for i in gen_nodes],
        roots=list(roots), family=fam, nu=nu, alphas=alphas, iterations=k, delta=delta,
        facets=facets, nodes=nodes, mu_recorded=mu_rec if any(not n.alive for n in nodes)
        else math.nan, fingerprint=fingerprint)
    return Halted(body)


def _budget_upper(gens, frontier, nodes, mats, nu, cap=500):
    """``nu * max(1, max gauge of the frontier's children)``; ``None`` if more than ``cap`` LPs."""
    per_child = gens.facets if gens.kind == ELLIPSE else 1
    if len(frontier) * len(mats) * per_child > cap:
        return None
    g = 1.0
    for nid in frontier:
        node = nodes[nid]
        for A in mats:
            cy = None if node.y is None else A @ node.y
            g = max(g, gens.gauge_upper(A @ node.x, cy))
    return nu * g if math.isfinite(g) else None


def run_algorithm1(family, candidate: CandidateProduct, delta=DEFAULT_DELTA,
                   facets=DEFAULT_FACETS, max_iter=DEFAULT_MAX_ITER, max_nodes=DEFAULT_MAX_NODES,
                   time_limit=None, method=DEFAULT_METHOD, monotone=False, verify="auto",
                   check_evidence=True):
    """Single-candidate run: ``Halted``, ``NotDominantEvidence`` or ``Budget``."""
    root = build_root(family, candidate, monotone=monotone)
    res = run_engine([root], None, monotone, delta, facets, max_iter, max_nodes, time_limit,
                     method, check_evidence, fingerprint=family.fingerprint())
    if isinstance(res, Halted) and _want_verify(verify, res.body):
        verify_invariance(res.body, raise_on_failure=True)
    return res


def _want_verify(verify, body):
    if verify == "auto":
        return body.n_generators * len(body.family) <= 400
    return bool(verify)


# ---------------------------------------------------------------------------
# a posteriori checks and pruning


@dataclass
class InvarianceReport:
    min_image_t0: float
    max_root_t0: float
    invariant: bool
    roots_on_boundary: bool

    @property
    def ok(self) -> bool:
        return self.invariant and self.roots_on_boundary


def verify_invariance(body: InvariantBody, raise_on_failure: bool = False) -> InvarianceReport:
    """Every one-step image of a generator lies in the body; every root lies on its boundary."""
    tol = 10 * body.delta
    worst = math.inf
    for x, y in body.generators:
        for A in body.family.matrices:
            ix, iy = A @ x, None if y is None else A @ y
            covered = _exact_cover(body, ix, iy)
            t = covered if covered is not None else body.element_t0(ix, iy)
            worst = min(worst, t)
    root_max = 0.0
    for x, y in body.root_elements:
        root_max = max(root_max, body.element_t0(x, y))
    invariant = worst >= 1.0 - tol
    if raise_on_failure and not invariant:
        from .errors import NumericBreakdown

        raise NumericBreakdown(f"invariance check failed: min image t0 {worst:.3g}")
    return InvarianceReport(worst, root_max, invariant, root_max <= 1.0 + tol)


def roots_on_boundary(body: InvariantBody) -> bool:
    """No root element is strictly interior (a balanced multi-root body)."""
    tol = 10 * body.delta
    return all(body.element_t0(x, y) <= 1.0 + tol for x, y in body.root_elements)


def _exact_cover(body, x, y):
    g = _Generators(body.kind, body.dim, body.delta, body.facets, DEFAULT_METHOD)
    for gx, gy in body.generators:
        g.add(gx, gy if gy is not None or body.kind != ELLIPSE else np.zeros(body.dim))
    if body.kind == ELLIPSE and y is None:
        y = np.zeros(body.dim)
    c = g.covered(x, y)
    return c if c is not None and c >= 1.0 else None


def prune_redundant(body: InvariantBody, delta: Optional[float] = None,
                    time_limit: Optional[float] = None) -> InvariantBody:
    """Drop every generator that lies in the hull of the remaining ones.

    Generators are visited newest first, so root elements are kept when a
    later node duplicates them. Monotone bodies are first reduced to their
    entrywise-maximal vertices. Ellipse hulls use exact support functions up to
    dimension three and the conservative polygonal LP above it. Past
    ``time_limit`` seconds the remaining generators are kept as they are,
    which leaves a valid (only less reduced) body.
    """
    delta = body.delta if delta is None else delta
    deadline = None if time_limit is None else time.perf_counter() + time_limit
    keep = list(range(body.n_generators))
    if body.kind == MONOTONE:
        keep = _pareto(body, keep)
    for i in reversed(list(keep)):
        if deadline is not None and time.perf_counter() > deadline:
            break
        others = [j for j in keep if j != i]
        if not others:
            continue
        x, y = body.generators[i]
        sub = [body.generators[j] for j in others]
        if body.kind == REAL:
            t = hull_t0(x, np.array([g[0] for g in sub]))
        elif body.kind == MONOTONE:
            t = monotone_t0(x, np.array([g[0] for g in sub]))
        elif body.dim <= EXACT_SUPPORT_MAX_DIM:
            r = containment_ratio(x, y, sub)
            t = math.inf if r == 0 else 1.0 / r
        else:
            # sampled support functions can only underestimate the ratio in
            # higher dimension; the polygonal LP never overestimates t
            t = ellipse_t0(x, y, generator_points(sub, body.facets), body.facets,
                           stop_below=1.0 - 10 * delta)
        if t >= 1.0 - 10 * delta:
            keep.remove(i)
    return InvariantBody(
        kind=body.kind, generators=[body.generators[i] for i in keep],
        words=[body.words[i] for i in keep], roots=body.roots, family=body.family, nu=body.nu,
        alphas=body.alphas, iterations=body.iterations, delta=body.delta, facets=body.facets,
        nodes=body.nodes, mu_recorded=body.mu_recorded, fingerprint=body.fingerprint,
        pruned=True)


def _pareto(body, idx):
    V = np.array([body.generators[i][0] for i in idx])
    tol = 1e-12 * max(float(V.max()), 1e-300)
    keep = []
    for a, i in enumerate(idx):
        dominated = False
        for b, j in enumerate(idx):
            if a == b:
                continue
            if np.all(V[a] <= V[b] + tol) and (np.any(V[a] < V[b] - tol) or b > a):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return keep


# ---------------------------------------------------------------------------
# geometry of real bodies


def symmetric_points(body: InvariantBody) -> np.ndarray:
    V = body.vertex_array()
    return np.vstack([V, -V])


def facet_planes(body: InvariantBody, decimals: int = 9) -> np.ndarray:
    """Distinct facet planes ``(n, b)`` with ``n.x <= b`` of the symmetric polytope."""
    from scipy.spatial import ConvexHull

    if body.kind != REAL:
        raise ValueError("facets are defined for real polytopes only")
    hull = ConvexHull(symmetric_points(body))
    eq = hull.equations  # n.x + c <= 0
    n = eq[:, :-1]
    b = -eq[:, -1]
    planes = np.column_stack([n / b[:, None], np.ones(len(b))])
    _, first = np.unique(np.round(planes[:, :-1], decimals), axis=0, return_index=True)
    return planes[np.sort(first)]


def facet_count(body: InvariantBody) -> int:
    return len(facet_planes(body))


def polytope_vertex_count(body: InvariantBody) -> int:
    """Number of extreme points of the symmetric hull (both signs)."""
    from scipy.spatial import ConvexHull

    return len(ConvexHull(symmetric_points(body)).vertices)
