"""Barabanov norms from the invariant body of the transpose family.

If ``G*`` is an invariant body of the transpose family, then
``f(x) = max over y in G* of <y, x>`` is an extremal norm for the family
itself: ``max_i f(A_i x) = rho f(x)``. For a polytope the maximum runs over its
vertices; for a hull of ellipses ``(a_i, b_i)`` it becomes
``max_i sqrt(<a_i, x>^2 + <b_i, x>^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import null_space, orth

from .errors import DimensionMismatch, NegativeInput
from .feasibility.membership import DEFAULT_DELTA
from .polytope import ELLIPSE, MONOTONE, REAL, InvariantBody

LINEAR = "PiecewiseLinear"
QUADRATIC = "PiecewiseQuadratic"
MONOTONE_LINEAR = "MonotoneLinear"

_RANK_RTOL = 1e-9
_ALGEBRA_MAX_DIM = 12
_PROBE_MAX_DIM = 400


def transpose_family(family):
    return family.transpose()


@dataclass
class BarabanovNorm:
    kind: str
    functionals: list  # vectors (linear kinds) or (a, b) pairs (quadratic kind)
    rho: float
    source_body: Optional[InvariantBody] = None
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.functionals:
            raise ValueError("a norm needs at least one functional")
        if self.kind == QUADRATIC:
            self._A = np.array([a for a, _ in self.functionals], dtype=float)
            self._B = np.array([np.zeros_like(a) if b is None else b
                                for a, b in self.functionals], dtype=float)
        else:
            self._A = np.array(self.functionals, dtype=float)
            self._B = None

    @property
    def dim(self) -> int:
        return self._A.shape[1]

    @property
    def n_functionals(self) -> int:
        return len(self.functionals)

    def spans(self) -> bool:
        """Positive on every nonzero point of the domain (the whole space or the orthant)."""
        if self.kind == MONOTONE_LINEAR:
            # a monotone body may have fewer than d vertices; it only needs
            # every coordinate direction to reach outside the origin
            return bool(np.all(self._A.max(axis=0) > 0))
        M = self._A if self._B is None else np.vstack([self._A, self._B])
        return np.linalg.matrix_rank(M, tol=_RANK_RTOL * max(np.abs(M).max(), 1e-300)) \
            == self.dim

    def __call__(self, x) -> float:
        return eval_norm(self, x)

    def evaluate_many(self, X) -> np.ndarray:
        """Norm of every row of ``X``."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if self.kind == QUADRATIC:
            return np.sqrt((X @ self._A.T) ** 2 + (X @ self._B.T) ** 2).max(axis=1)
        vals = (X @ self._A.T).max(axis=1)
        return np.maximum(vals, 0.0) if self.kind == MONOTONE_LINEAR else vals

    def to_json(self) -> dict:
        if self.kind == QUADRATIC:
            funcs = [{"a": [float(t) for t in a],
                      "b": [0.0] * len(a) if b is None else [float(t) for t in b]}
                     for a, b in self.functionals]
        else:
            funcs = [[float(t) for t in v] for v in self.functionals]
        return {"kind": self.kind, "dim": self.dim, "rho": float(self.rho),
                "functionals": funcs, "flags": dict(self.flags)}


def norm_from_json(obj) -> BarabanovNorm:
    kind = obj["kind"]
    if kind == QUADRATIC:
        funcs = [(np.array(f["a"], dtype=float), np.array(f["b"], dtype=float))
                 for f in obj["functionals"]]
    else:
        funcs = [np.array(f, dtype=float) for f in obj["functionals"]]
    return BarabanovNorm(kind, funcs, float(obj["rho"]), None, dict(obj.get("flags", {})))


def eval_norm(f: BarabanovNorm, x) -> float:
    x = np.asarray(x, dtype=float)
    if f.kind == MONOTONE_LINEAR and (x < 0).any():
        raise NegativeInput("the monotone norm is defined on the nonnegative orthant")
    return float(f.evaluate_many(x[None, :])[0])


def norm_from_body(body: InvariantBody, rho: float, flags: Optional[dict] = None) -> BarabanovNorm:
    """Wrap the generators of a dual invariant body as norm functionals."""
    flags = dict(flags or {})
    if body.kind == REAL:
        funcs = []
        for x, _ in body.generators:
            funcs.extend([np.array(x), -np.array(x)])
        kind = LINEAR
    elif body.kind == MONOTONE:
        funcs = [np.array(x) for x, _ in body.generators]
        kind = MONOTONE_LINEAR
    else:
        funcs = [(np.array(x), None if y is None else np.array(y)) for x, y in body.generators]
        kind = QUADRATIC
    flags.setdefault("monotone", kind == MONOTONE_LINEAR)
    return BarabanovNorm(kind, funcs, rho, body, flags)


@dataclass
class Built:
    norm: BarabanovNorm
    jsr: object  # pipeline result on the transpose family
    status: str = "built"


@dataclass
class Failed:
    reason: str
    witness: Optional[np.ndarray] = None
    jsr: object = None
    status: str = "failed"


def build_barabanov(family, delta=DEFAULT_DELTA, monotone=False, check_irreducible=True,
                    **pipeline_kw):
    """Barabanov norm of ``family`` from the invariant body of its transpose."""
    from .pipeline import certify_jsr
    from .positive import positive_irreducibility

    if check_irreducible:
        if monotone:
            pos = positive_irreducibility(family)
            if not pos.irreducible:
                return Failed(f"Reducible: {pos.describe()}")
        else:
            irr = irreducibility_check(family)
            if not irr.irreducible:
                return Failed("Reducible: the family has a common invariant subspace",
                              witness=irr.basis)
    res = certify_jsr(family.transpose(), delta=delta, monotone=monotone, **pipeline_kw)
    if not res.halted:
        return Failed(f"Budget: {res.status} ({res.detail})", jsr=res)
    flags = {
        "unique": True,
        "rational_mod_pi": False,
        "monotone": monotone,
        "multiple_dominant": len(res.candidates) > 1,
    }
    for c in res.candidates:
        if c.argclass is not None and c.argclass.is_rational:
            flags["rational_mod_pi"] = True
            flags["argument"] = c.argclass.describe()
    if flags["rational_mod_pi"] or flags["multiple_dominant"]:
        flags["unique"] = False
    f = norm_from_body(res.body, res.rho, flags)
    if not f.spans():
        return Failed("generators of the dual body do not span the space", jsr=res)
    return Built(f, res)


@dataclass
class Certificate:
    samples: int
    max_residual: float
    rho: float
    delta_used: float
    seed: int = 0

    def to_json(self) -> dict:
        return {"samples": self.samples, "max_residual": self.max_residual, "rho": self.rho,
                "delta_used": self.delta_used, "seed": self.seed}


def sample_sphere(d: int, n: int, seed: int, orthant: bool = False) -> np.ndarray:
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, d))
    if orthant:
        X = np.abs(X)
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def certify(f: BarabanovNorm, family, n_samples: int = 1000, seed: int = 0,
            delta: float = DEFAULT_DELTA) -> Certificate:
    """Largest relative defect of ``max_i f(A_i x) = rho f(x)`` over random unit vectors."""
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    X = sample_sphere(f.dim, n_samples, seed, orthant=f.kind == MONOTONE_LINEAR)
    fx = f.evaluate_many(X)
    best = np.full(n_samples, -np.inf)
    for A in family.matrices:
        best = np.maximum(best, f.evaluate_many(X @ np.asarray(A).T))
    rf = f.rho * fx
    res = np.abs(best - rf) / rf
    return Certificate(n_samples, float(res.max()), f.rho, delta, seed)


# ---------------------------------------------------------------------------
# polar geometry in the plane


def polar_2d(body: InvariantBody, samples: int = 720) -> np.ndarray:
    """Boundary of the polar body ``{y : <x, y> <= 1 for x in G}`` as an ordered point list.

    Polytopes give the exact polar polygon; ellipse hulls are sampled at
    ``samples`` angles through their support function.
    """
    if body.dim != 2:
        raise DimensionMismatch("polar_2d needs a planar body")
    if body.kind == REAL:
        from .polytope import facet_planes

        planes = facet_planes(body)
        pts = planes[:, :2]
        ang = np.arctan2(pts[:, 1], pts[:, 0])
        return pts[np.argsort(ang)]
    if body.kind == MONOTONE:
        raise ValueError("the polar of a monotone body is not a bounded planar body")
    th = 2.0 * np.pi * np.arange(samples) / samples
    U = np.column_stack([np.cos(th), np.sin(th)])
    from .support import hull_support

    h = hull_support(body.generators, U)
    return U / h[:, None]


def polygon_gauge(poly: np.ndarray, x) -> float:
    """Minkowski functional of a centrally symmetric convex polygon given by ordered vertices."""
    x = np.asarray(x, dtype=float)
    best = 0.0
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        nrm = np.array([q[1] - p[1], p[0] - q[0]])
        off = nrm @ p
        if off > 0:
            best = max(best, (nrm @ x) / off)
    return best


# ---------------------------------------------------------------------------
# irreducibility


@dataclass(frozen=True)
class Irreducibility:
    irreducible: bool
    basis: Optional[np.ndarray] = None
    algebra_dim: Optional[int] = None
    near_reducible: bool = False

    def describe(self) -> str:
        if self.irreducible:
            return "Irreducible"
        return f"CommonInvariantSubspace(dim={self.basis.shape[1]})"


def algebra_dimension(family, tol: float = _RANK_RTOL) -> int:
    """Dimension of the matrix algebra generated by the identity and the family."""
    mats = [np.asarray(a, dtype=float) for a in family.matrices]
    d = mats[0].shape[0]
    scale = max(1.0, max(np.linalg.norm(a) for a in mats))
    mats = [a / scale for a in mats]
    basis = np.zeros((0, d * d))
    queue = [np.eye(d)] + mats
    elems = []
    while queue:
        M = queue.pop(0)
        v = M.ravel()
        r = v - basis.T @ (basis @ v) if basis.size else v
        r = r - basis.T @ (basis @ r) if basis.size else r
        if np.linalg.norm(r) > tol * max(np.linalg.norm(v), 1e-300):
            basis = np.vstack([basis, r / np.linalg.norm(r)])
            elems.append(M)
            if len(basis) == d * d:
                break
            queue.extend(A @ M for A in mats)
    return len(basis)


def cyclic_subspace(family, x, tol: float = _RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of the smallest subspace containing ``x`` and invariant under the family."""
    mats = [np.asarray(a, dtype=float) for a in family.matrices]
    d = len(x)
    Q = np.zeros((d, 0))
    todo = [np.asarray(x, dtype=float)]
    while todo and Q.shape[1] < d:
        v = todo.pop()
        for _ in range(2):
            v = v - Q @ (Q.T @ v)
        n = np.linalg.norm(v)
        if n <= tol * max(1.0, np.abs(v).max() if v.size else 1.0) or n < 1e-12:
            continue
        v = v / n
        Q = np.column_stack([Q, v])
        todo.extend(A @ v for A in mats)
    return Q


def irreducibility_check(family, seed: int = 0) -> Irreducibility:
    """Search for a common invariant subspace.

    For small dimensions the algebra generated by the family is computed; its
    full dimension ``d^2`` proves irreducibility at once. Otherwise every
    invariant subspace contains an eigenvector of a generic element of the
    algebra, so the cyclic subspaces spanned from those eigenvectors (real
    and imaginary parts) and from the coordinate vectors are tested; a proper
    one is a witness. Without a witness the family is declared irreducible
    (this covers real-irreducible families such as a planar rotation, whose
    algebra is smaller than ``d^2``).
    """
    d = family.dim
    alg = algebra_dimension(family) if d <= _ALGEBRA_MAX_DIM else None
    if alg == d * d:
        return Irreducibility(True, None, alg)
    if d > _PROBE_MAX_DIM:
        return Irreducibility(True, None, alg, near_reducible=False)
    rng = np.random.default_rng(seed)
    mats = [np.asarray(a, dtype=float) for a in family.matrices]
    words = [np.eye(d)] + mats + [a @ b for a in mats for b in mats]
    probes = [np.eye(d)[i] for i in range(d)]
    for side in (False, True):
        ms = [m.T for m in words] if side else words
        B = sum(rng.standard_normal() * m for m in ms)
        _, V = np.linalg.eig(B)
        for j in range(V.shape[1]):
            for part in (V[:, j].real, V[:, j].imag):
                if np.linalg.norm(part) > 1e-8:
                    probes.append((side, part))
    fam_t = family.transpose()
    for p in probes:
        side, x = (False, p) if not isinstance(p, tuple) else p
        Q = cyclic_subspace(fam_t if side else family, x)
        if 0 < Q.shape[1] < d:
            # an invariant subspace of the transposes has an invariant orthogonal complement
            basis = null_space(Q.T) if side else Q
            return Irreducibility(False, orth(basis), alg)
    return Irreducibility(True, None, alg)


def invariance_defect(family, basis) -> float:
    """``max_i |(I - P) A_i Q|`` for the orthogonal projector ``P`` onto span(basis)."""
    Q = orth(np.asarray(basis, dtype=float))
    P = Q @ Q.T
    return max(float(np.linalg.norm((np.eye(len(P)) - P) @ A @ Q)) for A in family.matrices)


def iterated_identity_defect(f: BarabanovNorm, family, k: int, X) -> float:
    """Max relative defect of ``max_{|w| = k} f(A_w x) = rho^k f(x)`` over rows of ``X``."""
    import itertools

    X = np.atleast_2d(X)
    fx = f.evaluate_many(X)
    best = np.full(len(X), -np.inf)
    for w in itertools.product(range(len(family)), repeat=k):
        Y = X
        for s in w:
            Y = Y @ family.matrices[s].T
        best = np.maximum(best, f.evaluate_many(Y))
    return float(np.max(np.abs(best - f.rho**k * fx) / (f.rho**k * fx)))


def rho_from_norm(f: BarabanovNorm) -> float:
    return f.rho if math.isfinite(f.rho) else math.nan
