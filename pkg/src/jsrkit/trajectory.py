"""Switching laws: growth classification, simulation and decay certificates."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InputError, NoDeadNodes
from .linalg import leading_eigenpair, word_product
from .feasibility.membership import ellipse_t0, generator_points
from .polytope import ELLIPSE, EXACT_SUPPORT_MAX_DIM, MONOTONE, REAL, InvariantBody, facet_planes
from .search import cyclic_primitive_normalize, format_word, parse_word
from .support import containment_ratio

EVENTUALLY_PERIODIC = "EventuallyPeriodic"
FINITE_SAMPLE = "FiniteSample"
FASTEST = "FastestGrowth"
DECAYS = "DecaysToZero"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SwitchingLaw:
    """``prefix`` followed by ``period`` repeated forever, or a finite sample.

    The period is kept in cyclic normal form; the rotation it needed is moved
    into the prefix so the index sequence is unchanged.
    """

    prefix: tuple = ()
    period: Optional[tuple] = None
    presentation: str = EVENTUALLY_PERIODIC
    sample: tuple = ()

    @classmethod
    def periodic(cls, prefix, period) -> "SwitchingLaw":
        prefix, period = tuple(prefix), tuple(period)
        if not period:
            raise InputError("an eventually periodic law needs a nonempty period")
        nf = cyclic_primitive_normalize(period)
        root = nf.word
        p = len(root)
        # period^inf == period[:r] + root^inf where period starts at rotation r of root
        r = next(i for i in range(p) if root[i:] + root[:i] == period[:p])
        head = root[r:] if r else ()
        return cls(prefix + head, root, EVENTUALLY_PERIODIC)

    @classmethod
    def finite(cls, sample) -> "SwitchingLaw":
        return cls((), None, FINITE_SAMPLE, tuple(sample))

    @classmethod
    def from_json(cls, obj) -> "SwitchingLaw":
        if "sample" in obj:
            return cls.finite(parse_word(obj["sample"]))
        if "period" not in obj:
            raise InputError("law JSON needs 'period' or 'sample'")
        return cls.periodic(parse_word(obj.get("prefix", ())), parse_word(obj["period"]))

    def to_json(self) -> dict:
        if self.presentation == FINITE_SAMPLE:
            return {"sample": list(self.sample)}
        return {"prefix": list(self.prefix), "period": list(self.period)}

    def letter(self, k: int) -> int:
        """Index of the matrix applied at step ``k`` (0-based)."""
        if self.presentation == FINITE_SAMPLE:
            return self.sample[k]
        if k < len(self.prefix):
            return self.prefix[k]
        return self.period[(k - len(self.prefix)) % len(self.period)]

    def letters(self, n: int) -> list:
        return [self.letter(k) for k in range(n)]


@dataclass
class GrowthVerdict:
    cls: str
    decay_rate: Optional[float] = None
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"class": self.cls, "decay_rate": self.decay_rate, "witness": self.witness}


def _words(certified):
    return [tuple(getattr(c, "word", c)) for c in certified]


def classify_law(law: SwitchingLaw, certified, mu: Optional[float] = None,
                 L: Optional[int] = None) -> GrowthVerdict:
    """Fastest growth exactly when the period is (a rotation of a power of) a dominant word."""
    words = [cyclic_primitive_normalize(w).word for w in _words(certified)]
    if not words:
        raise ValueError("at least one certified dominant product is required")
    if law.presentation == FINITE_SAMPLE:
        w = {"reason": "finite presentations cannot certify asymptotics"}
        if law.sample and cyclic_primitive_normalize(law.sample).word in words:
            nf = cyclic_primitive_normalize(law.sample)
            if _is_power_of_rotation(law.sample, nf.word):
                w["consistent_with"] = FASTEST
        return GrowthVerdict(UNKNOWN, None, w)
    period = law.period
    if period in words:
        return GrowthVerdict(FASTEST, None, {"period": format_word(period)})
    rate = None
    w = {"period": format_word(period)}
    if mu is not None and L is not None:
        rate = mu ** (1.0 / L)
        w.update(mu=mu, L=L)
    return GrowthVerdict(DECAYS, rate, w)


def _is_power_of_rotation(sample, root):
    n, p = len(sample), len(root)
    if n % p:
        return False
    rots = {root[i:] + root[:i] for i in range(p)}
    return tuple(sample[:p]) in rots and all(
        tuple(sample[i:i + p]) == tuple(sample[:p]) for i in range(0, n, p))


MAXIMAL = "MaximalGrowth"
TENDS_TO_ZERO = "TendsToZero"


def max_growth_trajectory(law: SwitchingLaw, x0, family, tol: float = 1e-10) -> str:
    """Does the trajectory from ``x0`` under a fastest-growth law grow at the top rate?

    It does unless the prefix image of ``x0`` is orthogonal to the leading
    eigenvector of the transposed period product (to both its real and
    imaginary parts in the complex case, an extension of the real statement).
    """
    if law.presentation != EVENTUALLY_PERIODIC:
        raise ValueError("needs an eventually periodic law")
    y = np.asarray(x0, dtype=float)
    for s in law.prefix:
        y = family.matrices[s - 1] @ y
    P = word_product(law.period, family)
    lead = leading_eigenpair(P.T)
    ny = np.linalg.norm(y)
    if ny == 0:
        return TENDS_TO_ZERO
    if lead.is_real:
        comp = abs(lead.vec @ y)
    else:
        comp = math.hypot(lead.re @ y, lead.im @ y)
    return TENDS_TO_ZERO if comp <= tol * ny else MAXIMAL


class GaugeEvaluator:
    """Fast Minkowski functional of a finished body."""

    def __init__(self, body: InvariantBody):
        self.body = body
        self._planes = None
        if body.kind == REAL and body.dim <= 3 and body.n_generators >= body.dim:
            try:
                self._planes = facet_planes(body)[:, :-1]
            except Exception:  # degenerate hull (flat body): fall back to the LP
                self._planes = None

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if self._planes is not None:
            return float(max(0.0, np.max(self._planes @ x)))
        if self.body.kind == MONOTONE:
            return self.body.gauge(np.abs(x))
        return self.body.gauge(x)


def simulate(family, law: SwitchingLaw, x0, k_steps: int, normalize: bool = True,
             body: Optional[InvariantBody] = None, nu: Optional[float] = None,
             every: int = 1) -> list:
    """Iterate ``x(k+1) = A(k) x(k)``; records ``(step, point, g_norm)`` every ``every`` steps.

    With ``normalize`` the matrices are divided by ``nu`` (by default the
    body's). The G-norm is reported when a body is supplied.
    """
    if k_steps < 0:
        raise ValueError("k_steps must be nonnegative")
    scale = 1.0
    if normalize:
        nu = nu if nu is not None else (body.nu if body is not None else None)
        if nu is None:
            raise ValueError("normalizing needs nu or a body")
        scale = 1.0 / nu
    gauge = GaugeEvaluator(body) if body is not None else None
    mats = [np.asarray(a) * scale for a in family.matrices]
    x = np.asarray(x0, dtype=float).copy()
    out = []
    for k in range(k_steps + 1):
        if k % every == 0 or k == k_steps:
            out.append((k, x.copy(), gauge(x) if gauge else None))
        if k == k_steps:
            break
        x = mats[law.letter(k) - 1] @ x
    return out


def decay_certificate(body: InvariantBody, facets: int = 64):
    """``(mu, L)``: the largest G-norm of a dead node against the final body, and the block length.

    Ellipse hulls above dimension three use the polygonal LP with ``facets``
    sides, which can only overestimate ``mu``; sampled support functions
    would underestimate it there.
    """
    dead = [n for n in body.nodes if not n.alive]
    if not dead:
        raise NoDeadNodes("the run produced no dead nodes")
    mu = 0.0
    for n in dead:
        if body.kind == REAL:
            g = body.gauge(n.x)
        elif body.kind == MONOTONE:
            g = body.gauge(n.x)
        elif body.dim <= EXACT_SUPPORT_MAX_DIM:
            g = containment_ratio(n.x, n.y, body.generators)
        else:
            t = ellipse_t0(n.x, n.y, generator_points(body.generators, facets), facets)
            g = 0.0 if t == math.inf else 1.0 / t
        mu = max(mu, g)
    L = max(n.level for n in dead) + max(len(r.cycle_word) for r in body.roots)
    return mu, L


def trajectory_csv(records) -> str:
    buf = io.StringIO()
    if not records:
        return ""
    d = len(records[0][1])
    buf.write(",".join(["step"] + [f"x{i + 1}" for i in range(d)] + ["g_norm"]) + "\n")
    for k, x, g in records:
        row = [str(k)] + [repr(float(t)) for t in x] + ["" if g is None else repr(float(g))]
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def random_law(m: int, rng, prefix_len: int = 3, max_period: int = 8) -> SwitchingLaw:
    prefix = tuple(int(t) for t in rng.integers(1, m + 1, size=prefix_len))
    p = int(rng.integers(1, max_period + 1))
    period = tuple(int(t) for t in rng.integers(1, m + 1, size=p))
    return SwitchingLaw.periodic(prefix, period)


_KINDS = (REAL, ELLIPSE, MONOTONE)
