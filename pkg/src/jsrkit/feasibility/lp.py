"""Linear programming core.

Two interchangeable backends solve :class:`LpProblem`:

``"simplex"``
    dense two-phase revised simplex with Dantzig pricing, Bland's rule after
    stalling, and iterative refinement of the final basic solution.
``"highs"``
    the HiGHS solver shipped with SciPy. Default for the membership oracles
    because they issue thousands of LPs per run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
from scipy.optimize import linprog

from ..errors import NumericBreakdown

FEAS_TOL = 1e-9
OPT_TOL = 1e-10
DEFAULT_METHOD = "highs"
# membership decisions resolve differences of order 1e-8
_HIGHS_OPTIONS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


@dataclass
class LpProblem:
    """``c @ x -> max`` (or min) subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, bounds.

    ``bounds`` holds one ``(lo, hi)`` per variable with ``None`` for infinity;
    an empty list means every variable is nonnegative. Matrices may be dense
    arrays or SciPy sparse matrices.
    """

    c: np.ndarray
    sense: str = "max"
    A_ub: object = None
    b_ub: Optional[np.ndarray] = None
    A_eq: object = None
    b_eq: Optional[np.ndarray] = None
    bounds: list = field(default_factory=list)

    @property
    def n_vars(self) -> int:
        return len(self.c)

    def check(self):
        n = self.n_vars
        for A, b, name in ((self.A_ub, self.b_ub, "ub"), (self.A_eq, self.b_eq, "eq")):
            if A is None:
                continue
            if A.shape[1] != n or A.shape[0] != len(b):
                raise ValueError(f"inconsistent {name} block: {A.shape} vs n={n}, rows={len(b)}")
        if self.bounds and len(self.bounds) != n:
            raise ValueError("bounds must list one pair per variable")
        if self.sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min'")


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: float = float("nan")
    x: Optional[np.ndarray] = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def lp_solve(problem: LpProblem, method: str = DEFAULT_METHOD) -> LpResult:
    problem.check()
    if method == "highs":
        return _solve_highs(problem)
    if method == "simplex":
        return _solve_simplex(problem)
    raise ValueError(f"unknown LP method {method!r}")


def _solve_highs(p: LpProblem) -> LpResult:
    try:
        return _solve_highs_once(p, _HIGHS_OPTIONS)
    except NumericBreakdown:
        pass
    # numerical trouble at tight tolerances: the in-repo simplex, then HiGHS defaults
    try:
        return _solve_simplex(p)
    except NumericBreakdown:
        return _solve_highs_once(p, {})


def _solve_highs_once(p: LpProblem, options) -> LpResult:
    c = np.asarray(p.c, dtype=float)
    cmin = -c if p.sense == "max" else c
    bounds = p.bounds if p.bounds else [(0, None)] * len(c)
    res = linprog(cmin, A_ub=p.A_ub, b_ub=p.b_ub, A_eq=p.A_eq, b_eq=p.b_eq,
                  bounds=bounds, method="highs", options=options)
    if res.status == 0:
        val = float(c @ res.x)
        return LpResult("optimal", val, np.asarray(res.x))
    if res.status == 2:
        # HiGHS may report "infeasible or unbounded"; settle it with a zero objective
        feas = linprog(np.zeros_like(c), A_ub=p.A_ub, b_ub=p.b_ub, A_eq=p.A_eq,
                       b_eq=p.b_eq, bounds=bounds, method="highs", options=options)
        return LpResult("unbounded" if feas.status == 0 else "infeasible")
    if res.status == 3:
        return LpResult("unbounded")
    raise NumericBreakdown(f"HiGHS failed: {res.message}")


# ---------------------------------------------------------------------------
# revised simplex


def _dense(A, n):
    if A is None:
        return np.zeros((0, n))
    if sp.issparse(A):
        return A.toarray().astype(float)
    return np.asarray(A, dtype=float)


def _to_standard(p: LpProblem):
    """Rewrite as ``min cs @ y, As y = bs, y >= 0`` with ``x = T y + off``."""
    n = p.n_vars
    c = np.asarray(p.c, dtype=float)
    if p.sense == "max":
        c = -c
    bounds = p.bounds if p.bounds else [(0, None)] * n
    cols = []  # (orig var, coefficient)
    off = np.zeros(n)
    extra_rows = []  # (std col, upper bound)
    for j, (lo, hi) in enumerate(bounds):
        lo = -np.inf if lo is None else float(lo)
        hi = np.inf if hi is None else float(hi)
        if lo > hi:
            return None
        if np.isfinite(lo):
            off[j] = lo
            cols.append((j, 1.0))
            if np.isfinite(hi):
                extra_rows.append((len(cols) - 1, hi - lo))
        elif np.isfinite(hi):
            off[j] = hi
            cols.append((j, -1.0))
        else:
            cols.append((j, 1.0))
            cols.append((j, -1.0))
    ns = len(cols)
    T = np.zeros((n, ns))
    for k, (j, s) in enumerate(cols):
        T[j, k] = s
    Aub = _dense(p.A_ub, n)
    bub = np.zeros(0) if p.b_ub is None else np.asarray(p.b_ub, dtype=float)
    Aeq = _dense(p.A_eq, n)
    beq = np.zeros(0) if p.b_eq is None else np.asarray(p.b_eq, dtype=float)
    Aub_s = Aub @ T
    bub_s = bub - Aub @ off
    if extra_rows:
        R = np.zeros((len(extra_rows), ns))
        for r, (k, ub) in enumerate(extra_rows):
            R[r, k] = 1.0
        Aub_s = np.vstack([Aub_s, R])
        bub_s = np.concatenate([bub_s, [ub for _, ub in extra_rows]])
    m_ub, m_eq = Aub_s.shape[0], Aeq.shape[0]
    A = np.zeros((m_ub + m_eq, ns + m_ub))
    A[:m_ub, :ns] = Aub_s
    A[:m_ub, ns:] = np.eye(m_ub)
    A[m_ub:, :ns] = Aeq @ T
    b = np.concatenate([bub_s, beq - Aeq @ off])
    cs = np.concatenate([T.T @ c, np.zeros(m_ub)])
    const = float(c @ off)
    return A, b, cs, T, off, const, ns, m_ub


class _Simplex:
    """Revised simplex on ``min c@y, A y = b, y >= 0`` from a feasible basis."""

    def __init__(self, A, b, c, basis, allowed, max_iter):
        self.A, self.b, self.c = A, b, c
        self.basis = list(basis)
        self.allowed = allowed
        self.max_iter = max_iter

    def _factor(self):
        B = self.A[:, self.basis]
        try:
            lu = sla.lu_factor(B, check_finite=False)
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise NumericBreakdown(f"basis factorization failed: {exc}") from exc
        if np.min(np.abs(np.diag(lu[0]))) < 1e-13 * max(1.0, np.max(np.abs(B))):
            raise NumericBreakdown("singular basis")
        return lu

    def primal(self, lu):
        xb = sla.lu_solve(lu, self.b, check_finite=False)
        # one step of iterative refinement
        res = self.b - self.A[:, self.basis] @ xb
        return xb + sla.lu_solve(lu, res, check_finite=False)

    def run(self):
        m, n = self.A.shape
        stall = 0
        bland = False
        last_obj = np.inf
        for _ in range(self.max_iter):
            lu = self._factor()
            xb = self.primal(lu)
            cb = self.c[self.basis]
            y = sla.lu_solve(lu, cb, trans=1, check_finite=False)
            red = self.c - self.A.T @ y
            red[self.basis] = 0.0
            red[~self.allowed] = 0.0
            scale = max(1.0, np.max(np.abs(self.c)))
            neg = np.flatnonzero(red < -OPT_TOL * scale)
            if neg.size == 0:
                return "optimal", xb
            q = int(neg[0]) if bland else int(neg[np.argmin(red[neg])])
            dq = sla.lu_solve(lu, self.A[:, q], check_finite=False)
            pos = np.flatnonzero(dq > 1e-11 * max(1.0, np.max(np.abs(dq))))
            if pos.size == 0:
                return "unbounded", xb
            ratios = np.maximum(xb[pos], 0.0) / dq[pos]
            rmin = ratios.min()
            ties = pos[ratios <= rmin + 1e-12 * max(1.0, rmin)]
            if bland:
                r = int(min(ties, key=lambda i: self.basis[i]))
            else:
                r = int(ties[np.argmax(dq[ties])])
            self.basis[r] = q
            obj = float(cb @ xb)
            if obj >= last_obj - 1e-14 * max(1.0, abs(obj)):
                stall += 1
                if stall > 20:
                    bland = True
            else:
                stall = 0
            last_obj = obj
        raise NumericBreakdown("simplex iteration limit reached")


def _solve_simplex(p: LpProblem, max_iter: int = 50000) -> LpResult:
    std = _to_standard(p)
    if std is None:
        return LpResult("infeasible")
    A, b, cs, T, off, const, ns, m_ub = std
    m, n = A.shape
    sign = np.where(b < 0, -1.0, 1.0)
    A = A * sign[:, None]
    b = b * sign
    # phase I: artificials for rows whose slack cannot start basic;
    # row i is covered by its own slack or artificial
    art_rows = [i for i in range(m) if not (i < m_ub and sign[i] > 0)]
    n_art = len(art_rows)
    A1 = np.hstack([A, np.zeros((m, n_art))])
    row_basis = [ns + i for i in range(m)]
    for k, i in enumerate(art_rows):
        A1[i, n + k] = 1.0
        row_basis[i] = n + k
    c1 = np.concatenate([np.zeros(n), np.ones(n_art)])
    allowed = np.ones(n + n_art, dtype=bool)
    if n_art:
        s1 = _Simplex(A1, b, c1, row_basis, allowed, max_iter)
        status, xb = s1.run()
        infeas = float(c1[s1.basis] @ xb)
        if infeas > FEAS_TOL * max(1.0, np.max(np.abs(b))):
            return LpResult("infeasible")
        row_basis = s1.basis
        # drive artificials out of the basis
        keep_rows = np.ones(m, dtype=bool)
        for r in range(m):
            if row_basis[r] < n:
                continue
            lu = sla.lu_factor(A1[:, row_basis], check_finite=False)
            e = np.zeros(m)
            e[r] = 1.0
            rowinv = sla.lu_solve(lu, e, trans=1, check_finite=False)
            alpha = rowinv @ A1[:, :n]
            cand = [j for j in np.flatnonzero(np.abs(alpha) > 1e-9) if j not in row_basis]
            if cand:
                row_basis[r] = int(cand[0])
            else:
                keep_rows[r] = False
        if not keep_rows.all():
            rows = np.flatnonzero(keep_rows)
            A = A[rows]
            b = b[rows]
            row_basis = [row_basis[r] for r in rows]
        allowed = np.ones(n, dtype=bool)
    s2 = _Simplex(A, b, cs, row_basis, allowed, max_iter)
    status, xb = s2.run()
    if status == "unbounded":
        return LpResult("unbounded")
    y = np.zeros(n)
    y[s2.basis] = np.maximum(xb, 0.0)
    x = T @ y[:ns] + off
    c = np.asarray(p.c, dtype=float)
    return LpResult("optimal", float(c @ x), x)
