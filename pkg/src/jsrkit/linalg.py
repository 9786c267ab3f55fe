"""Dense linear algebra: products, spectral radius, leading eigenpairs.

Eigenvalues come from LAPACK (Hessenberg reduction followed by the shifted QR
iteration), which is what every operation here relies on. Words are tuples of
1-based letters; ``(s1, ..., sk)`` stands for the product ``A_sk ... A_s1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateLeading, EmptyWord, NonConvergence

DEFAULT_TOL = 1e-10
DEFAULT_TOL_GAP = 1e-9


def word_product(word, family) -> np.ndarray:
    """Return ``A_{s_k} ... A_{s_1}`` for the word ``(s_1, ..., s_k)``."""
    word = tuple(word)
    if not word:
        raise EmptyWord("cannot form the product of an empty word")
    mats = family.matrices if hasattr(family, "matrices") else family
    m = len(mats)
    if any(not (1 <= s <= m) for s in word):
        raise ValueError(f"word {word} has letters outside 1..{m}")
    out = np.array(mats[word[0] - 1], dtype=float)
    for s in word[1:]:
        out = mats[s - 1] @ out
    return out


def apply_word(word, family, x) -> np.ndarray:
    """Apply the word to a vector (or to the columns of a matrix) letter by letter."""
    mats = family.matrices if hasattr(family, "matrices") else family
    y = np.asarray(x, dtype=float)
    for s in word:
        y = mats[s - 1] @ y
    return y


def _eigvals(a):
    a = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise NonConvergence("matrix has non-finite entries")
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc


def spectral_radius(a, tol: float = DEFAULT_TOL) -> float:
    """Largest eigenvalue modulus of a square matrix."""
    a = np.asarray(a, dtype=float)
    if a.shape == (1, 1):
        return abs(float(a[0, 0]))
    return float(np.max(np.abs(_eigvals(a))))


@dataclass(frozen=True)
class LeadingEigen:
    """Leading eigenvalue of a real matrix and its eigenvector.

    For ``kind == "real"`` the eigenvalue is ``sign * modulus`` with eigenvector
    ``vec``. For ``kind == "complex"`` it is ``modulus * exp(i*phi)`` with
    ``phi`` in (0, pi) and eigenvector ``re + i*im``.
    """

    modulus: float
    kind: str
    sign: int = 1
    vec: Optional[np.ndarray] = None
    phi: float = 0.0
    re: Optional[np.ndarray] = None
    im: Optional[np.ndarray] = None
    simple: bool = True
    unique: bool = True
    gap: float = 0.0

    @property
    def is_real(self) -> bool:
        return self.kind == "real"

    @property
    def eigenvalue(self) -> complex:
        if self.is_real:
            return complex(self.sign * self.modulus)
        return self.modulus * complex(math.cos(self.phi), math.sin(self.phi))

    @property
    def eigenvector(self) -> np.ndarray:
        if self.is_real:
            return self.vec.astype(complex)
        return self.re + 1j * self.im

    def residual(self, a) -> float:
        v = self.eigenvector
        return float(np.linalg.norm(np.asarray(a) @ v - self.eigenvalue * v))


def _first_nonzero_positive(x, scale):
    nz = np.flatnonzero(np.abs(x) > 1e-12 * scale)
    if nz.size and x[nz[0]] < 0:
        return -1.0
    return 1.0


def canonical_pair(x, y):
    """Rotate the phase of ``x + i*y`` so that ``<x,y> = 0`` and ``|x| >= |y|``.

    The ellipse ``{x cos t + y sin t}`` is unchanged. Sign convention: the first
    non-negligible coordinate of ``x`` is positive.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a = x @ x - y @ y
    b = x @ y
    two_theta = math.atan2(-2.0 * b, a) if (a != 0.0 or b != 0.0) else 0.0
    c, s = math.cos(two_theta / 2), math.sin(two_theta / 2)
    x2 = c * x - s * y
    y2 = s * x + c * y
    scale = max(np.max(np.abs(x2)), 1e-300)
    sgn = _first_nonzero_positive(x2, scale)
    return sgn * x2, sgn * y2


def leading_eigenpair(a, tol: float = DEFAULT_TOL, tol_gap: float = DEFAULT_TOL_GAP,
                      strict: bool = True) -> LeadingEigen:
    """Leading eigenpair with uniqueness and simplicity diagnosis.

    ``unique`` means every other eigenvalue (apart from the conjugate of a
    complex leading one) is strictly smaller in modulus, by more than
    ``max(tol_gap, 1e-10*|lambda|)``. ``simple`` means algebraic and geometric
    multiplicity one. With ``strict`` a failure of either raises
    :class:`DegenerateLeading` carrying the computed record.
    """
    a = np.asarray(a, dtype=float)
    d = a.shape[0]
    try:
        w, vecs = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc
    mods = np.abs(w)
    order = np.argsort(-mods, kind="stable")
    lam = w[order[0]]
    r = float(mods[order[0]])
    if r == 0.0:
        raise DegenerateLeading("spectral radius is zero")
    norm_a = max(np.linalg.norm(a, 2), 1e-300)
    is_complex = abs(lam.imag) > max(tol, 1e-9) * r

    if is_complex:
        # pick the member of the conjugate pair with positive imaginary part
        cands = [i for i in order[:2] if w[i].imag > 0]
        idx = cands[0] if cands else order[0]
        lam = w[idx]
        others = [i for i in order if i != idx and not (abs(w[i] - np.conj(lam)) <= 1e-6 * r
                                                        and w[i].imag < 0)]
    else:
        idx = order[0]
        lam = complex(lam.real, 0.0)
        others = [i for i in order if i != idx]
    second = float(max((mods[i] for i in others), default=0.0))
    gap = r - second
    unique = gap > max(tol_gap, 1e-10 * r)

    # algebraic multiplicity: no other eigenvalue clustered at lambda
    cluster = [i for i in others if abs(w[i] - lam) <= 1e-6 * r]
    shifted = a - lam * np.eye(d) if is_complex else a - lam.real * np.eye(d)
    sv = np.linalg.svd(shifted, compute_uv=False)
    geo_simple = d < 2 or sv[-2] > 1e-9 * norm_a
    simple = not cluster and geo_simple

    v = vecs[:, idx]
    if is_complex:
        x, y = canonical_pair(v.real, v.imag)
        nrm = math.sqrt(x @ x + y @ y)
        x, y = x / nrm, y / nrm
        phi = math.atan2(lam.imag, lam.real)
        # canonical_pair multiplies v by a unimodular scalar, so it stays an eigenvector
        rec = LeadingEigen(modulus=r, kind="complex", phi=phi, re=x, im=y,
                           simple=simple, unique=unique, gap=gap)
    else:
        vr = v.real if np.linalg.norm(v.real) >= np.linalg.norm(v.imag) else v.imag
        vr = vr / np.linalg.norm(vr)
        vr = vr * _first_nonzero_positive(vr, np.max(np.abs(vr)))
        rec = LeadingEigen(modulus=r, kind="real", sign=1 if lam.real >= 0 else -1, vec=vr,
                           simple=simple, unique=unique, gap=gap)
    if strict and not (unique and simple):
        raise DegenerateLeading(
            f"leading eigenvalue {lam:.6g} is not unique and simple "
            f"(gap={gap:.3g}, simple={simple})", leading=rec)
    return rec


@dataclass(frozen=True)
class ArgumentClass:
    """Resolution-bounded rationality class of ``phi / pi``."""

    kind: str  # "rational" or "irrational"
    p: int = 0
    q: int = 0
    qmax: int = 64
    tol_arg: float = 1e-9

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def describe(self) -> str:
        if self.is_rational:
            return f"RationalModPi({self.p},{self.q})"
        return f"IrrationalAtResolution({self.qmax})"

    def to_json(self) -> dict:
        out = {"kind": self.describe(), "qmax": self.qmax, "tol_arg": self.tol_arg}
        if self.is_rational:
            out.update(p=self.p, q=self.q)
        return out


def classify_argument(phi: float, qmax: int = 64, tol_arg: float = 1e-9) -> ArgumentClass:
    """Decide whether ``phi/pi`` is rational with denominator at most ``qmax``.

    Scans denominators in increasing order, so the returned fraction is the one
    with the smallest denominator within ``tol_arg``; this makes the result
    symmetric under ``phi -> pi - phi``.
    """
    x = phi / math.pi
    for q in range(1, qmax + 1):
        p = round(x * q)
        if abs(x - p / q) <= tol_arg:
            return ArgumentClass("rational", p=int(p), q=q, qmax=qmax, tol_arg=tol_arg)
    return ArgumentClass("irrational", qmax=qmax, tol_arg=tol_arg)
