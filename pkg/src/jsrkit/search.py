"""Candidate products: words, cyclic normal forms and exhaustive search.

A candidate is a primitive word in cyclic normal form (the lexicographically
smallest rotation) together with ``nu = rho(product) ** (1/len)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, DegenerateLeading, EmptyWord
from .linalg import ArgumentClass, LeadingEigen, classify_argument, leading_eigenpair, word_product

TIE_RTOL = 1e-10
DEFAULT_WORD_CAP = 10**7


def parse_word(text) -> tuple:
    """``"1112"``, ``"1,1,1,2"`` or a sequence of ints -> tuple of letters."""
    if isinstance(text, str):
        text = text.strip()
        parts = text.replace(" ", ",").split(",") if "," in text or " " in text else list(text)
        word = tuple(int(p) for p in parts if p != "")
    else:
        word = tuple(int(s) for s in text)
    return word


def format_word(word) -> str:
    if all(s < 10 for s in word):
        return "".join(str(s) for s in word)
    return ",".join(str(s) for s in word)


def minimal_period(word) -> int:
    """Smallest ``p`` with ``word[i] == word[i+p]`` for all valid ``i`` (prefix function)."""
    n = len(word)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and word[i] != word[k]:
            k = fail[k - 1]
        if word[i] == word[k]:
            k += 1
        fail[i] = k
    return n - fail[-1]


def least_rotation(word) -> tuple:
    word = tuple(word)
    return min(word[i:] + word[:i] for i in range(len(word)))


@dataclass(frozen=True)
class NormalForm:
    word: tuple
    exponent: int = 1

    @property
    def primitive(self) -> bool:
        return self.exponent == 1

    def __str__(self):
        if self.primitive:
            return f"Primitive({format_word(self.word)})"
        return f"PowerOf({format_word(self.word)}, {self.exponent})"


def cyclic_primitive_normalize(word) -> NormalForm:
    """Primitive root of the word, rotated to its least form, and the exponent."""
    word = tuple(word)
    if not word:
        raise EmptyWord("empty word")
    n = len(word)
    p = minimal_period(word)
    if n % p:
        p = n
    return NormalForm(least_rotation(word[:p]), n // p)


def same_cycle(a, b) -> bool:
    """True when the two words are powers of cyclic rotations of a common word."""
    return cyclic_primitive_normalize(a).word == cyclic_primitive_normalize(b).word


def lyndon_words(m: int, max_len: int):
    """All Lyndon words over ``1..m`` of length ``<= max_len`` (Duval's generation order)."""
    w = [0]
    while w:
        yield tuple(s + 1 for s in w)
        k = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - k])
        while w and w[-1] == m - 1:
            w.pop()
        if w:
            w[-1] += 1


def count_lyndon_words(m: int, max_len: int) -> int:
    def mobius(n):
        res, k = 1, 2
        while k * k <= n:
            if n % k == 0:
                n //= k
                if n % k == 0:
                    return 0
                res = -res
            k += 1
        return -res if n > 1 else res

    total = 0
    for n in range(1, max_len + 1):
        total += sum(mobius(n // d) * m**d for d in range(1, n + 1) if n % d == 0) // n
    return total


@dataclass(frozen=True)
class CandidateProduct:
    word: tuple
    product: np.ndarray
    nu: float
    leading: Optional[LeadingEigen] = None
    argclass: Optional[ArgumentClass] = None

    @property
    def length(self) -> int:
        return len(self.word)

    def label(self) -> str:
        return format_word(self.word)


def nu_of_word(word, family) -> float:
    from .linalg import spectral_radius

    return spectral_radius(word_product(word, family)) ** (1.0 / len(word))


def make_candidate(word, family, qmax: int = 64, tol_arg: float = 1e-9) -> CandidateProduct:
    """Build the candidate record for a word (normalized to cyclic primitive form)."""
    nf = cyclic_primitive_normalize(word)
    P = word_product(nf.word, family)
    try:
        lead = leading_eigenpair(P, strict=False)
        rho = lead.modulus
    except DegenerateLeading:
        lead, rho = None, 0.0
    nu = rho ** (1.0 / len(nf.word))
    argc = None
    if lead is not None and not lead.is_real:
        argc = classify_argument(lead.phi, qmax, tol_arg)
    return CandidateProduct(nf.word, P, nu, lead, argc)


def default_max_len(m: int, dim: int) -> int:
    """Default search depth: 8 for pairs, shallower for large alphabets or dimensions."""
    if m <= 1:
        return 1
    if dim >= 200:
        return 4
    if m == 2:
        return 8
    n = 1
    while n < 16 and count_lyndon_words(m, n + 1) <= 500:
        n += 1
    return n


def enumerate_candidates(family, max_len: Optional[int] = None, top_k: int = 5,
                         word_cap: int = DEFAULT_WORD_CAP, qmax: int = 64,
                         tol_arg: float = 1e-9) -> list:
    """Top ``top_k`` candidates by ``nu`` over all Lyndon words up to ``max_len``.

    Candidates whose ``nu`` agree within ``TIE_RTOL`` (relative) are all kept,
    so ``top_k`` may be exceeded by a tie group. The result is sorted by
    decreasing ``nu``, ties by word order.
    """
    m = len(family)
    if max_len is None:
        max_len = default_max_len(m, family.dim)
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if count_lyndon_words(m, max_len) > word_cap:
        raise BudgetExceeded(f"more than {word_cap} words of length <= {max_len}")
    mats = family.matrices
    nonneg = family.is_nonnegative() if hasattr(family, "is_nonnegative") else False
    scored = []
    # prefix products are shared along Duval's order
    stack = []  # list of (word, product)
    for w in lyndon_words(m, max_len):
        while stack and stack[-1][0] != w[:len(stack[-1][0])]:
            stack.pop()
        start = stack[-1][1] if stack else None
        k0 = len(stack[-1][0]) if stack else 0
        P = start
        for i in range(k0, len(w)):
            P = np.array(mats[w[i] - 1]) if P is None else mats[w[i] - 1] @ P
            stack.append((w[:i + 1], P))
        rho = _rho(P, nonneg)
        scored.append((rho ** (1.0 / len(w)), w))
    scored.sort(key=lambda t: (-t[0], t[1]))
    if not scored:
        return []
    out = []
    i = 0
    while i < len(scored) and len(out) < top_k:
        nu0 = scored[i][0]
        j = i
        while j < len(scored) and scored[j][0] >= nu0 * (1 - TIE_RTOL):
            j += 1
        for nu, w in scored[i:j]:
            out.append(make_candidate(w, family, qmax, tol_arg))
        i = j
    return out


def _rho(P, nonneg):
    from .linalg import spectral_radius

    if nonneg and P.shape[0] > 200:
        from .positive import perron_root

        return perron_root(P)[0]
    return spectral_radius(P)


def top_group(candidates) -> list:
    """The leading tie group of a sorted candidate list."""
    if not candidates:
        return []
    nu0 = candidates[0].nu
    return [c for c in candidates if c.nu >= nu0 * (1 - TIE_RTOL)]


def normalize_family(family, nu: float):
    """Divide every matrix by ``nu``; the family records the factor."""
    if not nu > 0:
        raise ValueError("nu must be positive")
    return family.scaled(nu)


def jsr_bounds_bruteforce(family, n: int):
    """Classical bounds ``max nu(P) <= rho <= max ||P||_2^(1/n)`` over length-``n`` words."""
    import itertools

    lo, hi = 0.0, 0.0
    for w in itertools.product(range(1, len(family) + 1), repeat=n):
        P = word_product(w, family)
        hi = max(hi, np.linalg.norm(P, 2) ** (1.0 / n))
        lo = max(lo, float(np.max(np.abs(np.linalg.eigvals(P)))) ** (1.0 / n))
    return lo, hi


def ratio(a: float, b: float) -> float:
    return a / b if b else math.inf
