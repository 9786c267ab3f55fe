"""Reference families used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

import math

import numpy as np

from .family import MatrixFamily


def ex1() -> MatrixFamily:
    """Planar pair with dominant product ``A1^3 A2`` (word 1112)."""
    return MatrixFamily(([[2, -2], [1, 2]], [[1, 2], [-1, -3]]))


def ex2() -> MatrixFamily:
    """3-D pair with dominant product ``A1^2 A2`` (word 112)."""
    return MatrixFamily((
        [[1, 2, 1], [-1, 3, 2], [2, -2, 3]],
        [[-1, 0, 3], [0, -1, -2], [-3, 2, 1]],
    ))


def _rot90():
    return [[0, 1], [-1, 0]]


def ex3() -> MatrixFamily:
    """Rotation by a right angle plus a contraction; complex leading eigenvalue."""
    return MatrixFamily((_rot90(), [[0.890, 0.646], [-0.129, -0.178]]))


def ex4() -> MatrixFamily:
    return MatrixFamily((_rot90(), [[0.340, 1.046], [-0.523, 0.170]]))


def ex5() -> MatrixFamily:
    return MatrixFamily((
        [[-4436, -3993, 887], [3045, -257, -359], [2416, 1895, 1338]],
        [[2598, 2948, 682], [-1424, -4331, 2691], [821, -1390, -388]],
    ))


def ex6_vector(tau: float = 0.05) -> np.ndarray:
    return np.array([tau, 1.0 - 4.0 * tau * tau, tau, tau])


def ex6(tau: float = 0.05) -> MatrixFamily:
    """Block rotation by 2pi/3 with two contracting coordinates, and ``b b^T``."""
    c, s = -0.5, math.sqrt(3.0) / 2.0
    A1 = np.zeros((4, 4))
    A1[:2, :2] = [[c, -s], [s, c]]
    A1[2, 2] = 0.5
    A1[3, 3] = 0.25
    b = ex6_vector(tau)
    return MatrixFamily((A1, np.outer(b, b)))


def ex6_bound(tau: float = 0.05) -> float:
    """``|b|^2 = (1 - 4 tau^2)^2 + 3 tau^2``."""
    return (1.0 - 4.0 * tau * tau) ** 2 + 3.0 * tau * tau


EXPECTED_WORDS = {
    "ex1": (1, 1, 1, 2),
    "ex2": (1, 1, 2),
    "ex3": (1,),
    "ex4": (1,),
    "ex5": (1,),
    "ex6": (1,),
}

FIXTURES = {"ex1": ex1, "ex2": ex2, "ex3": ex3, "ex4": ex4, "ex5": ex5, "ex6": ex6}


def random_pair(d: int, rng, normalization: str = "spec", nonnegative: bool = False,
                sparsity: float = 0.0) -> MatrixFamily:
    """Seeded random pair with standard normal entries.

    ``normalization="norm"`` equalizes spectral norms, ``"spec"`` equalizes
    spectral radii. In nonnegative mode entries are ``|N(0,1)|`` and each is
    zeroed with probability ``sparsity``.
    """
    mats = []
    for _ in range(2):
        a = rng.standard_normal((d, d))
        if nonnegative:
            a = np.abs(a)
            if sparsity > 0:
                a = a * (rng.random((d, d)) >= sparsity)
        mats.append(a)
    if normalization == "norm":
        mats = [a / np.linalg.norm(a, 2) for a in mats]
    elif normalization == "spec":
        from .linalg import spectral_radius

        if nonnegative and d > 200:
            from .positive import perron_root

            mats = [a / perron_root(a)[0] for a in mats]
        else:
            mats = [a / spectral_radius(a) for a in mats]
    else:
        raise ValueError("normalization must be 'norm' or 'spec'")
    return MatrixFamily(tuple(mats), nonnegative=nonnegative)
