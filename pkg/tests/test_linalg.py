import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jsrkit.errors import DegenerateLeading, EmptyWord
from jsrkit.family import MatrixFamily
from jsrkit.linalg import (
    canonical_pair,
    classify_argument,
    leading_eigenpair,
    spectral_radius,
    word_product,
)
from oracles import continued_fraction_class


def test_word_product_order():
    A = np.array([[1.0, 1.0], [0.0, 1.0]])
    B = np.array([[0.0, 1.0], [1.0, 0.0]])
    fam = MatrixFamily((A, B))
    # (1, 2) means A2 A1: A1 acts first
    assert np.allclose(word_product((1, 2), fam), B @ A)


def test_empty_word_rejected():
    with pytest.raises(EmptyWord):
        word_product((), MatrixFamily((np.eye(2),)))


def test_real_leading_pair():
    a = np.array([[3.0, 1.0], [0.0, 1.0]])
    rec = leading_eigenpair(a)
    assert rec.is_real and rec.modulus == pytest.approx(3.0)
    assert rec.residual(a) < 1e-12
    assert rec.vec[np.argmax(np.abs(rec.vec) > 1e-12)] > 0


def test_complex_leading_pair():
    th = 0.7
    a = 2.0 * np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    rec = leading_eigenpair(a)
    assert not rec.is_real
    assert rec.modulus == pytest.approx(2.0)
    assert rec.phi == pytest.approx(th)
    assert rec.residual(a) < 1e-12


def test_degenerate_leading_identity():
    with pytest.raises(DegenerateLeading):
        leading_eigenpair(np.eye(2))


def test_degenerate_jordan_block_not_simple():
    with pytest.raises(DegenerateLeading):
        leading_eigenpair(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_degenerate_opposite_signs():
    with pytest.raises(DegenerateLeading):
        leading_eigenpair(np.diag([1.0, -1.0]))


def test_canonical_pair_phase_invariant():
    x, y = np.array([1.0, 0.2, -0.3]), np.array([0.1, 0.5, 0.4])
    z = x + 1j * y
    ref = canonical_pair(x, y)
    for ang in (0.3, 1.7, -2.5):
        w = z * complex(math.cos(ang), math.sin(ang))
        got = canonical_pair(w.real, w.imag)
        assert np.allclose(got[0], ref[0]) and np.allclose(got[1], ref[1])


@given(st.integers(1, 64), st.integers(-200, 200))
def test_classify_argument_rational(q, p):
    phi = math.pi * p / q
    cls = classify_argument(phi)
    oracle = continued_fraction_class(phi)
    assert cls.is_rational
    assert (cls.p, cls.q) == oracle


@given(st.floats(0.0, math.pi, allow_nan=False))
def test_classify_argument_matches_continued_fraction(phi):
    cls = classify_argument(phi)
    oracle = continued_fraction_class(phi)
    if oracle is None:
        assert not cls.is_rational
    else:
        assert (cls.p, cls.q) == oracle


def test_classify_argument_examples():
    assert classify_argument(math.pi / 2).describe() == "RationalModPi(1,2)"
    assert classify_argument(2 * math.pi / 3).describe() == "RationalModPi(2,3)"
    assert not classify_argument(1.0).is_rational
    assert classify_argument(math.pi / 2 + 1e-6).is_rational is False


@given(st.integers(0, 10_000))
def test_spectral_radius_matches_numpy(seed):
    a = np.random.default_rng(seed).standard_normal((4, 4))
    assert spectral_radius(a) == pytest.approx(max(abs(np.linalg.eigvals(a))), rel=1e-12)
