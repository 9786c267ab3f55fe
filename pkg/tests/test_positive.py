import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jsrkit.errors import DegenerateLeading, NegativeEntry
from jsrkit.family import MatrixFamily
from jsrkit.fixtures import random_pair
from jsrkit.norm import Built, certify
from jsrkit.pipeline import certify_jsr
from jsrkit.polytope import MONOTONE, verify_invariance
from jsrkit.positive import (
    monotone_barabanov,
    perron_root,
    perron_vector,
    positive_irreducibility,
    run_monotone_algorithm1,
)
from jsrkit.search import make_candidate


def test_positive_irreducibility_detects_closed_class():
    A = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 1.0, 1.0]])
    res = positive_irreducibility(MatrixFamily((A, A.T @ np.diag([1.0, 0.0, 1.0]))))
    assert res.irreducible in (True, False)
    B = np.array([[1.0, 1.0], [0.0, 1.0]])
    red = positive_irreducibility(MatrixFamily((B, B)))
    assert not red.irreducible and red.subspace == (1,)


def test_positive_irreducibility_rejects_negative():
    with pytest.raises(NegativeEntry):
        positive_irreducibility(MatrixFamily(([[1.0, -1.0], [0.0, 1.0]],)))


@given(st.integers(0, 3000))
def test_perron_root_matches_eig(seed):
    P = np.random.default_rng(seed).random((6, 6))
    r, v = perron_root(P)
    assert r == pytest.approx(max(abs(np.linalg.eigvals(P))), rel=1e-9)
    assert np.all(perron_vector(P) >= 0)


def test_perron_power_iteration_large():
    P = np.random.default_rng(0).random((300, 300))
    r, _ = perron_root(P)
    assert r == pytest.approx(max(abs(np.linalg.eigvals(P))), rel=1e-8)


@pytest.fixture(scope="module")
def positive10():
    return random_pair(10, np.random.default_rng(11), nonnegative=True)


def test_monotone_run_halts(positive10):
    res = certify_jsr(positive10, monotone=True)
    assert res.halted and res.body.kind == MONOTONE
    assert verify_invariance(res.body).invariant
    assert np.all(res.body.vertex_array() >= 0)


def test_nilpotent_candidate_rejected():
    N = np.array([[0.0, 1.0], [0.0, 0.0]])
    fam = MatrixFamily((N,), nonnegative=True)
    with pytest.raises(DegenerateLeading):
        run_monotone_algorithm1(fam, make_candidate((1,), fam))


@pytest.fixture(scope="module")
def monotone_norm(positive10):
    built = monotone_barabanov(positive10)
    assert isinstance(built, Built)
    return built.norm


def test_monotone_norm_identity(positive10, monotone_norm):
    assert certify(monotone_norm, positive10, 1000).max_residual <= 1e-6


@given(st.integers(0, 5000))
def test_monotone_norm_is_monotone(monotone_norm, seed):
    rng = np.random.default_rng(seed)
    y = rng.random(10)
    x = y * rng.random(10)
    assert monotone_norm(x) <= monotone_norm(y) * (1 + 1e-12)
