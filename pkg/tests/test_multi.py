import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jsrkit.errors import DuplicateCandidates, MismatchedNu
from jsrkit.family import MatrixFamily
from jsrkit.fixtures import ex1, ex2
from jsrkit.multi import (
    BalancingVector,
    Found,
    find_balancing,
    run_algorithm2,
    simplex_grid,
)
from jsrkit.polytope import Halted, roots_on_boundary, run_algorithm1, verify_invariance
from jsrkit.search import make_candidate

R90 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def tie_family():
    A = np.array([[1.0, 0.3], [0.2, 0.4]])
    return MatrixFamily((A, R90 @ A @ R90.T))


@pytest.mark.parametrize("fam,word", [(ex1(), (1, 1, 1, 2)), (ex2(), (1, 1, 2))])
def test_single_root_is_algorithm1_exactly(fam, word):
    cand = make_candidate(word, fam)
    a = run_algorithm1(fam, cand, verify=False)
    b = run_algorithm2(fam, [cand], (1.0,), verify=False)
    assert isinstance(a, Halted) and isinstance(b, Halted)
    assert json.dumps(a.body.to_json()) == json.dumps(b.body.to_json())


@given(st.lists(st.floats(0.01, 100.0), min_size=1, max_size=5), st.floats(0.1, 10.0))
def test_balancing_vector_is_scale_free(a, c):
    u = BalancingVector(tuple(a))
    v = BalancingVector(tuple(c * t for t in a))
    assert np.allclose(u.alphas, v.alphas)
    assert sum(u.alphas) == pytest.approx(1.0)


def test_balancing_vector_rejects_nonpositive():
    with pytest.raises(ValueError):
        BalancingVector((1.0, 0.0))


def test_simplex_grid_centre_first():
    g = simplex_grid(3, 5)
    assert np.allclose(g[0], np.full(3, 1 / 3))
    assert all(np.all(a > 0) and a.sum() == pytest.approx(1.0) for a in g)


def test_mismatched_and_duplicate_candidates():
    fam = ex1()
    with pytest.raises(MismatchedNu):
        run_algorithm2(fam, [make_candidate((1, 1, 1, 2), fam), make_candidate((1,), fam)],
                       (0.5, 0.5))
    c = make_candidate((1, 1, 1, 2), fam)
    d = make_candidate((1, 1, 2, 1), fam)
    with pytest.raises(DuplicateCandidates):
        run_algorithm2(fam, [c, d], (0.5, 0.5))


def test_tie_family_finds_balancing():
    fam = tie_family()
    cands = [make_candidate((1,), fam), make_candidate((2,), fam)]
    found = find_balancing(fam, cands)
    assert isinstance(found, Found) and found.balanced
    body = found.result.body
    assert verify_invariance(body).invariant
    assert roots_on_boundary(body)
    assert len(body.roots) == 2
