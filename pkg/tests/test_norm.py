import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jsrkit.errors import NegativeInput
from jsrkit.family import MatrixFamily
from jsrkit.fixtures import ex1
from jsrkit.norm import (
    LINEAR,
    QUADRATIC,
    BarabanovNorm,
    Built,
    Failed,
    build_barabanov,
    certify,
    eval_norm,
    irreducibility_check,
    invariance_defect,
    iterated_identity_defect,
    norm_from_json,
    polar_2d,
)
from conftest import fixture_norm, fixture_run

vec2 = st.tuples(st.floats(-10, 10), st.floats(-10, 10)).map(np.array)


@pytest.fixture(scope="module")
def f1():
    built = fixture_norm("ex1")
    assert isinstance(built, Built)
    return built.norm


def test_ex1_norm_shape(f1):
    assert f1.kind == LINEAR and f1.n_functionals == 10
    assert f1.rho == pytest.approx(fixture_run("ex1").rho)


def test_barabanov_identity_ex1(f1):
    assert certify(f1, ex1(), 1000, seed=0).max_residual <= 1e-9


def test_barabanov_identity_iterated(f1):
    X = np.random.default_rng(3).standard_normal((200, 2))
    assert iterated_identity_defect(f1, ex1(), 3, X) <= 1e-9


def test_negative_control_detects_a_wrong_norm(f1):
    # a norm built from a scaled-down functional set breaks the identity
    funcs = list(f1.functionals)
    funcs[0] = 1.3 * funcs[0]
    funcs[1] = 1.3 * funcs[1]
    bad = BarabanovNorm(f1.kind, funcs, f1.rho, None, {})
    assert certify(bad, ex1(), 1000, seed=0).max_residual > 1e-3


@given(vec2, st.floats(-5, 5))
def test_homogeneity(f1, x, c):
    assert f1(c * x) == pytest.approx(abs(c) * f1(x), rel=1e-12, abs=1e-12)


@given(vec2, vec2)
def test_triangle_inequality(f1, x, y):
    assert f1(x + y) <= f1(x) + f1(y) + 1e-12 * (1 + f1(x) + f1(y))


@given(vec2)
def test_positive_definite(f1, x):
    if np.linalg.norm(x) > 1e-9:
        assert f1(x) > 0


def test_unit_ball_is_polar_of_dual_body(f1):
    # the norm of A is the gauge of the polar of the body built on A^T
    from jsrkit.norm import polygon_gauge

    dual = fixture_run("ex1", transpose=True).body
    poly = polar_2d(dual)
    rng = np.random.default_rng(5)
    for x in rng.standard_normal((200, 2)):
        assert f1(x) == pytest.approx(polygon_gauge(poly, x), rel=1e-9)


def test_quadratic_norm_ex3():
    built = fixture_norm("ex3")
    assert isinstance(built, Built)
    f = built.norm
    assert f.kind == QUADRATIC and f.n_functionals == 3
    assert not f.flags["unique"] and f.flags["rational_mod_pi"]
    from jsrkit.fixtures import ex3

    assert certify(f, ex3(), 1000).max_residual <= 1e-6


def test_json_roundtrip(f1):
    g = norm_from_json(f1.to_json())
    X = np.random.default_rng(1).standard_normal((50, 2))
    assert np.allclose(g.evaluate_many(X), f1.evaluate_many(X))


def test_reducible_family_fails_with_witness():
    fam = MatrixFamily(([[1.0, 1.0], [0.0, 1.0]], [[2.0, 3.0], [0.0, 1.0]]))
    irr = irreducibility_check(fam)
    assert not irr.irreducible
    assert invariance_defect(fam, irr.basis) < 1e-9
    res = build_barabanov(fam)
    assert isinstance(res, Failed) and res.reason.startswith("Reducible")


def test_irreducible_rotation_pair():
    assert irreducibility_check(ex1()).irreducible


def test_monotone_norm_rejects_negative_input():
    f = BarabanovNorm("MonotoneLinear", [np.array([1.0, 0.5])], 1.0, None, {})
    with pytest.raises(NegativeInput):
        eval_norm(f, np.array([-1.0, 0.0]))
    assert eval_norm(f, np.array([2.0, 2.0])) == pytest.approx(3.0)
