import json

import numpy as np
import pytest

from jsrkit.errors import DegenerateLeading
from jsrkit.family import MatrixFamily
from jsrkit.fixtures import ex1
from jsrkit.polytope import (
    REAL,
    Budget,
    Halted,
    NotDominantEvidence,
    body_from_json,
    build_root,
    facet_count,
    polytope_vertex_count,
    prune_redundant,
    run_algorithm1,
    verify_invariance,
)
from jsrkit.search import make_candidate
from conftest import fixture_run
from oracles import symmetric_gauge_2d


def test_ex1_root_cycle():
    fam = ex1()
    cand = make_candidate((1, 1, 1, 2), fam)
    root = build_root(fam, cand)
    assert root.n == 4
    # closing the cycle returns to the first element
    A = [a / cand.nu for a in fam.matrices]
    v = root.elements[0][0]
    for s in (1, 1, 1, 2):
        v = A[s - 1] @ v
    assert np.allclose(abs(v), abs(root.elements[0][0]), atol=1e-10)


def test_ex1_halts_with_10_gon(ex1_run):
    body = ex1_run.body
    assert ex1_run.halted and body.kind == REAL
    assert body.n_generators == 5
    assert polytope_vertex_count(body) == 10 and facet_count(body) == 10


def test_ex1_body_is_invariant(ex1_run):
    rep = verify_invariance(ex1_run.body)
    assert rep.invariant and rep.roots_on_boundary


def test_ex1_images_inside_by_exact_geometry(ex1_run):
    body = ex1_run.body
    V = body.vertex_array()
    for A in body.family.matrices:
        for v in V:
            assert symmetric_gauge_2d(A @ v, V) <= 1 + 1e-9


def test_ex1_roots_on_boundary_exact(ex1_run):
    V = ex1_run.body.vertex_array()
    for x, _ in ex1_run.body.root_elements:
        assert symmetric_gauge_2d(x, V) == pytest.approx(1.0, abs=1e-9)


def test_wrong_candidate_gives_evidence():
    fam = ex1()
    wrong = make_candidate((1, 1, 1, 1, 2), fam)
    res = run_algorithm1(fam, wrong)
    assert isinstance(res, NotDominantEvidence)
    assert res.nu > wrong.nu
    assert res.word == (1, 1, 1, 2)


def test_budget_reported():
    fam = ex1()
    res = run_algorithm1(fam, make_candidate((1, 1, 1, 2), fam), max_iter=1)
    assert isinstance(res, Budget)
    assert res.nu_lower == pytest.approx(make_candidate((1, 1, 1, 2), fam).nu)


def test_degenerate_candidate():
    fam = MatrixFamily((np.eye(2), np.diag([0.5, 0.2])))
    with pytest.raises(DegenerateLeading):
        build_root(fam, make_candidate((1,), fam))


def test_prune_keeps_the_body(ex1_run):
    raw = ex1_run.raw_body
    pruned = prune_redundant(raw)
    V = pruned.vertex_array()
    for x, _ in raw.generators:
        assert symmetric_gauge_2d(x, V) <= 1 + 1e-9


def test_body_json_roundtrip(ex1_run):
    obj = json.loads(json.dumps(ex1_run.body.to_json()))
    again = body_from_json(obj)
    assert again.kind == REAL and again.n_generators == 5
    assert np.allclose(again.vertex_array(), ex1_run.body.vertex_array())
    assert len(again.root_elements) == 4


def test_halted_run_is_deterministic():
    fam = ex1()
    cand = make_candidate((1, 1, 1, 2), fam)
    a = run_algorithm1(fam, cand)
    b = run_algorithm1(fam, cand)
    assert isinstance(a, Halted)
    assert json.dumps(a.body.to_json()) == json.dumps(b.body.to_json())


def test_thread_count_does_not_change_the_body(monkeypatch):
    from jsrkit.fixtures import ex2

    fam = ex2()
    cand = make_candidate((1, 1, 2), fam)
    monkeypatch.setenv("JSRKIT_THREADS", "1")
    a = run_algorithm1(fam, cand)
    monkeypatch.setenv("JSRKIT_THREADS", "3")
    b = run_algorithm1(fam, cand)
    assert json.dumps(a.body.to_json()) == json.dumps(b.body.to_json())


def test_complex_fixture_bodies():
    r3 = fixture_run("ex3")
    assert r3.halted and r3.body.kind == "EllipseHull"
    assert r3.candidates[0].argclass.describe() == "RationalModPi(1,2)"
    assert verify_invariance(r3.body).invariant
