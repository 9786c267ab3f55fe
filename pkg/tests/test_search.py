import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jsrkit.errors import EmptyWord
from jsrkit.family import MatrixFamily
from jsrkit.fixtures import ex1, ex2
from jsrkit.search import (
    count_lyndon_words,
    cyclic_primitive_normalize,
    default_max_len,
    enumerate_candidates,
    format_word,
    jsr_bounds_bruteforce,
    lyndon_words,
    minimal_period,
    parse_word,
    same_cycle,
    top_group,
)
from oracles import brute_lyndon, brute_max_nu, brute_normal_form, brute_primitive_root

words = st.lists(st.integers(1, 3), min_size=1, max_size=14).map(tuple)


@given(words)
def test_normal_form_matches_brute_force(w):
    nf = cyclic_primitive_normalize(w)
    root, k = brute_normal_form(w)
    assert (nf.word, nf.exponent) == (root, k)


@given(words, st.integers(0, 20))
def test_normal_form_rotation_invariant(w, r):
    r %= len(w)
    assert cyclic_primitive_normalize(w) == cyclic_primitive_normalize(w[r:] + w[:r])


@given(words, st.integers(1, 4))
def test_normal_form_of_power(w, k):
    base = cyclic_primitive_normalize(w)
    nf = cyclic_primitive_normalize(w * k)
    assert nf.word == base.word and nf.exponent == base.exponent * k


@given(words)
def test_minimal_period_divides_or_matches(w):
    p = minimal_period(w)
    assert all(w[i] == w[i + p] for i in range(len(w) - p))
    root, _ = brute_primitive_root(w)
    if len(w) % p == 0:
        assert len(root) == p


def test_normal_form_examples():
    assert str(cyclic_primitive_normalize((1, 2, 1, 1))) == "Primitive(1112)"
    assert str(cyclic_primitive_normalize((2, 1, 2, 1))) == "PowerOf(12, 2)"
    assert str(cyclic_primitive_normalize((1,))) == "Primitive(1)"
    with pytest.raises(EmptyWord):
        cyclic_primitive_normalize(())


def test_same_cycle():
    assert same_cycle((1, 1, 1, 2), (1, 1, 2, 1))
    assert same_cycle((1, 2), (2, 1, 2, 1))
    assert not same_cycle((1, 1, 2), (1, 2, 2))


@pytest.mark.parametrize("m,n", [(1, 5), (2, 8), (3, 5), (4, 3)])
def test_lyndon_enumeration(m, n):
    got = list(lyndon_words(m, n))
    assert sorted(got) == sorted(brute_lyndon(m, n))
    assert len(got) == len(set(got)) == count_lyndon_words(m, n)


def test_parse_and_format_words():
    assert parse_word("1112") == (1, 1, 1, 2)
    assert parse_word("1,10,2") == (1, 10, 2)
    assert parse_word([2, 1]) == (2, 1)
    assert format_word((1, 10)) == "1,10"
    assert format_word((1, 2)) == "12"


def test_default_max_len():
    assert default_max_len(2, 2) == 8
    assert default_max_len(2, 500) == 4
    assert count_lyndon_words(3, default_max_len(3, 5)) <= 500


def test_ex1_top_candidate():
    cands = enumerate_candidates(ex1())
    assert cands[0].word == (1, 1, 1, 2)
    nu = cands[0].nu
    assert nu == pytest.approx(brute_max_nu(ex1().matrices, 8), rel=1e-12)
    assert nu ** 4 == pytest.approx(max(abs(np.linalg.eigvals(cands[0].product))))


def test_ex2_top_candidate():
    assert enumerate_candidates(ex2())[0].word == (1, 1, 2)


@given(st.integers(0, 2000))
def test_top_nu_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    fam = MatrixFamily(tuple(rng.standard_normal((2, 2)) for _ in range(2)))
    top = enumerate_candidates(fam, max_len=6)[0]
    assert top.nu == pytest.approx(brute_max_nu(fam.matrices, 6), rel=1e-9)


def test_ties_are_grouped():
    R = np.array([[0.0, 1.0], [-1.0, 0.0]])
    fam = MatrixFamily((np.diag([2.0, 0.5]), R @ np.diag([2.0, 0.5]) @ R.T))
    group = top_group(enumerate_candidates(fam, max_len=4))
    assert {c.word for c in group} >= {(1,), (2,)}


def test_bruteforce_bounds_bracket_candidate():
    lo, hi = jsr_bounds_bruteforce(ex1(), 4)
    nu = enumerate_candidates(ex1())[0].nu
    assert lo <= nu * (1 + 1e-12) and nu <= hi
