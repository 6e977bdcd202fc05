import pytest
from hypothesis import given

from conftest import CORPUS, greedoids
from greedoid_lab.analysis import (
    continuations,
    greedoid_span,
    is_interval,
    is_interval_words,
    is_kernel_monotone,
    is_optimistic,
    kernel,
    optimism_failures,
    rank,
)
from greedoid_lab.catalog import path_ubg, shelling_antimatroid, triangle_family, trimmed_matroid
from greedoid_lab.constructions import matroid_from_rank, uniform_matroid
from greedoid_lab.core import NotFeasible, make_greedoid


def span_oracle(g, X):
    return sum(1 << y for y in range(g.n) if rank(g, X | 1 << y) == rank(g, X))


def kernel_oracle(g, X):
    s = span_oracle(g, X)
    out = 0
    for A in g.feasible:
        if A & s == A:
            out |= A
    return out


def test_path_rank_span_kernel():
    g = path_ubg()
    a, b = 1, 2
    assert rank(g, b) == 0
    assert rank(g, a | b) == 2
    assert rank(g, 0) == 0
    assert greedoid_span(g, b) == b
    assert greedoid_span(g, a) == a
    assert greedoid_span(g, a | b) == a | b
    assert kernel(g, b) == 0
    assert kernel(g, a | b) == a | b


def test_trimmed_kernels():
    g = trimmed_matroid()
    A = g.alphabet
    assert greedoid_span(g, A.mask("a")) == A.mask("ad")
    assert kernel(g, A.mask("a")) == A.mask("a")
    assert greedoid_span(g, A.mask("c")) == A.mask("bc")
    assert kernel(g, A.mask("c")) == A.mask("c")


def test_continuations_examples():
    t = trimmed_matroid()
    A = t.alphabet
    assert continuations(t, 0) == A.mask("ac")
    assert continuations(t, A.mask("ac")) == 0
    g = triangle_family()
    assert continuations(g, g.alphabet.mask("a")) == g.alphabet.mask("bc")
    with pytest.raises(NotFeasible):
        continuations(t, A.mask("d"))


def test_interval_examples():
    assert is_interval(trimmed_matroid()).ok
    assert is_interval(matroid_from_rank(uniform_matroid(4, 2))).ok
    assert is_interval(shelling_antimatroid()).ok


def test_interval_failure_witness():
    # b extends {a} and {a,c,d} but not {a,d} in between
    bad = make_greedoid("abcd", ["", "a", "ab", "ad", "abc", "acd", "abcd"])
    ok, w = is_interval(bad)
    assert not ok
    A, B, C, x = w
    assert w == (0b0001, 0b1001, 0b1101, 1)
    fam = bad.feasible
    assert A & B == A and B & C == B and not C >> x & 1
    assert (A | 1 << x) in fam and (C | 1 << x) in fam and (B | 1 << x) not in fam


def test_optimism_examples():
    t = trimmed_matroid()
    A = t.alphabet
    fails = optimism_failures(t)
    assert (A.index("d"), A.word("ac")) in fails
    for prefix in ["", "a", "ac"]:
        assert not continuations(t, A.mask(prefix)) >> A.index("d") & 1
    ok, w = is_optimistic(t)
    assert not ok and w == (A.index("b"), A.word("ca"))
    assert is_optimistic(path_ubg()).ok
    assert is_optimistic(shelling_antimatroid()).ok


@given(greedoids())
def test_span_and_kernel_match_oracles(g):
    for X in range(1 << g.n):
        s = greedoid_span(g, X)
        assert s == span_oracle(g, X)
        assert s & X == X
        k = kernel(g, X)
        assert k == kernel_oracle(g, X)
        assert k & s == k


@given(greedoids())
def test_feasible_sets_inside_their_kernel(g):
    for A in g.feasible:
        assert kernel(g, A) & A == A
        assert rank(g, A) == A.bit_count()


@given(greedoids())
def test_continuations_are_rank_increments(g):
    for A in g.feasible:
        inc = sum(1 << x for x in range(g.n) if rank(g, A | 1 << x) == A.bit_count() + 1)
        assert continuations(g, A) == inc
        assert continuations(g, A) & greedoid_span(g, A) == 0


@given(greedoids())
def test_kernel_monotone_on_interval_greedoids(g):
    if is_interval(g).ok:
        assert is_kernel_monotone(g).ok


@given(greedoids())
def test_matroid_kernel_is_span_minus_loops(g):
    fam = g.feasible
    is_matroid = all((A & ~(1 << x)) in fam for A in fam for x in range(g.n) if A >> x & 1)
    if is_matroid:
        for X in range(1 << g.n):
            assert kernel(g, X) == greedoid_span(g, X) & ~g.loop_mask


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_interval_set_and_word_forms_agree(n):
    for g in CORPUS[n]:
        assert is_interval(g).ok == is_interval_words(g).ok
