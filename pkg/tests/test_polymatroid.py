from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CORPUS
from greedoid_lab.analysis import is_interval, kernel
from greedoid_lab.catalog import branching_pair, path_graph, path_ubg
from greedoid_lab.constructions import Poset, cover_rank, lower_set_rank, poset_antimatroid, uniform_matroid
from greedoid_lab.core import Alphabet, AxiomViolation, make_greedoid, support
from greedoid_lab.greatest import search_representations
from greedoid_lab.polymatroid import (
    NotARepresentation,
    SetFunction,
    check_galois,
    check_polymatroid,
    closed_sets,
    diminishing_returns_violation,
    is_aligned,
    is_aligned_by_map,
    is_representation,
    language_of_rank,
    marginal,
    poly_span,
    validate_polymatroid,
    verify_aligned_consequences,
    words_of_rank_naive,
)

AB = Alphabet.standard(2)


def table(alphabet, mapping):
    return SetFunction(alphabet, tuple(F(mapping[m]) for m in range(1 << alphabet.n)))


def chain_rank():
    return lower_set_rank(Poset.chain(AB, "ab"))


def small_tables(n, top, step=F(1)):
    """Strategy: arbitrary tables with values on ``step``-grid up to ``top`` and ρ(∅)=0."""
    k = int(top / step)
    vals = st.lists(st.integers(0, k), min_size=(1 << n) - 1, max_size=(1 << n) - 1)
    return vals.map(lambda v: SetFunction(Alphabet.standard(n), (F(0),) + tuple(step * x for x in v)))


def test_validate_examples():
    r = chain_rank()
    assert r.integral and [r(m) for m in range(4)] == [0, 1, 2, 2]
    u = uniform_matroid(4, 2)
    assert u.integral and u.subcardinal
    bad = table(AB, {0: 0, 1: 1, 2: 1, 3: 3})
    with pytest.raises(AxiomViolation) as exc:
        validate_polymatroid(bad)
    assert exc.value.axiom == "submodular"
    assert exc.value.witness == (0, 0b10, 0)
    assert marginal(bad, 0b10, 0) == 2 > marginal(bad, 0, 0) == 1


def test_normalized_and_monotone_witnesses():
    assert check_polymatroid(table(AB, {0: 1, 1: 1, 2: 1, 3: 1})).witness[0] == "normalized"
    assert check_polymatroid(table(AB, {0: 0, 1: 2, 2: 1, 3: 1})).witness == ("monotone", (0b01, 1))


def test_marginals():
    r = chain_rank()
    assert marginal(r, 0, 1) == 2
    assert marginal(r, 0b01, 0) == 0
    c = cover_rank(path_graph())
    assert marginal(c, 0b01, 1) == 1


def test_spans_and_closed_sets():
    u = uniform_matroid(4, 2)
    assert poly_span(u, 0b0011) == 0b1111
    assert poly_span(u, 0) == 0
    r = chain_rank()
    assert closed_sets(r).sets == (0, 0b01, 0b11)


def test_language_of_rank_examples():
    assert language_of_rank(cover_rank(path_graph())).feasible == path_ubg().feasible
    assert language_of_rank(chain_rank()).feasible == frozenset({0, 1, 3})
    empty = SetFunction(Alphabet(()), (F(0),))
    assert language_of_rank(empty).feasible == frozenset({0})


def test_representation_examples():
    assert is_representation(cover_rank(path_graph()), path_ubg()).ok
    p = Poset.chain(AB, "ab")
    assert is_representation(lower_set_rank(p), poset_antimatroid(p)).ok


def test_alignment_examples():
    g = path_ubg()
    c = cover_rank(path_graph())
    assert is_aligned(c, g).ok and is_aligned_by_map(c, g).ok
    g1 = make_greedoid("ab", ["", "a"])
    half = table(AB, {0: 0, 1: 1, 2: F(1, 2), 3: F(3, 2)})
    assert is_representation(half, g1).ok
    assert is_aligned(half, g1) == (False, (0, 1))
    with pytest.raises(NotARepresentation):
        is_aligned(table(AB, {0: 0, 1: 1, 2: 1, 3: 2}), g)


def test_galois_path_and_trivial():
    pair = check_galois(cover_rank(path_graph()), path_ubg())
    assert len(pair.lattice) == 3 and len(pair.closed.sets) == 3
    assert pair.adjunction.ok and pair.cover_preserving.ok and pair.insertion.ok and pair.isomorphism.ok
    triv = make_greedoid(Alphabet(()), [[]])
    pair = check_galois(SetFunction(Alphabet(()), (F(0),)), triv)
    assert pair.adjunction.ok and pair.cover_preserving.ok and pair.insertion.ok


def test_galois_branching_not_insertion():
    g, rho = branching_pair()
    b = g.alphabet.mask("b")
    pair = check_galois(rho, g)
    assert pair.adjunction.ok and pair.cover_preserving.ok
    assert b in pair.closed.sets and kernel(g, b) == 0
    assert pair.phi_star[pair.phi_lower[b]] == 0
    assert pair.insertion == (False, b)


def test_aligned_consequences_examples():
    rep = verify_aligned_consequences(cover_rank(path_graph()), path_ubg())
    assert rep.ok
    assert rep.extras["windows"][((0, 1), 1)] == (1, 2)
    assert rep.extras["windows"][((0, 1), 0)] == (0, 1)
    p = Poset.chain(Alphabet.standard(3), "abc")
    assert verify_aligned_consequences(lower_set_rank(p), poset_antimatroid(p)).ok


@given(small_tables(3, 3))
def test_local_submodularity_matches_diminishing_returns(f):
    ok, w = check_polymatroid(f)
    if not ok and w[0] != "submodular":
        return
    assert ok == (diminishing_returns_violation(f) is None)


@given(small_tables(3, 2, F(1, 2)))
def test_language_dp_matches_naive(f):
    naive = words_of_rank_naive(f)
    assert language_of_rank(f).feasible == frozenset(support(w) for w in naive)


@given(small_tables(3, 3))
def test_span_is_closure(f):
    if not check_polymatroid(f).ok:
        return
    n = f.n
    for X in range(1 << n):
        s = poly_span(f, X)
        assert s & X == X
        assert poly_span(f, s) == s
        assert f(s) == f(X)
        for Y in range(1 << n):
            if X & Y == X:
                assert poly_span(f, Y) & s == s
    closed = closed_sets(f)
    for S in closed.sets:
        for T in closed.sets:
            assert (S & T) in closed.sets


def representation_instances(max_n=3):
    for n in range(max_n + 1):
        for g in CORPUS[n]:
            if g.loop_mask:
                continue
            reps = search_representations(g, max_solutions=10**6)
            reps += search_representations(g, step=F(1, 2), cap=g.basic_rank + 1, max_solutions=10**6)
            for r in reps:
                yield g, r


def test_alignment_forms_agree_on_representations():
    seen = 0
    for g, r in representation_instances():
        assert is_aligned(r, g).ok == is_aligned_by_map(r, g).ok
        seen += 1
    assert seen > 100


def test_aligned_representations_satisfy_consequences():
    for g, r in representation_instances():
        if is_aligned(r, g).ok:
            assert verify_aligned_consequences(r, g).ok
            assert is_interval(g).ok
