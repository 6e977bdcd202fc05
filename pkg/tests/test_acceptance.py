"""Acceptance gate: one test per criterion, each timed and summarised at the end of the run."""

from fractions import Fraction as F
from itertools import product

from conftest import CORPUS
from greedoid_lab.analysis import continuations, is_interval, is_interval_words, is_optimistic, optimism_failures
from greedoid_lab.catalog import branching_pair, path_graph, shelling_chain, triangle_graph, trimmed_matroid
from greedoid_lab.constructions import (
    all_posets,
    cover_rank,
    double_shelling,
    lower_set_rank,
    poset_antimatroid,
    trim,
    ubg,
    uniform_matroid,
)
from greedoid_lab.core import Alphabet, GreedoidError, iter_words, support, validate_greedoid
from greedoid_lab.flats import check_forking, compute_flats, flat_lattice, flat_order_by_sets, flat_order_by_words
from greedoid_lab.fixtures import load_greedoid
from greedoid_lab.greatest import ITEMS, greatest_representation, search_representations
from greedoid_lab.harness import recorded_items, reproduce, survey
from greedoid_lab.polymatroid import (
    SetFunction,
    check_galois,
    check_polymatroid,
    is_aligned,
    is_representation,
    language_of_rank,
    words_of_rank_naive,
)

ALL = 10**6


def normal(max_n):
    return [g for n in range(max_n + 1) for g in CORPUS[n] if not g.loop_mask]


def grid_representations(g):
    reps = search_representations(g, max_solutions=ALL)
    reps += [r for r in search_representations(g, step=F(1, 2), cap=g.basic_rank + 1, max_solutions=ALL)
             if r not in reps]
    return reps


def tables(n, values):
    alpha = Alphabet.standard(n)
    for vals in product(values, repeat=(1 << n) - 1):
        yield SetFunction(alpha, (F(0),) + vals)


def test_criterion_1_trimmed_matroid(accept):
    with accept(1, "trimmed matroid language, interval, optimism witness d", 1):
        g = trim(uniform_matroid(4, 2), double_shelling(shelling_chain()))
        A = g.alphabet
        assert set(iter_words(g)) == {A.word(w) for w in ["", "a", "c", "ab", "ac", "cd", "ca"]}
        assert is_interval(g).ok
        assert not is_optimistic(g).ok
        d = A.index("d")
        assert (d, A.word("ac")) in optimism_failures(g)
        for prefix in ["", "a", "ac"]:
            assert not continuations(g, A.mask(prefix)) >> d & 1


def test_criterion_2_representation_goldens(accept):
    with accept(2, "cover rank and lower-set rank representations", 10):
        for graph in (path_graph(), triangle_graph()):
            rho = cover_rank(graph)
            assert check_polymatroid(rho).ok
            assert is_representation(rho, ubg(graph)).ok
        posets = 0
        for n in range(5):
            for p in all_posets(n):
                rho = lower_set_rank(p)
                assert check_polymatroid(rho).ok
                assert is_representation(rho, poset_antimatroid(p)).ok
                posets += 1
        assert posets == 1 + 1 + 3 + 19 + 219


def test_criterion_3_representation_implies_interval(accept):
    with accept(3, "every represented greedoid is interval", 60):
        pairs = 0
        for n in range(4):
            for g in CORPUS[n]:
                for r in grid_representations(g):
                    # independent check of the representation by word enumeration
                    assert frozenset(support(w) for w in words_of_rank_naive(r)) == g.feasible
                    assert is_interval(g).ok
                    pairs += 1
        # every small polymatroid table against the greedoid it induces
        grids = [(n, range(5)) for n in range(4)] + [(n, [F(k, 2) for k in range(5)]) for n in range(4)]
        for n, values in grids:
            for f in tables(n, values):
                if not check_polymatroid(f).ok:
                    continue
                try:
                    g = validate_greedoid(language_of_rank(f))
                except GreedoidError:
                    continue
                assert is_representation(f, g).ok
                assert is_interval(g).ok
                pairs += 1
        assert pairs > 1000


def test_criterion_4_integral_representations_aligned(accept):
    with accept(4, "integral representations are aligned"):
        seen = 0
        for g in normal(3):
            for r in search_representations(g, max_solutions=ALL):
                assert r.integral
                assert is_aligned(r, g).ok, (g.describe(), r.values)
                seen += 1
        assert seen == 48


def test_criterion_5_galois_matches_alignment(accept):
    with accept(5, "adjunction and cover preservation iff aligned; branching insertion fails"):
        mismatches = []
        instances = [(g, r) for g in normal(3) for r in grid_representations(g)]
        instances += [(ubg(gr), cover_rank(gr)) for gr in (path_graph(), triangle_graph())]
        instances.append(branching_pair())
        instances += [(poset_antimatroid(p), lower_set_rank(p)) for n in range(4) for p in all_posets(n)]
        unaligned = 0
        for g, r in instances:
            pair = check_galois(r, g)
            aligned = is_aligned(r, g).ok
            unaligned += not aligned
            if (pair.adjunction.ok and pair.cover_preserving.ok) != aligned:
                mismatches.append((g.describe(), r.values))
        assert not mismatches
        assert unaligned > 0

        g, rho = branching_pair()
        pair = check_galois(rho, g)
        b = g.alphabet.mask("b")
        assert pair.adjunction.ok and pair.cover_preserving.ok
        assert pair.phi_star[pair.phi_lower[b]] == 0
        assert pair.insertion == (False, b)


def test_criterion_6_forking(accept):
    with accept(6, "forking holds on every interval greedoid up to 4 letters", 300):
        checked = 0
        for g in normal(4):
            if not is_interval(g).ok:
                continue
            ok, w = check_forking(flat_lattice(g))
            assert ok, (g.describe(), w)
            checked += 1
        assert checked == 1587


def test_criterion_7_greatest_negative_control(accept):
    with accept(7, "greatest representation of the trimmed matroid admits ad", 1):
        g = trimmed_matroid()
        nat = greatest_representation(g)
        assert check_polymatroid(nat).ok
        ad = g.alphabet.mask("ad")
        assert ad == 9
        assert is_representation(nat, g) == (False, ad)
        assert g.alphabet.word("ad") in words_of_rank_naive(nat)


def test_criterion_8_survey_matrix_and_fixtures(accept, tmp_path):
    with accept(8, "survey(3) complete matrix and reproducible counterexamples", 1800):
        for n in range(4):
            rep = survey(n, out_dir=tmp_path / f"n{n}")
            assert rep.total == len(rep.results)
            for i in ITEMS:
                for j in ITEMS:
                    if i == j:
                        continue
                    held, failed, unknown = rep.matrix[(i, j)]
                    assert held + failed + unknown == rep.total
                    if {i, j} <= {2, 3, 4}:
                        assert unknown == 0
            assert rep.counts.get("search-incomplete", 0) == 0
            failing = [r for r in rep.results if r.failed]
            assert len(rep.counterexamples) >= len(failing)
            for path, g, reason in rep.counterexamples:
                assert path is not None and path.exists()
                again = load_greedoid(path)
                assert again.feasible == g.feasible
                res = reproduce(path)
                assert res.items == recorded_items(path)
                assert reason.startswith("; ".join(f"{i}=>{j} fails" for i, j in res.failed))
            if n <= 1:
                assert not rep.counterexamples


def test_criterion_9_oracle_equivalences(accept):
    with accept(9, "set/word flat order, interval forms, rank language DP vs naive"):
        for g in normal(3):
            if is_interval(g).ok:
                flats = compute_flats(g)
                assert flat_order_by_sets(g, flats) == flat_order_by_words(g, flats)
        for n in range(4):
            for g in CORPUS[n]:
                assert is_interval(g).ok == is_interval_words(g).ok
        grids = [(n, [F(k, 2) for k in range(5)]) for n in range(3)] + [(3, range(4))]
        for n, values in grids:
            for f in tables(n, values):
                naive = frozenset(support(w) for w in words_of_rank_naive(f))
                assert language_of_rank(f).feasible == naive
