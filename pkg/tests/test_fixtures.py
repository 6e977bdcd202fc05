from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given

from conftest import greedoids
from greedoid_lab.catalog import branching_graph, path_ubg, shelling_chain, trimmed_matroid
from greedoid_lab.constructions import all_posets, cover_rank, uniform_matroid
from greedoid_lab.core import AxiomViolation
from greedoid_lab.fixtures import (
    FixtureError,
    format_graph,
    format_greedoid,
    format_poset,
    format_rank,
    load_greedoid,
    load_rank,
    parse_graph,
    parse_greedoid,
    parse_poset,
    parse_rank,
    parse_system,
    parse_weights,
)

DATA = Path(__file__).resolve().parent.parent / "data"


def test_shipped_fixtures_load():
    assert load_greedoid(DATA / "path.greedoid").feasible == path_ubg().feasible
    assert load_greedoid(DATA / "trimmed.greedoid").feasible == trimmed_matroid().feasible
    assert load_rank(DATA / "path.rank").values == (0, 1, 2, 2)
    assert load_rank(DATA / "uniform24.rank") == uniform_matroid(4, 2)
    assert parse_graph((DATA / "branching.graph").read_text()) == branching_graph()
    assert parse_poset((DATA / "chain_abdc.poset").read_text()) == shelling_chain()


@given(greedoids())
def test_greedoid_roundtrip(g):
    assert parse_greedoid(format_greedoid(g, ["note"])) == g


def test_rank_roundtrip_keeps_fractions():
    rho = load_rank(DATA / "path.rank")
    half = type(rho)(rho.alphabet, (F(0), F(1, 2), F(1), F(3, 2)))
    assert parse_rank(format_rank(half)) == half
    assert parse_rank(format_rank(cover_rank(branching_graph()))) == cover_rank(branching_graph())


def test_graph_and_poset_roundtrip():
    g = branching_graph()
    assert parse_graph(format_graph(g)) == g
    for p in all_posets(3):
        assert parse_poset(format_poset(p)) == p


def test_greedoid_errors_carry_line_numbers():
    with pytest.raises(FixtureError) as exc:
        parse_system("alphabet: a,b\nfeasible: {a}\nfeasible: {a}\n")
    assert exc.value.line == 3
    with pytest.raises(FixtureError) as exc:
        parse_system("feasible: {}\n")
    assert exc.value.line == 1
    with pytest.raises(FixtureError) as exc:
        parse_system("alphabet: a\nfeasible: {z}\n")
    assert exc.value.line == 2
    with pytest.raises(FixtureError):
        parse_system("alphabet a,b\n")
    with pytest.raises(FixtureError):
        parse_system("# nothing\n")
    with pytest.raises(AxiomViolation):
        parse_greedoid("alphabet: a,b\nfeasible: {}\nfeasible: {a,b}\n")


def test_rank_errors():
    with pytest.raises(FixtureError, match="missing rank entry for {b}"):
        parse_rank("alphabet: a,b\nrank: {} = 0\nrank: {a} = 1\nrank: {a,b} = 1\n")
    with pytest.raises(FixtureError) as exc:
        parse_rank("alphabet: a\nrank: {} = 0\nrank: {a} = x\n")
    assert exc.value.line == 3
    with pytest.raises(FixtureError):
        parse_rank("alphabet: a\nrank: {} = 0\nrank: {a} = 1/0\n")
    with pytest.raises(FixtureError, match="does not match"):
        parse_rank("alphabet: a\nrank: {} = 0\nrank: {a} = 1\n", load_greedoid(DATA / "path.greedoid").alphabet)


def test_graph_and_poset_errors():
    with pytest.raises(FixtureError):
        parse_graph("edge: a = s-u\n")
    with pytest.raises(FixtureError):
        parse_graph("root: s\nedge: a = s\n")
    with pytest.raises(FixtureError, match="cycle"):
        parse_poset("alphabet: a,b\nrel: a < b\nrel: b < a\n")
    with pytest.raises(FixtureError):
        parse_poset("alphabet: a,b\nrel: a > b\n")


def test_weights():
    alpha = path_ubg().alphabet
    assert parse_weights(alpha, "a=3, b=1/2") == (3, F(1, 2))
    with pytest.raises(FixtureError):
        parse_weights(alpha, "a=3")
    with pytest.raises(FixtureError):
        parse_weights(alpha, "a=3,a=2,b=1")
    with pytest.raises(FixtureError):
        parse_weights(alpha, "a=3,z=1,b=1")
