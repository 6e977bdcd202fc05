"""Small named instances used across tests, scripts and the CLI examples."""

from __future__ import annotations

from .constructions import Poset, RootedGraph, cover_rank, prefix_closure, trim, ubg, uniform_matroid
from .core import Alphabet, make_greedoid

# Four basic words whose prefixes form a double shelling of the chain a→b→d→c.
SHELLING_WORDS = ("abcd", "cdab", "acdb", "cabd")
SHELLING_CHAIN = "abdc"
TRIMMED_WORDS = ("", "a", "c", "ab", "ac", "cd", "ca")

# Seven-set antimatroid on three letters; every feasible set is its own flat.
TRIANGLE_FAMILY = ("", "a", "b", "ab", "ac", "bc", "abc")


def path_graph() -> RootedGraph:
    return RootedGraph(("s", "u", "v"), (("a", "s", "u"), ("b", "u", "v")), "s")


def triangle_graph() -> RootedGraph:
    return RootedGraph(("s", "u", "v"), (("a", "s", "u"), ("b", "s", "v"), ("c", "u", "v")), "s")


def branching_graph() -> RootedGraph:
    """Root edge ``a`` to ``u``; ``c`` and ``d`` leave ``u``; ``b`` joins their far ends.

    ``{b}`` is closed under the cover rank but contains no feasible set, so the
    Galois pair of this graph is not an insertion.
    """
    return RootedGraph(
        ("s", "u", "v", "w"),
        (("a", "s", "u"), ("b", "v", "w"), ("c", "u", "v"), ("d", "u", "w")),
        "s",
    )


def path_ubg():
    return ubg(path_graph())


def triangle_family():
    return make_greedoid("abc", TRIANGLE_FAMILY)


def shelling_antimatroid():
    return prefix_closure(Alphabet.standard(4), SHELLING_WORDS)


def shelling_chain() -> Poset:
    return Poset.chain(Alphabet.standard(4), SHELLING_CHAIN)


def trimmed_matroid():
    """``U²₄`` trimmed by the shelling antimatroid: interval but not optimistic."""
    return trim(uniform_matroid(4, 2), shelling_antimatroid())


def branching_pair():
    g = branching_graph()
    return ubg(g), cover_rank(g)
