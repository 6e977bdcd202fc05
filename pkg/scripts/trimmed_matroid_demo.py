"""Walk through the trimmed uniform matroid: an interval greedoid that is not
optimistic, whose greatest representation admits the infeasible word ``ad``."""

from greedoid_lab.analysis import continuations, is_interval, optimism_failures
from greedoid_lab.catalog import shelling_chain
from greedoid_lab.constructions import double_shelling, trim, uniform_matroid
from greedoid_lab.core import iter_words, word_key
from greedoid_lab.flats import flat_lattice
from greedoid_lab.greatest import audit_equivalences, greatest_representation
from greedoid_lab.polymatroid import closed_sets, is_representation, words_of_rank_naive


def main():
    anti = double_shelling(shelling_chain())
    g = trim(uniform_matroid(4, 2), anti)
    A = g.alphabet
    fmt_w = A.format_word

    print("antimatroid sets:", len(anti.feasible))
    print("language:", ", ".join(fmt_w(w) for w in sorted(iter_words(g), key=word_key)))
    print("interval:", is_interval(g).ok)

    d = A.index("d")
    for prefix in ["", "a", "ac"]:
        gamma = continuations(g, A.mask(prefix))
        print(f"Γ[{fmt_w(A.word(prefix))}] = {A.format_set(gamma)}  contains d: {bool(gamma >> d & 1)}")
    fails = optimism_failures(g)
    print("optimism failures:", ", ".join(f"{A.letters[y]} after {fmt_w(w)}" for y, w in fails))

    lat = flat_lattice(g)
    print("flat kernels:", [A.format_set(f.kernel) for f in lat.flats])

    nat = greatest_representation(g)
    print("ρ♮ closed sets:", [A.format_set(S) for S in closed_sets(nat).sets])
    ok, w = is_representation(nat, g)
    extra = sorted(words_of_rank_naive(nat) - set(iter_words(g)), key=word_key)
    print(f"ρ♮ represents: {ok}  witness {A.format_set(w)}  extra words {[fmt_w(x) for x in extra]}")

    m = audit_equivalences(g)
    print("items:", m.items)
    print("failed implications:", m.failed_implications())


if __name__ == "__main__":
    main()
