"""Compare the Galois-pair certificates with the marginal-gap alignment test on every
grid representation of the normal greedoids up to N letters."""

import argparse
from collections import Counter
from fractions import Fraction

from greedoid_lab.harness import enumerate_greedoids
from greedoid_lab.greatest import search_representations
from greedoid_lab.polymatroid import check_galois, is_aligned


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=3, choices=range(0, 5))
    args = ap.parse_args()

    tally = Counter()
    for n in range(args.max_n + 1):
        for g in enumerate_greedoids(n, normal_only=True):
            reps = search_representations(g, max_solutions=10**6)
            reps += [r for r in search_representations(g, step=Fraction(1, 2), cap=g.basic_rank + 1,
                                                        max_solutions=10**6) if r not in reps]
            for r in reps:
                pair = check_galois(r, g)
                aligned = is_aligned(r, g).ok
                connection = pair.adjunction.ok and pair.cover_preserving.ok
                tally["representations"] += 1
                tally["integral"] += r.integral
                tally["aligned"] += aligned
                tally["insertion"] += pair.insertion.ok
                tally["mismatch"] += connection != aligned
    for key in ("representations", "integral", "aligned", "insertion", "mismatch"):
        print(f"{key}\t{tally[key]}")


if __name__ == "__main__":
    main()
