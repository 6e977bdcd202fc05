"""Audit every normal greedoid on 0..N letters and print the implication matrices.

    python3 scripts/run_survey.py --max-n 4 --out survey_out
"""

import argparse
import time
from pathlib import Path

from greedoid_lab.harness import survey


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=3, choices=range(0, 5))
    ap.add_argument("--out", default="survey_out")
    ap.add_argument("--labelled", action="store_true", help="keep letter permutations apart")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    out = Path(args.out)
    for n in range(args.max_n + 1):
        t0 = time.perf_counter()
        rep = survey(n, out_dir=out / f"n{n}", dedup=not args.labelled, workers=args.workers)
        dt = time.perf_counter() - t0
        print(f"== n={n}: {rep.total} instances, {len(rep.counterexamples)} counterexamples, {dt:.2f}s")
        print(rep.table())
        for key in sorted(rep.counts):
            print(f"  {key}: {rep.counts[key]}")
        (out / f"n{n}.tsv").write_text("\n".join(rep.lines()) + "\n")


if __name__ == "__main__":
    main()
