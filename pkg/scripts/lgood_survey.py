"""Run the L-good necessary-condition check over representation spheres
and random wedges of them, and tally the verdicts."""

import argparse
import random
from collections import Counter

from bredon.corpus import builtin
from bredon.errors import DisconnectedComplex
from bredon.homotopy import lgood_check

PIECES = ["eps", "eps^2", "sigma", "lambda(1)", "lambda(2)", "lambda(1)+eps", "trivial-sphere(3)"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--group", default="C4")
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally = Counter()
    for _ in range(args.samples):
        parts = rng.sample(PIECES, rng.randint(1, 3))
        desc = f"{args.group}:wedge({', '.join(parts)})"
        try:
            verdict = lgood_check(builtin(desc))
        except DisconnectedComplex as exc:
            print(f"{desc:55s} skipped: {exc}")
            continue
        tally[verdict.outcome] += 1
        detail = f"witness {verdict.witness}" if verdict.witness else f"k = {verdict.k}"
        print(f"{desc:55s} {verdict.outcome:26s} {detail}  dims {list(verdict.dims)}")
    print(dict(tally))


if __name__ == "__main__":
    main()
