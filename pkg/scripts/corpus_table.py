"""Print reduced Bredon cohomology of the builtin corpus at every level,
next to the orbit-space oracle, and flag any disagreement."""

import argparse
import time

from bredon.cohomology import cohomology, quotient_oracle
from bredon.corpus import corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--unreduced", action="store_true")
    args = ap.parse_args()
    reduced = not args.unreduced
    start = time.perf_counter()
    bad = 0
    for name, x in corpus():
        cells = [len(c) for c in x.cells]
        print(f"{name}  (orbit cells per dim {cells})")
        for level in reversed(x.group.levels):
            got = cohomology(x, level=level, reduced=reduced).dims
            want = quotient_oracle(x, level, reduced).dims
            flag = "" if got == want else f"   MISMATCH oracle={want}"
            bad += got != want
            print(f"    P{level}: {got}{flag}")
    print(f"\n{bad} mismatches, {time.perf_counter() - start:.2f}s")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
