"""Tabulate the groups generated by transitive covariant involution families for small index sets."""

import argparse
import time

from wedgelab.coxeter import enumerate_families, group_labels

MODES = ("all-fixed", "nonabelian-pairing", "unconstrained")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=6)
    args = parser.parse_args()
    start = time.perf_counter()
    print(f"{'n':>2}  {'mode':<20} families  groups")
    for n in range(1, args.max_n + 1):
        for mode in MODES:
            found = enumerate_families(n, mode)
            labels = sorted(set(group_labels(found)))
            print(f"{n:>2}  {mode:<20} {len(found):>8}  {', '.join(labels) or '-'}")
    print(f"done in {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
