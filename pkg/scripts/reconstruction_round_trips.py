"""Reconstruct seeded Poincaré and extended elements from their wedge maps and report the worst error."""

import argparse
import json
import time

from wedgelab.suites import reconstruction_round_trips


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restricted", type=int, default=500)
    parser.add_argument("--extended", type=int, default=100)
    parser.add_argument("--tol", type=float, default=1e-6)
    args = parser.parse_args()
    start = time.perf_counter()
    stats = reconstruction_round_trips(args.seed, args.restricted, args.extended, args.tol)
    stats["seconds"] = round(time.perf_counter() - start, 3)
    print(json.dumps(stats, indent=2))


if __name__ == "__main__":
    main()
