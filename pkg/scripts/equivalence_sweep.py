#!/usr/bin/env python3
"""Randomized formula-vs-oracle sweep with timing stats.

Samples chains, runs the full equivalence check on each, and reports how
long the closed forms and the brute-force oracle took. Exits 1 on the first
disagreement (none are known).

    python scripts/equivalence_sweep.py --trials 2000 --seed 7
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from fieldscope import check_equivalence, random_network, render_equivalence


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-layers", type=int, default=8)
    parser.add_argument("--max-filter", type=int, default=11)
    parser.add_argument("--max-stride", type=int, default=4)
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    layer_total = 0
    gapped = 0
    started = time.perf_counter()
    for trial in range(args.trials):
        network = random_network(
            rng,
            max_layers=args.max_layers,
            max_filter=args.max_filter,
            max_stride=args.max_stride,
            name=f"sweep-{trial}",
        )
        outcome = check_equivalence(network)
        layer_total += len(network.layers)
        gapped += sum(row.has_coverage_gaps for row in outcome.erf_rows)
        if not outcome.passed:
            print(f"disagreement at trial {trial}:", file=sys.stderr)
            sys.stderr.write(render_equivalence(outcome))
            return 1
    elapsed = time.perf_counter() - started
    rate = args.trials / elapsed if elapsed else float("inf")
    print(
        f"{args.trials} networks ({layer_total} layers) verified in "
        f"{elapsed:.2f} s ({rate:.0f} networks/s)"
    )
    print(f"{gapped} influence sets had coverage gaps along the way")
    return 0


if __name__ == "__main__":
    sys.exit(main())
