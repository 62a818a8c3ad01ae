#!/usr/bin/env python3
"""Walk through the library API on an eleven-layer conv/pool chain.

Run from the repository root:

    python scripts/demo_analysis.py
"""

from __future__ import annotations

from fieldscope import (
    build_analysis,
    erf_bottom_up,
    parse_dsl,
    pf_size_set,
    render_analysis_table,
    render_footprint,
    render_topdown_table,
    rf_top_down,
)

CHAIN = """\
network demo-chain
conv 9 s1
pool 2 s2
conv 9 s1
pool 2 s2
conv 9 s1
pool 2 s2
conv 5 s1
conv 9 s1
conv 11 s1
conv 11 s1
conv 11 s1
"""


def main() -> None:
    network = parse_dsl(CHAIN)

    print("== one forward pass gives every layer's ERF ==")
    trace = erf_bottom_up(network)
    print([pair[0] for pair in trace.values])
    print()

    print("== the same numbers, as the analyze table ==")
    print(render_analysis_table(build_analysis(network)), end="")
    print()

    print("== walking layer 11 back down to the input ==")
    projection = rf_top_down(network, 11)
    print(render_topdown_table(network, projection), end="")
    print()

    print("== where one boundary-0 output lands in layer 1 ==")
    print(pf_size_set(network, 0))
    print()

    print("== layer 5 drawn onto everything below it ==")
    print(render_footprint(network, rf_top_down(network, 5)), end="")


if __name__ == "__main__":
    main()
