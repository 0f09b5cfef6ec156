"""Grow a small universal window from a planar seed and export it.

    python scripts/window_demo.py --depth 3 --breadth 2 --dot window.dot
"""

import argparse
import json

from minoruniv.cli import export_dot
from minoruniv.cliquesum import decompose, verify_decomposition
from minoruniv.graph import cycle_graph
from minoruniv.minor import has_k5_minor
from minoruniv.universal import universal_window


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed-cycle", type=int, default=4, help="seed host is a cycle of this length")
    ap.add_argument("--depth", type=int, default=2)
    ap.add_argument("--breadth", type=int, default=2)
    ap.add_argument("--dot")
    ap.add_argument("--json")
    args = ap.parse_args(argv)

    w = universal_window(cycle_graph(args.seed_cycle), args.depth, args.breadth)
    g = w.glued
    ok = verify_decomposition(g, decompose(g, "K5"))
    print(f"nodes {len(w.node_color)}, glued graph {g.n} vertices / {g.m} edges, decomposes: {ok}")
    if g.n <= 25:
        print(f"brute-force K5 minor: {has_k5_minor(g)}")
    if args.dot:
        labels = {v: f"{v}" for v in g.vertices}
        with open(args.dot, "w") as fh:
            fh.write(export_dot(g, labels=labels, name="window"))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(w.to_dict(), fh, indent=1)


if __name__ == "__main__":
    main()
