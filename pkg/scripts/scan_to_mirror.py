"""Walk a curve to its mirror image and log every jump of the invariant.

The straight path between a curve and its mirror is degenerate halfway
(the top-degree coefficients cancel), so the walk detours through one
random waypoint by default. Every wall crossing changes the value by
plus or minus 2 and the changes telescope to the difference of the
endpoint values.
"""

import argparse

import numpy as np

from selflink.curves import require_valid
from selflink.fileio import load_link
from selflink.harness import jump_scan, random_link
from selflink.writhe import self_linking


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("file", help="curve file to walk to its mirror")
    ap.add_argument("--steps", type=int, default=24)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--direct", action="store_true",
                    help="no waypoint: walk the degenerate straight path")
    args = ap.parse_args()

    link = load_link(args.file)
    require_valid(link)
    base = self_linking(link, rng=np.random.default_rng(args.seed)).value
    print(f"start value {base:+d}, mirror value {-base:+d}")

    degree = max(c.degree for c in link.components)
    via = () if args.direct else (
        random_link(np.random.default_rng(args.seed + 1), degree),)
    scan = jump_scan(link, link.mirror(), n_steps=args.steps,
                     seed=args.seed, via=via)

    for e in scan.events:
        pair = ", ".join(f"{z:.4g}" for z in e.pair)
        print(f"  wall at path parameter {e.param:.8f}: "
              f"value jumps {e.delta:+d} ({e.pair_kind} pair {pair})")
    print(f"jump sum {scan.jump_sum:+d}, expected {-2 * base:+d}")
    ok = scan.jump_sum == -2 * base
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
