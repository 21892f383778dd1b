"""Run every bundled curve through the invariance checks.

For each file in curves/: compute the self-linking number, compare it
against the expected value recorded in the file, then recompute from
independent random centers and under random projective transforms.
"""

import argparse
import json
from pathlib import Path

import numpy as np

from selflink.fileio import load_link
from selflink.harness import (
    verify_center_independence,
    verify_transform_equivariance,
)
from selflink.writhe import self_linking

CURVE_DIR = Path(__file__).resolve().parent.parent / "curves"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=10,
                    help="independent centers per curve")
    ap.add_argument("--transforms", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    failures = 0
    for path in sorted(CURVE_DIR.glob("*.json")):
        meta = json.loads(path.read_text()).get("metadata", {})
        link = load_link(path)
        value = self_linking(link, rng=np.random.default_rng(args.seed)).value

        expected = meta.get("expectedSelfLinking")
        marks = []
        if expected is not None and value != expected:
            marks.append(f"expected {expected}")

        trials = verify_center_independence(link, trials=args.trials,
                                            seed=args.seed)
        if not trials.constant:
            marks.append(f"center-dependent: {sorted(set(trials.values))}")

        equiv = verify_transform_equivariance(link, args.transforms,
                                              seed=args.seed)
        bad = sum(not r.ok for r in equiv)
        if bad:
            marks.append(f"{bad} transform failures")

        status = "FAIL: " + "; ".join(marks) if marks else "ok"
        failures += bool(marks)
        print(f"{path.name:28s} sl = {value:+d}  "
              f"({len(trials.records)} centers, "
              f"{len(trials.censuses)} censuses)  {status}")

    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
