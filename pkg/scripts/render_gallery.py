"""Render SVG diagrams for all bundled curves into one directory."""

import argparse
from pathlib import Path

import numpy as np

from selflink.diagram import save_svg
from selflink.fileio import load_link
from selflink.writhe import self_linking

CURVE_DIR = Path(__file__).resolve().parent.parent / "curves"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="gallery")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for path in sorted(CURVE_DIR.glob("*.json")):
        link = load_link(path)
        report = self_linking(link, rng=np.random.default_rng(args.seed))
        target = out / (path.stem + ".svg")
        save_svg(target, link, report)
        census = report.census
        print(f"{target}  value {report.value:+d}  "
              f"({census['crossings']} crossings, {census['solitary']} "
              f"solitary, {census['imaginaryPairs']} imaginary pairs)")


if __name__ == "__main__":
    main()
