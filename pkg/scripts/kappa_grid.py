"""Print the MaxDiag grid of a subset on the rectangles seed.

Example:
    python scripts/kappa_grid.py --kn 4,9 --subset 1,4,5,7
shows the values arranged in the k x (n-k) rectangle layout, the level-1
membership check, and the subset recovered by decomposition.
"""

import argparse
from dataclasses import dataclass

from plabicflow.combinat import parse_ksubset
from plabicflow.cones import (
    GTPattern,
    cone_contains,
    gt_decompose,
    gt_inequalities,
    grid_label,
)
from plabicflow.seeds import kappa_vector, rectangles_seed


@dataclass
class Config:
    k: int
    n: int
    subset: tuple


def parse_args() -> Config:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kn", default="4,9", help="instance, e.g. 4,9")
    ap.add_argument("--subset", default="1,4,5,7", help="k-subset of 1..n")
    ns = ap.parse_args()
    k, n = (int(x) for x in ns.kn.split(","))
    return Config(k, n, parse_ksubset(ns.subset, n))


def main() -> int:
    cfg = parse_args()
    s = rectangles_seed(cfg.k, cfg.n)
    kv = kappa_vector(s, cfg.subset)
    w = cfg.n - cfg.k
    print(f"kappa grid of I={cfg.subset} on the ({cfg.k},{cfg.n}) seed")
    print(f"star {s.quiver.star}: {kv[s.quiver.star]}")
    for t in range(1, cfg.k + 1):
        row = []
        for sx in range(1, w + 1):
            lab = grid_label(cfg.k, cfg.n, t, sx)
            row.append(f"{lab}={kv[lab]}")
        print("  " + "  ".join(row))
    point = {v: c for v, c in kv.items() if v != s.quiver.star}
    cone = gt_inequalities(cfg.k, cfg.n)
    print("level-1 member:", cone_contains(cone, {**point, "r": 1}))
    back = gt_decompose(GTPattern(cfg.k, cfg.n, 1, point))
    print("decomposes to:", back)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
