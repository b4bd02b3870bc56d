"""Count lattice points of the pattern cone level by level.

For each requested instance the script enumerates the level-r slice of the
cumulative pattern cone and compares the count with the hook-content
dimension formula, reporting timing per level.

Example:
    python scripts/count_points.py --kn 2,5 --levels 3
"""

import argparse
import time
from dataclasses import dataclass

from plabicflow.cones import gt_inequalities, lattice_points, weyl_dim


@dataclass
class Config:
    instances: list
    levels: int


def parse_args() -> Config:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--kn", action="append", default=None,
        help="instance, e.g. 2,5 (repeatable; default 2,4 2,5 3,6)",
    )
    ap.add_argument("--levels", type=int, default=2, help="max level")
    ns = ap.parse_args()
    raw = ns.kn or ["2,4", "2,5", "3,6"]
    instances = [tuple(int(x) for x in kn.split(",")) for kn in raw]
    return Config(instances, ns.levels)


def main() -> int:
    cfg = parse_args()
    ok = True
    for k, n in cfg.instances:
        cone = gt_inequalities(k, n)
        for r in range(cfg.levels + 1):
            t0 = time.perf_counter()
            count = len(lattice_points(cone, r))
            dim = weyl_dim(k, n, r)
            dt = time.perf_counter() - t0
            mark = "ok" if count == dim else "MISMATCH"
            ok = ok and count == dim
            print(f"({k},{n}) r={r}: {count} points, formula {dim} "
                  f"[{mark}, {dt:.3f}s]")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
