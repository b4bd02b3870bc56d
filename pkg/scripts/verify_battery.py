"""Run every verification suite over a battery of instances.

The driver behind `plabicflow verify`, looped over several Grassmannian
instances with a per-instance wall-clock report.  Exit status is nonzero if
any suite reports FAIL.

Example:
    python scripts/verify_battery.py --level 2
"""

import argparse
import time
from dataclasses import dataclass, field

from plabicflow import cli


@dataclass
class Config:
    instances: list = field(default_factory=lambda: ["2,4", "2,5", "3,6"])
    level: int = 2


def parse_args() -> Config:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--kn", action="append", default=None,
        help="instance, e.g. 2,5 (repeatable; default 2,4 2,5 3,6)",
    )
    ap.add_argument("--level", type=int, default=2,
                    help="max level for the point-count suite")
    ns = ap.parse_args()
    cfg = Config(level=ns.level)
    if ns.kn:
        cfg.instances = ns.kn
    return cfg


def main() -> int:
    cfg = parse_args()
    failures = 0
    for kn in cfg.instances:
        t0 = time.perf_counter()
        rc = cli.main(["verify", "all", "--kn", kn, "--level", str(cfg.level)])
        dt = time.perf_counter() - t0
        print(f"# {kn}: exit {rc} in {dt:.2f}s")
        failures += rc != 0
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
