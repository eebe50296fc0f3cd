#!/usr/bin/env python3
"""Run the randomized property suites and print one summary line each.

    python scripts/run_suites.py                 # default sample counts
    python scripts/run_suites.py --seeds 0 1 2   # several seeds
    python scripts/run_suites.py --only beta --scale 5
"""

import argparse
import sys
from dataclasses import dataclass, field

from sttfol.suites import SUITES, SuiteConfig


@dataclass
class Config:
    seeds: list = field(default_factory=lambda: [0])
    scale: float = 1.0
    only: list = field(default_factory=lambda: list(SUITES))
    show_failures: int = 3


def parse_args(argv=None) -> Config:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--scale", type=float, default=1.0, help="multiply every sample count")
    p.add_argument("--only", nargs="+", choices=list(SUITES), default=list(SUITES))
    p.add_argument("--show-failures", type=int, default=3)
    a = p.parse_args(argv)
    return Config(a.seeds, a.scale, a.only, a.show_failures)


def main(argv=None) -> int:
    cfg = parse_args(argv)
    sys.setrecursionlimit(20000)
    bad = 0
    for seed in cfg.seeds:
        for name in cfg.only:
            fn, n = SUITES[name]
            res = fn(SuiteConfig(n=max(1, int(n * cfg.scale)), seed=seed,
                                 max_size=40 if name == "rewrite" else 30))
            print(f"seed {seed}  {res.summary()}")
            for k, detail in res.failures[:cfg.show_failures]:
                print(f"    sample {k}: {detail}")
            bad += not res.passed
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
