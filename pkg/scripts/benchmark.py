#!/usr/bin/env python3
"""Wall-clock and walk statistics of the pipeline against input size.

    python3 scripts/benchmark.py --sizes 100 500 1000 2000 --modes exact float
"""

import argparse
import random
import time

from projtri import PipelineConfig, PointSetDocument
from projtri.pipeline import build


def random_points(n, seed, spread=10**6):
    rng = random.Random(seed)
    return [tuple(rng.randint(-spread, spread) for _ in range(3)) for _ in range(n)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 500, 1000, 2000])
    ap.add_argument("--modes", nargs="+", choices=("exact", "float"), default=["exact", "float"])
    ap.add_argument("--validate", choices=("off", "fast", "full"), default="fast")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'mode':6s} {'n':>6s} {'seconds':>8s} {'steps':>9s} {'steps/n':>8s} {'restarts':>8s}  valid")
    for mode in args.modes:
        for n in args.sizes:
            doc = PointSetDocument(random_points(n, args.seed))
            start = time.perf_counter()
            res = build(doc, PipelineConfig(arithmetic=mode, validate=args.validate))
            elapsed = time.perf_counter() - start
            valid = "-" if res.report is None else res.report.ok
            print(f"{mode:6s} {n:6d} {elapsed:8.2f} {res.steps:9d} {res.steps / n:8.1f} {res.restarts:8d}  {valid}")


if __name__ == "__main__":
    main()
