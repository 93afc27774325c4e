#!/usr/bin/env python3
"""Triangulate a small random point set and draw it on the projective disk.

    python3 scripts/demo_render.py --n 25 --out demo.svg
"""

import argparse
import random
from pathlib import Path

from projtri import PipelineConfig, PointSetDocument, triangulate
from projtri.render import RenderOptions, render_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=25)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", default="demo.svg")
    ap.add_argument("--labels", action="store_true")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    pts = [tuple(rng.randint(-50, 50) for _ in range(3)) for _ in range(args.n)]
    doc = triangulate(PointSetDocument(pts), PipelineConfig(validate="full"))
    Path(args.out).write_text(render_svg(doc, RenderOptions(labels=args.labels)))
    c = doc.meta["counts"]
    print(f"V={c['V']} E={c['E']} F={c['F']} valid={doc.meta['validation']['ok']} -> {args.out}")


if __name__ == "__main__":
    main()
