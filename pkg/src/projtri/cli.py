"""Command line interface: ``projtri triangulate|validate|render|selftest``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .errors import ParseError, ProjtriError
from .pipeline import STRATEGIES, PipelineConfig, PointSetDocument, TriangulationDocument, build, to_document, validate_file
from .render import RenderOptions, render_svg

log = logging.getLogger("projtri")


def _write(path, text):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise ParseError(f"cannot write {path}: {exc.strerror}") from None


def cmd_triangulate(args) -> int:
    strategies = tuple(s.strip() for s in args.seed_strategy.split(",") if s.strip())
    try:
        cfg = PipelineConfig(
            arithmetic=args.arithmetic,
            tolerance=args.tolerance,
            seed_strategies=strategies,
            shuffle=args.shuffle,
            sample_seed=args.sample_seed,
            validate=args.validate,
            tiling_samples=args.tiling_samples,
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    doc = PointSetDocument.load(args.input)
    result = build(doc, cfg)
    out = to_document(result, cfg, doc.labels)
    _write(args.output, out.to_json())
    if args.obj:
        _write(args.obj, out.to_obj())
    V, E, F = result.tri.counts()
    print(f"V={V} E={E} F={F} chi={V - E + F} merged={len(result.merged)}")
    if result.report is not None and not result.report.ok:
        print(f"validation failed: {', '.join(result.report.failed())}", file=sys.stderr)
        return 5
    return 0


def cmd_validate(args) -> int:
    report = validate_file(args.file, tiling_samples=args.samples, seed=args.seed)
    for name, check in report.checks.items():
        extra = "" if check.passed else f"  {check.counterexamples[:5]}"
        print(f"{name:18s} {'pass' if check.passed else 'FAIL'}{extra}")
    print(f"V={report.V} E={report.E} F={report.F} chi={report.chi}")
    return 0 if report.ok else 5


def cmd_render(args) -> int:
    doc = TriangulationDocument.load(args.file)
    _write(args.output, render_svg(doc, RenderOptions(size=args.size, labels=args.labels)))
    return 0


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    summary = run_selftest(random_count=args.random, seed=args.seed)
    for line in summary.lines():
        print(line)
    return 0 if summary.ok else 5


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="projtri", description="Triangulate the real projective plane from homogeneous points.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("triangulate", help="triangulate a JSON point set")
    t.add_argument("--input", "-i", required=True)
    t.add_argument("--output", "-o", required=True)
    t.add_argument("--arithmetic", choices=("exact", "float"), default="exact")
    t.add_argument("--tolerance", type=float, default=1e-12)
    t.add_argument("--seed-strategy", default=",".join(STRATEGIES), help="comma-separated order")
    t.add_argument("--shuffle", type=int, default=None, metavar="SEED", help="insert in a random order")
    t.add_argument("--validate", choices=("off", "fast", "full"), default="fast")
    t.add_argument("--tiling-samples", type=int, default=10_000)
    t.add_argument("--sample-seed", type=int, default=0)
    t.add_argument("--obj", help="also write a topology-only OBJ mesh")
    t.set_defaults(func=cmd_triangulate)

    v = sub.add_parser("validate", help="check a triangulation document")
    v.add_argument("file")
    v.add_argument("--samples", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("render", help="draw a triangulation document as SVG")
    r.add_argument("file")
    r.add_argument("-o", "--output", required=True)
    r.add_argument("--size", type=int, default=800)
    r.add_argument("--labels", action="store_true")
    r.set_defaults(func=cmd_render)

    s = sub.add_parser("selftest", help="compare the kernel against the brute-force oracles")
    s.add_argument("--random", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    level = os.environ.get("PROJTRI_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except ProjtriError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
