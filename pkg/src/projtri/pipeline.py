"""End-to-end triangulation: seed, six-vertex start, incremental insertion, I/O."""

from __future__ import annotations

import dataclasses
import json
import logging
import math
import random
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from .errors import CollinearObstruction, NoSeed, ParseError, ProjtriError
from .kernel import DEFAULT_TOL, canonical
from .seed import build_canonical, find_canonical, find_seed, largest_collinear, search_canonical
from .surface import FAST_CHECKS, Triangulation, ValidationReport

log = logging.getLogger(__name__)

VALIDATION_LEVELS = ("off", "fast", "full")
STRATEGIES = ("linecover", "exhaustive")


@dataclass(frozen=True)
class PipelineConfig:
    arithmetic: str = "exact"
    tolerance: float = DEFAULT_TOL
    seed_strategies: tuple[str, ...] = STRATEGIES
    shuffle: int | None = None  # seed for a random insertion order; None keeps input order
    sample_seed: int = 0
    validate: str = "fast"
    tiling_samples: int = 10_000
    # without six general-position points, look for a canonical set directly
    canonical_fallback: bool = True

    def __post_init__(self):
        if self.arithmetic not in ("exact", "float"):
            raise ValueError(f"arithmetic must be 'exact' or 'float', not {self.arithmetic!r}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.validate not in VALIDATION_LEVELS:
            raise ValueError(f"validate must be one of {VALIDATION_LEVELS}")
        bad = [s for s in self.seed_strategies if s not in STRATEGIES]
        if bad or not self.seed_strategies:
            raise ValueError(f"unknown seed strategies {bad}; choose from {STRATEGIES}")
        object.__setattr__(self, "seed_strategies", tuple(self.seed_strategies))

    @property
    def exact(self) -> bool:
        return self.arithmetic == "exact"

    def echo(self) -> dict:
        d = dataclasses.asdict(self)
        d["seed_strategies"] = list(self.seed_strategies)
        return d


# --------------------------------------------------------------------------
# scalars


def parse_scalar(x, where="") -> Fraction:
    """Exact value of a JSON coordinate: int, Decimal, decimal or "p/q" string."""
    if isinstance(x, bool):
        raise ParseError(f"{where}: boolean is not a coordinate")
    if isinstance(x, (int, Decimal, Fraction)):
        value = Fraction(x)
    elif isinstance(x, float):
        if not math.isfinite(x):
            raise ParseError(f"{where}: non-finite coordinate {x!r}")
        value = Fraction(Decimal(repr(x)))
    elif isinstance(x, str):
        try:
            value = Fraction(x.strip())
        except (ValueError, ZeroDivisionError, InvalidOperation):
            raise ParseError(f"{where}: cannot parse {x!r} as a rational number") from None
    else:
        raise ParseError(f"{where}: unsupported coordinate {x!r}")
    return value


def dump_scalar(x):
    if isinstance(x, float):
        return x
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _loads(text: str, source: str):
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON ({exc})") from None


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _triple(row, where) -> tuple:
    if not isinstance(row, list) or len(row) != 3:
        raise ParseError(f"{where}: expected a list of three coordinates")
    return tuple(parse_scalar(x, where) for x in row)


# --------------------------------------------------------------------------
# input documents


@dataclass
class PointSetDocument:
    points: list[tuple]
    labels: list | None = None

    @classmethod
    def from_json(cls, text: str, source="<input>") -> PointSetDocument:
        data = _loads(text, source)
        if not isinstance(data, dict) or not isinstance(data.get("points"), list):
            raise ParseError(f'{source}: expected an object with a "points" list')
        points = []
        for i, row in enumerate(data["points"]):
            p = _triple(row, f"{source}: point {i}")
            if not any(p):
                raise ParseError(f"{source}: point {i} is the zero vector")
            points.append(p)
        labels = data.get("labels")
        if labels is not None and (not isinstance(labels, list) or len(labels) != len(points)):
            raise ParseError(f"{source}: labels must be a list with one entry per point")
        return cls(points, labels)

    @classmethod
    def load(cls, path) -> PointSetDocument:
        return cls.from_json(_read(path), str(path))

    def to_json(self) -> str:
        data = {"points": [[dump_scalar(x) for x in p] for p in self.points]}
        if self.labels is not None:
            data["labels"] = self.labels
        return json.dumps(data)


def _convert(p, exact: bool) -> tuple:
    if exact:
        return canonical(tuple(Fraction(x) for x in p))
    return canonical(tuple(float(x) for x in p))


def deduplicate(points, exact=True):
    """Canonical points in first-seen order, the input index of each, and merges."""
    kept, origin, merged = [], [], []
    seen: dict[tuple, int] = {}
    for i, p in enumerate(points):
        q = _convert(p, exact)
        if q in seen:
            merged.append([origin[seen[q]], i])
            continue
        seen[q] = len(kept)
        kept.append(q)
        origin.append(i)
    return kept, origin, merged


# --------------------------------------------------------------------------
# triangulation


@dataclass
class Build:
    """Live result of :func:`build`: the structure and its bookkeeping."""

    tri: Triangulation
    vertex: dict[int, int]  # index into the deduplicated points -> vertex id
    points: list[tuple]
    origin: list[int]
    merged: list
    seed: tuple[int, ...]
    canonical: tuple[tuple[int, ...], tuple[int, ...]]
    restarts: int = 0
    steps: int = 0
    report: ValidationReport | None = None


def _local_check(tri: Triangulation, v: int, new_faces) -> None:
    if tri.euler_characteristic() != 1:
        raise AssertionError(f"Euler characteristic {tri.euler_characteristic()} after inserting {v}")
    for fid in new_faces:
        for e in tri.face_edges(fid):
            if len(tri.edges[e]) != 2:
                raise AssertionError(f"edge {e} has {len(tri.edges[e])} faces after inserting {v}")


def _canonical_set(points, cfg: PipelineConfig):
    try:
        seed = find_seed(points, cfg.seed_strategies, cfg.tolerance)
    except NoSeed:
        if not cfg.canonical_fallback or len(points) < 6:
            raise
        on_line = largest_collinear(points, cfg.tolerance)
        n, m = len(points), len(on_line)
        if m >= n - 1:
            # every 4-subset then has three collinear points: no quadrangulation at all
            raise NoSeed(f"{m} of {n} points are collinear; no four points are in general position") from None
        if m == n - 2:
            # any quad takes two points of the line, so the other two lie on a quad line
            raise CollinearObstruction(
                f"{m} of {n} points are collinear: no two points lie in different pseudo-point "
                "regions of any quadrangulation, so six of these points cannot triangulate P²"
            ) from None
        log.info("no general-position seed; searching for a canonical set directly")
        try:
            cs = search_canonical(points, tol=cfg.tolerance)
        except NoSeed:
            raise NoSeed(
                "no six points in general position were found and no quadrangulation of the "
                "input has two further points in different regions"
            ) from None
        return (), cs
    return seed.indices, find_canonical(points, seed, cfg.tolerance)


def build(doc: PointSetDocument, cfg: PipelineConfig = PipelineConfig(), on_insert=None, debug=False) -> Build:
    """Triangulate the document's points; ``on_insert(build, vertex)`` runs after each insertion."""
    points, origin, merged = deduplicate(doc.points, cfg.exact)
    for keep, drop in merged:
        log.warning("point %d duplicates point %d and was merged", drop, keep)
    if len(points) < 6:
        raise NoSeed(f"only {len(points)} distinct points; at least six are needed")
    seed, cs = _canonical_set(points, cfg)
    tri, vmap = build_canonical(points, cs, cfg.tolerance, debug=debug)
    out = Build(tri, dict(vmap), points, origin, merged, tuple(seed), (cs.quad, cs.extras))

    order = [i for i in range(len(points)) if i not in vmap]
    if cfg.shuffle is not None:
        random.Random(cfg.shuffle).shuffle(order)
    last = vmap[cs.extras[-1]]
    checked = cfg.validate != "off"
    for i in order:
        p = points[i]
        trace = tri.locate(p, start=last)
        out.restarts += trace.restarts
        out.steps += len(trace.faces)
        if trace.status == "found":
            v, new = tri.split_face(trace.face, p)
        elif trace.status == "on_edge":
            v, new = tri.split_edge(trace.edge, p)
        else:
            # only reachable in float mode, where distinct canonical floats can be equivalent
            keep = next(j for j, w in out.vertex.items() if w == trace.vertex)
            log.warning("point %d coincides with point %d within tolerance and was merged", origin[i], origin[keep])
            out.merged.append([origin[keep], origin[i]])
            continue
        out.vertex[i] = v
        last = v
        if checked:
            _local_check(tri, v, new)
        if on_insert is not None:
            on_insert(out, v)

    if cfg.validate == "fast":
        out.report = tri.validate(checks=FAST_CHECKS)
    elif cfg.validate == "full":
        out.report = tri.validate(tiling_samples=cfg.tiling_samples, seed=cfg.sample_seed)
    return out


@dataclass
class TriangulationDocument:
    vertices: list[tuple]
    faces: list[tuple[int, int, int]]
    planes: list[tuple]
    meta: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.meta.get("arithmetic", "exact") == "exact"

    def to_json(self) -> str:
        data = {
            "vertices": [[dump_scalar(x) for x in v] for v in self.vertices],
            "faces": [list(f) for f in self.faces],
            "planes": [[dump_scalar(x) for x in n] for n in self.planes],
            "meta": self.meta,
        }
        return json.dumps(data, indent=1, sort_keys=True) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def from_json(cls, text: str, source="<document>") -> TriangulationDocument:
        data = _loads(text, source)
        if not isinstance(data, dict):
            raise ParseError(f"{source}: expected a JSON object")
        for key in ("vertices", "faces", "planes"):
            if not isinstance(data.get(key), list):
                raise ParseError(f'{source}: missing "{key}" list')
        meta = data.get("meta") or {}
        if not isinstance(meta, dict):
            raise ParseError(f'{source}: "meta" must be an object')
        meta = json.loads(json.dumps(meta, default=float))  # Decimals back to plain floats
        exact = meta.get("arithmetic", "exact") == "exact"

        def num(row, where):
            t = _triple(row, where)
            return t if exact else tuple(float(x) for x in t)

        vertices = [num(r, f"{source}: vertex {i}") for i, r in enumerate(data["vertices"])]
        if any(not any(v) for v in vertices):
            raise ParseError(f"{source}: a vertex is the zero vector")
        faces = []
        for i, f in enumerate(data["faces"]):
            if (
                not isinstance(f, list)
                or len(f) != 3
                or not all(type(x) is int and 0 <= x < len(vertices) for x in f)
            ):
                raise ParseError(f"{source}: face {i} must be three vertex indices in range")
            faces.append(tuple(f))
        planes = [num(r, f"{source}: plane {i}") for i, r in enumerate(data["planes"])]
        if len(planes) != len(faces):
            raise ParseError(f"{source}: {len(faces)} faces but {len(planes)} planes")
        return cls(vertices, faces, planes, meta)

    @classmethod
    def load(cls, path) -> TriangulationDocument:
        return cls.from_json(_read(path), str(path))

    def triangulation(self, tol=None) -> Triangulation:
        tol = tol if tol is not None else self.meta.get("config", {}).get("tolerance", DEFAULT_TOL)
        pseudo = self.meta.get("pseudo", [])
        return Triangulation.from_faces(self.vertices, self.faces, self.planes, pseudo=pseudo, tol=tol)

    def to_obj(self) -> str:
        """Wavefront OBJ of the face list, vertices on the unit sphere.

        Topology only: P² has no embedding in R³, so the mesh overlaps itself.
        """
        lines = ["# projective plane triangulation (topology only)"]
        for v in self.vertices:
            x = [float(c) for c in v]
            r = math.sqrt(sum(c * c for c in x))
            lines.append("v " + " ".join(f"{c / r:.12g}" for c in x))
        lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in self.faces]
        return "\n".join(lines) + "\n"


def to_document(result: Build, cfg: PipelineConfig, labels=None) -> TriangulationDocument:
    tri = result.tri
    order = sorted(result.vertex)  # deduplicated index order == input order
    position = {result.vertex[i]: k for k, i in enumerate(order)}
    vertices = [tri.points[result.vertex[i]] for i in order]
    rows = []
    for face in tri.faces.values():
        idx = [position[v] for v in face.vertices]
        rows.append((tuple(sorted(idx)), face.plane.normal))
    rows.sort(key=lambda r: r[0])
    V, E, F = tri.counts()
    input_index = [result.origin[i] for i in order]
    meta = {
        "arithmetic": cfg.arithmetic,
        "counts": {"V": V, "E": E, "F": F},
        "chi": V - E + F,
        "config": cfg.echo(),
        "input_index": input_index,
        "merged": sorted(result.merged),
        "pseudo": [],
        "seed": [result.origin[i] for i in result.seed],
        "canonical": {
            "quad": [result.origin[i] for i in result.canonical[0]],
            "extras": [result.origin[i] for i in result.canonical[1]],
        },
        "walk": {"steps": result.steps, "restarts": result.restarts},
        "validation": result.report.summary() if result.report else None,
    }
    if labels is not None:
        meta["labels"] = [labels[i] for i in input_index]
    return TriangulationDocument(vertices, [r[0] for r in rows], [r[1] for r in rows], meta)


def triangulate(doc: PointSetDocument, cfg: PipelineConfig = PipelineConfig()) -> TriangulationDocument:
    return to_document(build(doc, cfg), cfg, doc.labels)


def validate_file(doc, tiling_samples=10_000, seed=0) -> ValidationReport:
    """Full validation, including sampled tiling, of a document or a path to one."""
    if not isinstance(doc, TriangulationDocument):
        doc = TriangulationDocument.load(doc)
    try:
        tri = doc.triangulation()
    except (ValueError, ProjtriError) as exc:
        raise ParseError(f"document does not describe a triangulation: {exc}") from None
    return tri.validate(tiling_samples=tiling_samples, seed=seed)
