"""Seed search and the six-point starting triangulation.

The construction runs in three stages: six points with no three collinear;
four of them (a K4-quadrangulation) whose six joining lines triangulate P²
with three pseudo-points, chosen so the remaining two points fall in the
regions of different pseudo-points; then both pseudo-points are replaced by
those points, one diagonal flip frees a diagonal, and the last pseudo-point
region is split by it.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from .errors import CollinearObstruction, DegenerateQuad, NoSeed, NotFlippable
from .kernel import (
    DEFAULT_TOL,
    INSIDE,
    ON_EDGE,
    canonical,
    collinear,
    distinguishing_plane_for,
    equivalent,
    incident,
    join,
    meet,
    neg,
)
from .kernel import PreparedTriangle
from .surface import Triangulation

log = logging.getLogger(__name__)

# pseudo-point k is the meet of quad lines PSEUDO_LINES[k][0] and [1]
PSEUDO_LINES = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
SIGN_PATTERNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class SeedSet:
    indices: tuple[int, ...]


@dataclass(frozen=True)
class CanonicalSet:
    quad: tuple[int, int, int, int]
    extras: tuple[int, int]


@dataclass
class InitialTriangulation:
    """Output of :func:`build_initial` plus the bookkeeping later steps need."""

    tri: Triangulation
    quad: tuple[int, int, int, int]  # vertex ids of the four quad points
    pseudo: tuple[int, int, int]  # vertex ids of the pseudo-points
    lines: dict  # pseudo id -> the two quad vertex pairs whose lines meet there

    def regions(self) -> dict[int, set[int]]:
        return {s: set(self.tri.faces_around(s)) for s in self.pseudo}

    def region_of(self, p) -> int | None:
        """Pseudo-point whose open star contains ``p``, located by walking."""
        tri = self.tri
        trace = tri.locate(p, start=self.quad[0])
        if trace.status == "found":
            verts = tri.faces[trace.face].vertices
            return next(v for v in verts if v in tri.pseudo)
        if trace.status == "on_edge":
            hit = [v for v in trace.edge if v in tri.pseudo]
            return hit[0] if hit else None
        return trace.vertex if trace.vertex in tri.pseudo else None


# --------------------------------------------------------------------------
# six points in general position


def _greedy_from(points, start, tol):
    chosen = [start]
    for i in range(len(points)):
        if i == start:
            continue
        p = points[i]
        if any(equivalent(p, points[j], tol) for j in chosen):
            continue
        if any(collinear(p, points[j], points[k], tol) for j, k in itertools.combinations(chosen, 2)):
            continue
        chosen.append(i)
        if len(chosen) == 6:
            return SeedSet(tuple(chosen))
    return None


def find_seed_exhaustive(points, tol=DEFAULT_TOL) -> SeedSet:
    """Greedy growth from every starting point in turn; O(n^2) worst case."""
    if len(points) < 6:
        raise NoSeed(f"only {len(points)} distinct points")
    for start in range(len(points)):
        seed = _greedy_from(points, start, tol)
        if seed is not None:
            return seed
    raise NoSeed()


def find_seed_linecover(points, tol=DEFAULT_TOL) -> SeedSet:
    """Pick two points, discard the rest of their line, repeat.

    Linear time whenever no four lines cover the input.
    """
    if len(points) < 6:
        raise NoSeed(f"only {len(points)} distinct points")
    alive = list(range(len(points)))
    chosen: list[int] = []

    def take(ok=lambda i: True):
        for pos, i in enumerate(alive):
            if ok(i):
                del alive[pos]
                chosen.append(i)
                return i
        raise NoSeed("line-cover strategy ran out of points")

    def discard_on(i, j):
        line = join(points[i], points[j], tol)
        alive[:] = [k for k in alive if not collinear(points[i], points[j], points[k], tol)]
        return line

    p1 = take()
    p2 = take(lambda i: not equivalent(points[i], points[p1], tol))
    discard_on(p1, p2)
    p3 = take()
    take(
        lambda i: not collinear(points[p1], points[p3], points[i], tol)
        and not collinear(points[p2], points[p3], points[i], tol)
    )
    for i, j in itertools.combinations(chosen, 2):
        discard_on(i, j)
    p5 = take()
    for i in chosen[:4]:
        discard_on(i, p5)
    take()
    return SeedSet(tuple(chosen))


def find_seed(points, strategies=("linecover", "exhaustive"), tol=DEFAULT_TOL) -> SeedSet:
    funcs = {"linecover": find_seed_linecover, "exhaustive": find_seed_exhaustive}
    for name in strategies:
        try:
            seed = funcs[name](points, tol)
            log.info("seed found by %s strategy: %s", name, seed.indices)
            return seed
        except NoSeed as exc:
            log.info("%s strategy failed: %s", name, exc)
    raise NoSeed()


def largest_collinear(points, tol=DEFAULT_TOL) -> list[int]:
    """Indices of a largest collinear subset, by grouping lines through each point."""
    n = len(points)
    best = list(range(min(n, 2)))
    for i in range(n - 2):
        groups: list[tuple[tuple, list[int]]] = []
        for j in range(i + 1, n):
            for line, members in groups:
                if incident(points[j], line, tol):
                    members.append(j)
                    break
            else:
                groups.append((join(points[i], points[j], tol), [i, j]))
        for _, members in groups:
            if len(members) > len(best):
                best = members
    return best


# --------------------------------------------------------------------------
# initial triangulation with pseudo-points


def build_initial(quad, tol=DEFAULT_TOL) -> InitialTriangulation:
    """Triangulate P² with four points and the three diagonal points.

    Every face has one pseudo-point and two quad points.  Which of the four
    double cones over a vertex triple is the face is decided by trying the
    sign patterns of the representatives and keeping the one whose closed
    cone holds no other vertex.
    """
    pts = [canonical(tuple(q)) for q in quad]
    for i, j, k in itertools.combinations(range(4), 3):
        if collinear(pts[i], pts[j], pts[k], tol):
            raise DegenerateQuad(f"quad points {i}, {j}, {k} are collinear")
    tri = Triangulation(tol)
    qv = tuple(tri.add_vertex(p) for p in pts)
    pseudo, lines, faces = [], {}, []
    for (i, j), (k, l) in PSEUDO_LINES:
        x = meet(join(pts[i], pts[j], tol), join(pts[k], pts[l], tol), tol)
        s = tri.add_vertex(x, pseudo=True)
        pseudo.append(s)
        lines[s] = ((qv[i], qv[j]), (qv[k], qv[l]))
        # around s the lines alternate, so its link is i, k, j, l
        ring = (qv[i], qv[k], qv[j], qv[l])
        faces += [(s, ring[m], ring[(m + 1) % 4]) for m in range(4)]
    for verts in faces:
        tri.add_face(verts, _face_plane(tri, verts, tol))
    return InitialTriangulation(tri, qv, tuple(pseudo), lines)


def _face_plane(tri, verts, tol):
    a, b, c = (tri.points[v] for v in verts)
    others = [p for v, p in tri.points.items() if v not in verts]
    found = []
    for eb, ec in SIGN_PATTERNS:
        rb = b if eb > 0 else neg(b)
        rc = c if ec > 0 else neg(c)
        plane = distinguishing_plane_for(a, rb, rc, tol)
        cone = PreparedTriangle(a, b, c, plane, tol)
        if all(cone.classify(p) is not INSIDE and cone.classify(p) not in ON_EDGE for p in others):
            found.append(plane)
    if len(found) != 1:
        raise DegenerateQuad(f"face {verts} has {len(found)} admissible cones")
    return found[0]


# --------------------------------------------------------------------------
# canonical sets


def find_canonical(points, seed: SeedSet, tol=DEFAULT_TOL) -> CanonicalSet:
    """First 4-subset of the seed (lexicographic) splitting the other two."""
    idx = sorted(seed.indices)
    for quad in itertools.combinations(idx, 4):
        extras = tuple(i for i in idx if i not in quad)
        init = build_initial([points[i] for i in quad], tol)
        r = [init.region_of(points[e]) for e in extras]
        if None not in r and r[0] != r[1]:
            return CanonicalSet(quad, extras)
    raise NoSeed(f"no canonical set among seed {seed.indices}")


def search_canonical(points, max_quads=2000, tol=DEFAULT_TOL) -> CanonicalSet:
    """Canonical set anywhere in ``points``, without six in general position.

    Quads are tried in lexicographic order; the extras are the first point
    lying in some region and the first later point in a different one.
    """
    n = len(points)
    tried = 0
    for quad in itertools.combinations(range(n), 4):
        if any(collinear(*(points[i] for i in t), tol=tol) for t in itertools.combinations(quad, 3)):
            continue
        tried += 1
        if tried > max_quads:
            break
        init = build_initial([points[i] for i in quad], tol)
        first = None
        for e in range(n):
            if e in quad:
                continue
            r = init.region_of(points[e])
            if r is None:
                continue
            if first is None:
                first = (e, r)
            elif r != first[1]:
                return CanonicalSet(quad, (first[0], e))
    raise NoSeed("no canonical set (quadrangulation with two points in different regions)")


# --------------------------------------------------------------------------
# six-vertex triangulation


def build_canonical(points, cs: CanonicalSet, tol=DEFAULT_TOL, debug=False):
    """Triangulate P² with the six points of a canonical set.

    Returns the triangulation and a map from point index to vertex id.
    """
    init = build_initial([points[i] for i in cs.quad], tol)
    tri = init.tri
    tri.debug = debug
    vmap = dict(zip(cs.quad, init.quad))
    regions = [init.region_of(points[e]) for e in cs.extras]
    if None in regions or regions[0] == regions[1]:
        raise ValueError(f"extras {cs.extras} are not in two different regions")
    for e, s in zip(cs.extras, regions):
        vmap[e] = tri.replace_pseudo_star(s, points[e])
    (last,) = [s for s in init.pseudo if s not in regions]
    for diagonal in init.lines[last]:
        try:
            tri.flip_edge(diagonal)
        except NotFlippable as exc:
            log.info("flip of %s refused: %s", diagonal, exc)
            continue
        tri.fill_pseudo_region(last, diagonal)
        return tri, vmap
    raise CollinearObstruction()
