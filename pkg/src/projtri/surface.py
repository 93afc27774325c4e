"""Triangulations of P² as an unoriented vertex/edge/face incidence structure.

P² is non-orientable, so there is no consistent half-edge orientation to
store.  Faces keep their vertex triple and a distinguishing plane; edges are
keyed by their sorted vertex pair and remember which faces use them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import (
    NotFlippable,
    NotInRegion,
    NotInterior,
    NotOnEdge,
    NotPseudo,
    WalkStuck,
)
from .kernel import (
    DEFAULT_TOL,
    EDGE_VERTICES,
    INSIDE,
    ON_EDGE,
    ON_VERTEX,
    OUTSIDE,
    Classification,
    DistinguishingPlane,
    Location,
    PreparedTriangle,
    canonical,
    collinear,
    cross,
    distinguishing_plane_for,
    dot,
    equivalent,
    neg,
    norm,
    sign,
)

log = logging.getLogger(__name__)

_EDGE_BY_SUM = {1: 0, 3: 1, 2: 2}


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass
class Face:
    vertices: tuple[int, int, int]
    plane: DistinguishingPlane
    prepared: PreparedTriangle | None = field(default=None, repr=False, compare=False)


@dataclass
class WalkTrace:
    """Faces visited by :meth:`Triangulation.locate` and where it stopped.

    ``status`` is ``"found"``, ``"on_edge"`` or ``"on_vertex"``; ``face`` is
    the face whose test succeeded, ``edge``/``vertex`` are set for the
    boundary cases.  ``restarts`` counts abandoned degenerate walks.
    """

    faces: list[int]
    status: str
    face: int
    edge: tuple[int, int] | None = None
    vertex: int | None = None
    restarts: int = 0


@dataclass
class CheckResult:
    passed: bool
    counterexamples: list = field(default_factory=list)


@dataclass
class ValidationReport:
    checks: dict[str, CheckResult]
    V: int
    E: int
    F: int

    @property
    def chi(self) -> int:
        return self.V - self.E + self.F

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, c in self.checks.items() if not c.passed]

    def summary(self) -> dict:
        return {
            "V": self.V,
            "E": self.E,
            "F": self.F,
            "chi": self.chi,
            "ok": self.ok,
            "checks": {k: c.passed for k, c in self.checks.items()},
        }


FAST_CHECKS = ("simple", "edge_degree", "vertex_links", "euler", "plane_separation")


class Triangulation:
    def __init__(self, tol: float = DEFAULT_TOL, debug: bool = False):
        self.points: dict[int, tuple] = {}
        self.pseudo: set[int] = set()
        self.faces: dict[int, Face] = {}
        self.edges: dict[tuple[int, int], set[int]] = {}
        self.tol = tol
        self.debug = debug
        self._vertex_faces: dict[int, set[int]] = {}
        self._index: dict[tuple, int] = {}
        self._next_vertex = 0
        self._next_face = 0

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def from_faces(cls, points, faces, planes, pseudo=(), tol=DEFAULT_TOL):
        """Build from vertex coordinates (ids = list positions) and faces."""
        tri = cls(tol=tol)
        for p in points:
            vid = tri._next_vertex
            tri._next_vertex += 1
            tri.points[vid] = canonical(tuple(p))
            tri._index.setdefault(tri.points[vid], vid)
            tri._vertex_faces[vid] = set()
        tri.pseudo = set(pseudo)
        for verts, normal in zip(faces, planes):
            tri.add_face(tuple(verts), DistinguishingPlane(tuple(normal)))
        return tri

    def copy(self) -> Triangulation:
        out = Triangulation(self.tol, self.debug)
        out.points = dict(self.points)
        out.pseudo = set(self.pseudo)
        out.faces = {k: Face(f.vertices, f.plane, f.prepared) for k, f in self.faces.items()}
        out.edges = {k: set(v) for k, v in self.edges.items()}
        out._vertex_faces = {k: set(v) for k, v in self._vertex_faces.items()}
        out._index = dict(self._index)
        out._next_vertex = self._next_vertex
        out._next_face = self._next_face
        return out

    def add_vertex(self, point, pseudo: bool = False) -> int:
        key = canonical(tuple(point))
        if key in self._index:
            raise ValueError(f"point {key} is already vertex {self._index[key]}")
        vid = self._next_vertex
        self._next_vertex += 1
        self.points[vid] = key
        self._index[key] = vid
        self._vertex_faces[vid] = set()
        if pseudo:
            self.pseudo.add(vid)
        return vid

    def remove_vertex(self, v: int) -> None:
        if self._vertex_faces.get(v):
            raise ValueError(f"vertex {v} still has incident faces")
        key = self.points.pop(v)
        if self._index.get(key) == v:
            del self._index[key]
        del self._vertex_faces[v]
        self.pseudo.discard(v)

    def add_face(self, vertices, plane: DistinguishingPlane) -> int:
        fid = self._next_face
        self._next_face += 1
        self.faces[fid] = Face(tuple(vertices), plane)
        for k in range(3):
            i, j = EDGE_VERTICES[k]
            self.edges.setdefault(edge_key(vertices[i], vertices[j]), set()).add(fid)
        for v in set(vertices):
            self._vertex_faces[v].add(fid)
        return fid

    def remove_face(self, fid: int) -> Face:
        face = self.faces.pop(fid)
        for e in self.face_edges_of(face.vertices):
            s = self.edges[e]
            s.discard(fid)
            if not s:
                del self.edges[e]
        for v in set(face.vertices):
            self._vertex_faces[v].discard(fid)
        return face

    # ------------------------------------------------------------------
    # queries

    @staticmethod
    def face_edges_of(vertices) -> list[tuple[int, int]]:
        return [edge_key(vertices[i], vertices[j]) for i, j in EDGE_VERTICES]

    def face_edges(self, fid: int) -> list[tuple[int, int]]:
        return self.face_edges_of(self.faces[fid].vertices)

    def edge_index(self, fid: int, edge: tuple[int, int]) -> int:
        return self.face_edges(fid).index(edge_key(*edge))

    def neighbor(self, fid: int, edge) -> int | None:
        others = [f for f in self.edges.get(edge_key(*edge), ()) if f != fid]
        return min(others) if others else None

    def neighbors(self, fid: int) -> tuple:
        return tuple(self.neighbor(fid, e) for e in self.face_edges(fid))

    def faces_around(self, v: int) -> list[int]:
        return sorted(self._vertex_faces[v])

    def vertex_of(self, point) -> int | None:
        return self._index.get(canonical(tuple(point)))

    def counts(self) -> tuple[int, int, int]:
        return len(self.points), len(self.edges), len(self.faces)

    def euler_characteristic(self) -> int:
        V, E, F = self.counts()
        return V - E + F

    def prepared(self, fid: int) -> PreparedTriangle:
        face = self.faces[fid]
        if face.prepared is None:
            a, b, c = (self.points[v] for v in face.vertices)
            face.prepared = PreparedTriangle(a, b, c, face.plane, self.tol)
        return face.prepared

    def classify(self, fid: int, p) -> Classification:
        prep = self.faces[fid].prepared
        return (prep or self.prepared(fid)).classify(p)

    def representatives(self, fid: int) -> dict[int, tuple]:
        """Vertex id -> the copy of its point on the positive side of the plane."""
        face = self.faces[fid]
        return {v: face.plane.representative(self.points[v], self.tol) for v in face.vertices}

    def link_cycle(self, v: int) -> list[int] | None:
        """Vertices around ``v`` in cyclic order, or None if the link is not one cycle."""
        adj: dict[int, list[int]] = {}
        for fid in self._vertex_faces[v]:
            verts = self.faces[fid].vertices
            if verts.count(v) != 1:
                return None
            x, y = (w for w in verts if w != v)
            adj.setdefault(x, []).append(y)
            adj.setdefault(y, []).append(x)
        if not adj or any(len(n) != 2 for n in adj.values()):
            return None
        start = min(adj)
        cycle, prev, cur = [start], None, start
        while True:
            a, b = adj[cur]
            nxt = b if a == prev else a
            if nxt == start:
                break
            if nxt in cycle:
                return None
            cycle.append(nxt)
            prev, cur = cur, nxt
        return cycle if len(cycle) == len(adj) else None

    # ------------------------------------------------------------------
    # point location

    def locate(self, p, start: int | None = None, max_restarts: int | None = None) -> WalkTrace:
        """Walk along the line from ``start`` to ``p`` until a face contains p.

        A walk whose line runs through a vertex or along an edge is abandoned
        and restarted from another vertex, at most ``max_restarts`` times
        (default: the number of vertices).
        """
        p = tuple(p)
        if start is None or start not in self.points:
            start = min(self.points)
        budget = len(self.points) if max_restarts is None else max_restarts
        tried = {start}
        ring = sorted(self.points)
        ring_pos = ring.index(start)
        restarts = 0
        t = start
        while True:
            trace: list[int] = []
            result = self._walk(p, t, trace)
            if result[0] != "degenerate":
                status, fid, payload = result
                out = WalkTrace(trace, status, fid, restarts=restarts)
                if status == "on_edge":
                    out.edge = payload
                elif status == "on_vertex":
                    out.vertex = payload
                return out
            restarts += 1
            if restarts > budget:
                raise WalkStuck(f"gave up locating {p} after {budget} restarts")
            stuck = result[1]
            line = cross(self.points[t], p)
            t = None
            if stuck is not None:
                for w in self.faces[stuck].vertices:
                    if w not in tried and sign(dot(self.points[w], line), norm(self.points[w]) * norm(line), self.tol):
                        t = w
                        break
            while t is None:
                ring_pos = (ring_pos + 1) % len(ring)
                if ring[ring_pos] not in tried:
                    t = ring[ring_pos]
                elif len(tried) >= len(ring):
                    raise WalkStuck(f"every vertex tried while locating {p}")
            tried.add(t)
            log.debug("walk to %s restarted from vertex %d", p, t)

    def _result(self, fid: int, cls: Classification):
        if cls is INSIDE:
            return ("found", fid, None)
        verts = self.faces[fid].vertices
        if cls.location is Location.ON_EDGE:
            i, j = EDGE_VERTICES[cls.index]
            return ("on_edge", fid, edge_key(verts[i], verts[j]))
        return ("on_vertex", fid, verts[cls.index])

    def _crosses(self, fid: int, line, k: int):
        """True if ``line`` crosses edge k of the face strictly inside it.

        None when it meets the edge at a vertex or contains it.
        """
        verts = self.faces[fid].vertices
        i, j = EDGE_VERTICES[k]
        e_line = cross(self.points[verts[i]], self.points[verts[j]])
        x = cross(line, e_line)
        if type(x[0]) is float:
            xx = x[0] * x[0] + x[1] * x[1] + x[2] * x[2]
            if xx <= self.tol * self.tol * dot(line, line) * dot(e_line, e_line):
                return None
        elif not (x[0] or x[1] or x[2]):
            return None
        cls = self.classify(fid, x)
        if cls is ON_EDGE[k]:
            return True
        if cls.location is Location.ON_VERTEX:
            return None
        return False

    def _walk(self, p, t: int, trace: list[int]):
        pt = self.points[t]
        around = self.faces_around(t)
        for fid in around:
            cls = self.classify(fid, p)
            if cls is not OUTSIDE:
                trace.append(fid)
                return self._result(fid, cls)
        line = cross(pt, p)
        cur, exit_k = None, None
        for fid in around:
            k = (self.faces[fid].vertices.index(t) + 1) % 3
            if self._crosses(fid, line, k):
                cur, exit_k = fid, k
                break
        if cur is None:
            return ("degenerate", around[0] if around else None)
        trace.append(cur)
        faces, edges = self.faces, self.edges
        for _ in range(2 * len(faces) + 10):
            verts = faces[cur].vertices
            i, j = EDGE_VERTICES[exit_k]
            u, w = verts[i], verts[j]
            nxt = None
            for f in edges[(u, w) if u < w else (w, u)]:
                if f != cur:
                    nxt = f
            if nxt is None:
                return ("degenerate", cur)
            trace.append(nxt)
            cls = self.classify(nxt, p)
            if cls is not OUTSIDE:
                return self._result(nxt, cls)
            nv = faces[nxt].vertices
            # edges (0,1), (1,2), (2,0) have index sums 1, 3, 2
            entry = _EDGE_BY_SUM[nv.index(u) + nv.index(w)]
            k1, k2 = (entry + 1) % 3, (entry + 2) % 3
            if self._crosses(nxt, line, k1):
                exit_k = k1
            elif self._crosses(nxt, line, k2):
                exit_k = k2
            else:
                return ("degenerate", nxt)
            cur = nxt
        return ("degenerate", cur)

    # ------------------------------------------------------------------
    # mutations

    def _check(self):
        if self.debug:
            report = self.validate()
            if not report.ok:
                raise AssertionError(f"triangulation invalid after mutation: {report.failed()}")

    def split_face(self, fid: int, p) -> tuple[int, tuple[int, int, int]]:
        """Insert ``p`` inside face ``fid``; children keep the parent's plane.

        Returns the new vertex id and the three child face ids.
        """
        if self.classify(fid, p) is not INSIDE:
            raise NotInterior(f"{tuple(p)} is not inside face {fid}")
        face = self.remove_face(fid)
        a, b, c = face.vertices
        v = self.add_vertex(p)
        new = (
            self.add_face((a, v, b), face.plane),
            self.add_face((b, v, c), face.plane),
            self.add_face((c, v, a), face.plane),
        )
        self._check()
        return v, new

    def split_edge(self, edge, p) -> tuple[int, tuple[int, ...]]:
        """Insert ``p`` strictly inside ``edge``; both faces split in two."""
        e = edge_key(*edge)
        fids = sorted(self.edges.get(e, ()))
        if len(fids) != 2:
            raise NotOnEdge(f"edge {e} does not have two faces")
        for fid in fids:
            if self.classify(fid, p) is not ON_EDGE[self.edge_index(fid, e)]:
                raise NotOnEdge(f"{tuple(p)} is not strictly inside edge {e}")
        v = self.add_vertex(p)
        new = []
        for fid in fids:
            k = self.edge_index(fid, e)
            face = self.remove_face(fid)
            verts = face.vertices
            xi, xj, o = verts[k], verts[(k + 1) % 3], verts[(k + 2) % 3]
            new.append(self.add_face((xi, v, o), face.plane))
            new.append(self.add_face((v, xj, o), face.plane))
        self._check()
        return v, tuple(new)

    def _aligned_reps(self, fids, anchor: int, anchor_rep=None) -> dict[int, tuple]:
        """Representatives of all vertices of ``fids`` on one spherical copy.

        Each face contributes the copy that shares ``anchor``'s representative,
        so faces glued around ``anchor`` stay glued on the sphere.
        """
        reps: dict[int, tuple] = {}
        if anchor_rep is None:
            anchor_rep = self.representatives(fids[0])[anchor]
        reps[anchor] = anchor_rep
        for fid in fids:
            r = self.representatives(fid)
            if r[anchor] != anchor_rep:
                r = {k: neg(v) for k, v in r.items()}
            for k, v in r.items():
                if reps.setdefault(k, v) != v:
                    raise ValueError(f"faces around vertex {anchor} do not share one copy")
        return reps

    def flip_edge(self, edge) -> tuple[int, int]:
        """Replace ``edge`` by the other diagonal of its two faces.

        Refused when the new diagonal already exists or when the quadrilateral
        is not strictly convex on the sphere.
        """
        e = edge_key(*edge)
        fids = sorted(self.edges.get(e, ()))
        if len(fids) != 2:
            raise NotFlippable("geometry", f"edge {e} does not have exactly two faces")
        f, g = fids
        a, b = e
        u = next(x for x in self.faces[f].vertices if x not in e)
        w = next(x for x in self.faces[g].vertices if x not in e)
        if u == w or edge_key(u, w) in self.edges:
            raise NotFlippable("non-simple", f"{u} and {w} are already adjacent")
        rf = self.representatives(f)
        rg = self.representatives(g)
        if rg[a] != rf[a]:
            rg = {k: neg(v) for k, v in rg.items()}
        if rg[b] != rf[b]:
            raise NotFlippable("geometry", f"faces {f} and {g} do not share one copy of edge {e}")
        A, B, U, W = rf[a], rf[b], rf[u], rg[w]
        if not self._diagonals_cross(A, B, U, W):
            raise NotFlippable("geometry", f"quadrilateral around edge {e} is not strictly convex")
        self.remove_face(f)
        self.remove_face(g)
        self.add_face((u, w, a), distinguishing_plane_for(U, W, A, self.tol))
        self.add_face((u, w, b), distinguishing_plane_for(U, W, B, self.tol))
        self._check()
        return edge_key(u, w)

    def _diagonals_cross(self, A, B, U, W) -> bool:
        # x spans both diagonal planes; write x = l*A + m*B = s*U + t*W
        ab, uw = cross(A, B), cross(U, W)
        x = cross(uw, ab)
        tol = self.tol
        sc = norm(x) * norm(A) * norm(B) * norm(ab) + 1e-300
        l = sign(dot(cross(x, B), ab), sc, tol)
        m = sign(dot(cross(A, x), ab), sc, tol)
        sc = norm(x) * norm(U) * norm(W) * norm(uw) + 1e-300
        s = sign(dot(cross(x, W), uw), sc, tol)
        t = sign(dot(cross(U, x), uw), sc, tol)
        return l != 0 and l == m and s == t and s == l

    def _region_container(self, v: int, p):
        for fid in self.faces_around(v):
            cls = self.classify(fid, p)
            verts = self.faces[fid].vertices
            if cls is INSIDE:
                return fid
            if cls.location is Location.ON_EDGE and v in (verts[i] for i in EDGE_VERTICES[cls.index]):
                return fid
            if cls.location is Location.ON_VERTEX and verts[cls.index] == v:
                return fid
        return None

    def in_region(self, v: int, p) -> bool:
        """True if ``p`` lies in the open star of ``v``."""
        return self._region_container(v, p) is not None

    def replace_pseudo_star(self, v: int, p) -> int:
        """Swap pseudo-point ``v`` for ``p`` and cone ``p`` to v's link."""
        if v not in self.pseudo:
            raise NotPseudo(f"vertex {v} is not a pseudo-point")
        container = self._region_container(v, p)
        if container is None:
            raise NotInRegion(f"{tuple(p)} is not inside the region of pseudo-point {v}")
        cycle = self.link_cycle(v)
        if cycle is None:
            raise ValueError(f"link of {v} is not a cycle")
        cplane = self.faces[container].plane
        vref = cplane.representative(self.points[v], self.tol)
        region = self.faces_around(v)
        reps = self._aligned_reps([container] + [f for f in region if f != container], v, vref)
        p_rep = vref if equivalent(p, self.points[v], self.tol) else cplane.representative(tuple(p), self.tol)
        for fid in region:
            self.remove_face(fid)
        self.remove_vertex(v)
        nv = self.add_vertex(p)
        n = len(cycle)
        for i in range(n):
            x, y = cycle[i], cycle[(i + 1) % n]
            self.add_face((nv, x, y), distinguishing_plane_for(p_rep, reps[x], reps[y], self.tol))
        self._check()
        return nv

    def fill_pseudo_region(self, v: int, diagonal) -> tuple[int, int]:
        """Delete pseudo-point ``v`` and split its 4-gon region by ``diagonal``."""
        if v not in self.pseudo:
            raise NotPseudo(f"vertex {v} is not a pseudo-point")
        cycle = self.link_cycle(v)
        x, y = diagonal
        if cycle is None or len(cycle) != 4 or x not in cycle or y not in cycle:
            raise ValueError(f"{diagonal} is not a diagonal of the region of {v}")
        i = cycle.index(x)
        if cycle[(i + 2) % 4] != y:
            raise ValueError(f"{diagonal} joins adjacent boundary vertices")
        if edge_key(x, y) in self.edges:
            raise NotFlippable("non-simple", f"{x} and {y} are already adjacent")
        region = self.faces_around(v)
        reps = self._aligned_reps(region, v)
        if not self._diagonals_cross(reps[x], reps[y], reps[cycle[(i + 1) % 4]], reps[cycle[(i + 3) % 4]]):
            raise NotFlippable("geometry", f"region of {v} is not a convex quadrilateral")
        for fid in region:
            self.remove_face(fid)
        self.remove_vertex(v)
        out = tuple(
            self.add_face((x, y, k), distinguishing_plane_for(reps[x], reps[y], reps[k], self.tol))
            for k in (cycle[(i + 1) % 4], cycle[(i + 3) % 4])
        )
        self._check()
        return out

    # ------------------------------------------------------------------
    # validation

    def validate(self, tiling_samples: int = 0, seed: int = 0, checks=None) -> ValidationReport:
        """Combinatorial and geometric checks for a triangulation of P²."""
        V, E, F = self.counts()
        wanted = set(checks or FAST_CHECKS + (("tiling",) if tiling_samples else ()))
        out: dict[str, CheckResult] = {}

        if "simple" in wanted:
            bad, seen = [], {}
            for fid, face in sorted(self.faces.items()):
                key = tuple(sorted(face.vertices))
                if len(set(key)) != 3 or any(v not in self.points for v in key):
                    bad.append(fid)
                elif key in seen:
                    bad.append((seen[key], fid))
                else:
                    seen[key] = fid
            out["simple"] = CheckResult(not bad, bad)

        if "edge_degree" in wanted:
            bad = sorted(e for e, fs in self.edges.items() if len(fs) != 2)
            out["edge_degree"] = CheckResult(not bad, bad)

        if "vertex_links" in wanted:
            bad = sorted(v for v in self.points if self.link_cycle(v) is None)
            out["vertex_links"] = CheckResult(not bad, bad)

        if "euler" in wanted:
            chi = V - E + F
            out["euler"] = CheckResult(chi == 1, [] if chi == 1 else [chi])

        if "plane_separation" in wanted:
            bad = []
            for fid, face in sorted(self.faces.items()):
                pts = [self.points.get(v) for v in face.vertices]
                if (
                    any(q is None for q in pts)
                    or collinear(*pts, tol=self.tol)
                    or not face.plane.separates(*pts, tol=self.tol)
                ):
                    bad.append(fid)
            out["plane_separation"] = CheckResult(not bad, bad)

        if "tiling" in wanted:
            from .oracle import sample_tiling

            if out.get("plane_separation", CheckResult(True)).passed:
                rep = sample_tiling(self, tiling_samples or 10_000, seed=seed, tol=self.tol)
                out["tiling"] = CheckResult(rep.ok, rep.violations[:10])
            else:
                out["tiling"] = CheckResult(False, ["skipped: planes do not separate"])

        return ValidationReport(out, V, E, F)
