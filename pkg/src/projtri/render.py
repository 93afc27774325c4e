"""SVG drawings of P² triangulations in the hemisphere disk model.

Each direction is shown by its copy in the closed upper hemisphere,
projected orthographically onto the disk.  Edges are great-circle arcs; an
arc that dips below the equator continues from the antipodal rim point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .surface import FAST_CHECKS, edge_key


@dataclass(frozen=True)
class RenderOptions:
    size: int = 800
    samples: int = 32  # points per edge arc
    labels: bool = False
    validate: bool = True


def _unit(v):
    x = [float(c) for c in v]
    r = math.sqrt(sum(c * c for c in x))
    return [c / r for c in x]


def _upper(u):
    """The copy of ``u`` in the closed upper hemisphere (ties broken on x, then y)."""
    for c in (u[2], u[1], u[0]):
        if c > 0:
            return u
        if c < 0:
            return [-x for x in u]
    return u


def _slerp(a, b, t, omega):
    if omega < 1e-12:
        return a
    s = math.sin(omega)
    wa, wb = math.sin((1 - t) * omega) / s, math.sin(t * omega) / s
    return [wa * x + wb * y for x, y in zip(a, b)]


def arc_segments(a, b, samples=32):
    """Pieces of the arc from ``a`` to ``b`` folded into the upper hemisphere."""
    a, b = _unit(a), _unit(b)
    omega = math.acos(max(-1.0, min(1.0, sum(x * y for x, y in zip(a, b)))))
    pts = [_slerp(a, b, i / samples, omega) for i in range(samples + 1)]
    n = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    # the arc meets the equator along n x e3
    rim = _unit([n[1], -n[0], 0.0]) if abs(n[0]) + abs(n[1]) > 1e-15 else None
    upper = pts[0][2] >= 0
    segments, cur = [], []
    for p in pts:
        side = p[2] > 0 or (p[2] == 0 and upper)
        if side != upper and rim is not None:
            x = rim if sum(u * v for u, v in zip(rim, p)) > 0 else [-c for c in rim]
            end = x if upper else [-c for c in x]
            cur.append(end)
            segments.append(cur)
            cur = [[-c for c in end]]
            upper = side
        cur.append(p if upper else [-c for c in p])
    segments.append(cur)
    return [s for s in segments if len(s) > 1]


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def render_svg(doc, options: RenderOptions | None = None) -> str:
    """SVG text for a :class:`~projtri.pipeline.TriangulationDocument`."""
    opt = options or RenderOptions()
    size = opt.size
    c = size / 2
    r = size / 2 - 20

    def xy(u):
        return _fmt(c + r * u[0]), _fmt(c - r * u[1])

    problems = []
    if opt.validate:
        try:
            report = doc.triangulation().validate(checks=FAST_CHECKS)
            problems = report.failed()
        except Exception as exc:  # a broken document still gets drawn
            problems = [f"unreadable: {exc}"]

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        "<style>.edge{fill:none;stroke:#345;stroke-width:1}"
        ".vertex{fill:#c33;stroke:#fff;stroke-width:1}"
        ".pseudo{fill:#fff;stroke:#36c;stroke-width:2}"
        ".rim{fill:none;stroke:#999;stroke-dasharray:4 3}"
        ".warning{fill:#fdd;stroke:#c00}</style>",
        f'<circle class="rim" cx="{_fmt(c)}" cy="{_fmt(c)}" r="{_fmt(r)}"/>',
    ]

    arcs = {}
    for verts, normal in zip(doc.faces, doc.planes):
        for i, j in ((0, 1), (1, 2), (2, 0)):
            e = edge_key(verts[i], verts[j])
            if e in arcs:
                continue
            reps = []
            for v in e:
                p = doc.vertices[v]
                s = sum(float(x) * float(y) for x, y in zip(normal, p))
                reps.append(p if s >= 0 else tuple(-x for x in p))
            arcs[e] = reps
    for e in sorted(arcs):
        for seg in arc_segments(*arcs[e], samples=opt.samples):
            pts = [xy(u) for u in seg]
            d = "M" + " L".join(f"{x} {y}" for x, y in pts)
            out.append(f'<path class="edge" data-edge="{e[0]}-{e[1]}" d="{d}"/>')

    pseudo = set(doc.meta.get("pseudo", []))
    for k, v in enumerate(doc.vertices):
        x, y = xy(_upper(_unit(v)))
        cls = "vertex pseudo" if k in pseudo else "vertex"
        rad = 5 if k in pseudo else 4
        out.append(f'<circle class="{cls}" data-vertex="{k}" cx="{x}" cy="{y}" r="{rad}"/>')
        if opt.labels:
            out.append(f'<text x="{x}" y="{y}" dx="6" dy="-6" font-size="11">{k}</text>')

    if problems:
        text = "validation failed: " + ", ".join(problems)
        out.append(
            f'<g class="warning"><rect class="warning" x="0" y="0" width="{size}" height="22"/>'
            f'<text x="6" y="15" font-size="13" fill="#900">{_escape(text)}</text></g>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
