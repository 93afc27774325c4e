"""Kernel-versus-oracle comparison suite behind ``projtri selftest``."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .kernel import DistinguishingPlane, PreparedTriangle, det3, dot
from .oracle import ConeQuery, oracle_cone_membership, sample_tiling
from .seed import build_canonical, build_initial, CanonicalSet

GRID = tuple(Fraction(2 * k + 1, 2) for k in range(-2, 3))  # odd halves -3/2 .. 5/2


@dataclass(frozen=True)
class Instance:
    a: tuple
    b: tuple
    c: tuple
    plane: tuple
    p: tuple

    def reps(self):
        """The copy of each vertex on the positive side of the plane."""
        return [v if dot(self.plane, v) > 0 else tuple(-x for x in v) for v in (self.a, self.b, self.c)]


def _random_plane(rng, tri, kind):
    for _ in range(200):
        if kind == "x":
            n = (rng.choice((-1, 1)) * rng.randint(1, 3), 0, 0)
        elif kind == "xy":
            n = (rng.randint(-4, 4), rng.choice((-1, 1)) * rng.randint(1, 4), 0)
        else:
            n = (rng.randint(-4, 4), rng.randint(-4, 4), rng.choice((-1, 1)) * rng.randint(1, 4))
        if all(dot(n, v) != 0 for v in tri):
            return n
    return None  # e.g. a vertex on the z axis lies on every plane with gamma = 0


def fixed_triangles(count=20, seed=7):
    """Non-degenerate integer triangles, each with a separating plane.

    Plane normals cycle through the three transform cases: general,
    third component zero, and only the first component nonzero.
    """
    rng = random.Random(seed)
    out = []
    kinds = ("xyz", "xy", "x")
    while len(out) < count:
        tri = [tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(3)]
        if det3(*tri) == 0:
            continue
        kind = kinds[len(out) % 3]
        n = _random_plane(rng, tri, kind)
        if n is not None:
            out.append((tri, n))
    return out


def grid_instances():
    """Every fixed triangle against every point of the odd 5x5x5 grid."""
    for tri, n in fixed_triangles():
        for p in itertools.product(GRID, repeat=3):
            yield Instance(*tri, n, p)


def random_instances(count=10_000, seed=0):
    """Random triangles, planes and queries biased towards boundary cases.

    Queries are small integer combinations of the vertices, so edges and
    vertices are hit often, then rescaled by a random nonzero factor.
    """
    rng = random.Random(seed)
    kinds = ("xyz", "xy", "x")
    made = 0
    while made < count:
        tri = [tuple(rng.randint(-6, 6) for _ in range(3)) for _ in range(3)]
        if det3(*tri) == 0:
            continue
        n = _random_plane(rng, tri, kinds[made % 3])
        if n is None:
            continue
        coef = [rng.randint(-2, 2) for _ in range(3)]
        if not any(coef):
            coef[rng.randrange(3)] = 1
        p = tuple(sum(k * v[i] for k, v in zip(coef, tri)) for i in range(3))
        lam = Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 9))
        yield Instance(*tri, n, tuple(lam * x for x in p))
        made += 1


def check(inst: Instance, float_mode=False):
    """(kernel, oracle) classifications for one instance."""
    reps = inst.reps()
    expected = oracle_cone_membership(ConeQuery(*reps, inst.p))
    if float_mode:
        tri = [tuple(float(x) for x in v) for v in (inst.a, inst.b, inst.c)]
        plane = DistinguishingPlane(tuple(float(x) for x in inst.plane))
        got = PreparedTriangle(*tri, plane).classify(tuple(float(x) for x in inst.p))
    else:
        got = PreparedTriangle(inst.a, inst.b, inst.c, DistinguishingPlane(inst.plane)).classify(inst.p)
    return got, expected


@dataclass
class Summary:
    counts: dict = field(default_factory=dict)
    disagreements: dict = field(default_factory=dict)
    tiling: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.disagreements.values()) and all(self.tiling.values())

    def lines(self):
        for name, n in self.counts.items():
            bad = self.disagreements[name]
            yield f"{name:14s} {n:6d} instances  {len(bad)} disagreements"
            for inst, got, exp in bad[:5]:
                yield f"    {inst}: kernel {got}, oracle {exp}"
        for name, ok in self.tiling.items():
            yield f"tiling {name:7s} {'pass' if ok else 'FAIL'}"
        yield "selftest " + ("passed" if self.ok else "FAILED")


def run_selftest(random_count=10_000, seed=0, tiling_samples=10_000) -> Summary:
    out = Summary()
    families = {
        "grid/exact": (grid_instances, False),
        "random/exact": (lambda: random_instances(random_count, seed), False),
        "random/float": (lambda: random_instances(random_count, seed), True),
    }
    for name, (make, float_mode) in families.items():
        n, bad = 0, []
        for inst in make():
            got, exp = check(inst, float_mode)
            n += 1
            if got != exp:
                bad.append((inst, got, exp))
        out.counts[name] = n
        out.disagreements[name] = bad

    frame = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    init = build_initial(frame)
    out.tiling["initial"] = sample_tiling(init.tri, tiling_samples, seed=seed).ok
    pts = frame + [(1, 2, 4), (4, 2, 1)]
    tri, _ = build_canonical(pts, CanonicalSet((0, 1, 2, 3), (4, 5)))
    out.tiling["canonical"] = sample_tiling(tri, tiling_samples, seed=seed).ok
    return out
