"""Brute-force oracles used by the test-suite, validation and ``selftest``.

Nothing here shares code with the s-mapping route in :mod:`projtri.kernel`:
cone membership solves a linear system by Gaussian elimination over
``Fraction`` and reads the signs of the coefficients.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, SingularFrame
from .kernel import (
    DEFAULT_TOL,
    INSIDE,
    ON_EDGE,
    ON_VERTEX,
    OUTSIDE,
    Classification,
    collinear,
)


@dataclass(frozen=True)
class ConeQuery:
    """Fixed representatives a, b, c of a triangle copy and a direction d."""

    a: tuple
    b: tuple
    c: tuple
    d: tuple


def solve3(columns, rhs):
    """Solve ``sum_k x_k columns[k] = rhs`` exactly; None if singular."""
    rows = [[Fraction(columns[k][i]) for k in range(3)] + [Fraction(rhs[i])] for i in range(3)]
    for col in range(3):
        pivot = next((r for r in range(col, 3) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        piv = rows[col][col]
        rows[col] = [x / piv for x in rows[col]]
        for r in range(3):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(rows[i][3] for i in range(3))


def oracle_cone_membership(q: ConeQuery) -> Classification:
    coef = solve3((q.a, q.b, q.c), q.d)
    if coef is None:
        raise SingularFrame(f"representatives {q.a}, {q.b}, {q.c} are dependent")
    signs = [(x > 0) - (x < 0) for x in coef]
    nonzero = [s for s in signs if s]
    if len(nonzero) == 3 and len(set(nonzero)) == 1:
        return INSIDE
    if len(nonzero) == 2 and len(set(nonzero)) == 1:
        zero = signs.index(0)
        # alpha = 0 leaves d in span(b, c): edge bc
        return ON_EDGE[{0: 1, 1: 2, 2: 0}[zero]]
    if len(nonzero) == 1:
        return ON_VERTEX[signs.index(nonzero[0])]
    return OUTSIDE


@dataclass
class TilingReport:
    count: int
    histogram: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)
    resampled: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations and set(self.histogram) <= {1}


def face_representatives(plane, vertices):
    return [plane.representative(v) for v in vertices]


def sample_tiling(tri, count=10_000, seed=0, tol=DEFAULT_TOL, exact=False) -> TilingReport:
    """Count, for random unit directions, how many faces contain them.

    A triangulation of P² puts every generic direction in exactly one face.
    Directions within ``tol`` of a face boundary are redrawn.  The default
    vectorised path certifies each sign with a forward error bound far below
    ``tol``; ``exact=True`` classifies every pair with
    :func:`oracle_cone_membership` instead (slow, small inputs only).
    """
    rng = np.random.default_rng(seed)
    faces = [face_representatives(f.plane, [tri.points[v] for v in f.vertices]) for f in tri.faces.values()]
    report = TilingReport(count=count)
    if not faces:
        report.histogram[0] = count
        report.violations = list(range(min(count, 10)))
        return report
    reps = np.array([[[float(x) for x in r] for r in f] for f in faces])  # (F, 3, 3)
    a, b, c = reps[:, 0], reps[:, 1], reps[:, 2]
    crosses = np.stack([np.cross(b, c), np.cross(c, a), np.cross(a, b)], axis=1)  # (F, 3, 3)
    na, nb, nc = (np.linalg.norm(x, axis=1) for x in (a, b, c))
    bounds = np.stack([nb * nc, nc * na, na * nb], axis=1)  # (F, 3)
    margin = max(tol, 1e-12)

    done = 0
    drawn = 0
    chunk = 500
    while done < count:
        need = min(chunk, count - done)
        dirs = rng.normal(size=(need, 3))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        drawn += need
        if exact:
            counts, ambiguous = _exact_counts(faces, dirs)
        else:
            s = np.einsum("nk,fjk->nfj", dirs, crosses)
            m = margin * bounds[None, :, :]
            pos = s > m
            negv = s < -m
            inside = pos.all(axis=2) | negv.all(axis=2)
            out = pos.any(axis=2) & negv.any(axis=2)
            ambiguous = ~(inside | out).all(axis=1)
            counts = inside.sum(axis=1)
        for i in range(need):
            if ambiguous[i]:
                report.resampled += 1
                continue
            report.histogram[int(counts[i])] += 1
            if counts[i] != 1:
                report.violations.append(tuple(float(x) for x in dirs[i]))
            done += 1
        if drawn > 20 * count + 1000:
            break
    return report


def _exact_counts(faces, dirs):
    counts, ambiguous = [], []
    for d in dirs:
        dq = tuple(Fraction(float(x)) for x in d)
        n, amb = 0, False
        for reps in faces:
            cls = oracle_cone_membership(ConeQuery(*reps, dq))
            if cls is INSIDE:
                n += 1
            elif cls is not OUTSIDE:
                amb = True
        counts.append(n)
        ambiguous.append(amb)
    return counts, ambiguous


def brute_force_general_position(points, budget=25):
    """All 6-subsets (as index tuples) with no three points collinear."""
    n = len(points)
    if n > budget:
        raise BudgetExceeded(f"{n} points exceed the enumeration budget of {budget}")
    bad = set()
    for i, j, k in itertools.combinations(range(n), 3):
        if collinear(points[i], points[j], points[k]):
            bad.add((i, j, k))
    out = []
    for six in itertools.combinations(range(n), 6):
        if not any(t in bad for t in itertools.combinations(six, 3)):
            out.append(six)
    return out


def four_subsets_all_degenerate(points) -> bool:
    """True when every 4-subset contains three collinear points."""
    return all(
        any(collinear(*(points[i] for i in t)) for t in itertools.combinations(four, 3))
        for four in itertools.combinations(range(len(points)), 4)
    )


def max_collinear(points) -> int:
    """Size of the largest collinear subset (brute force over lines)."""
    n = len(points)
    if n < 3:
        return n
    best = 2
    for i, j in itertools.combinations(range(n), 2):
        on = sum(1 for k in range(n) if collinear(points[i], points[j], points[k]))
        best = max(best, on)
    return best


def expected_six_subsets(n: int) -> int:
    return math.comb(n, 6)
