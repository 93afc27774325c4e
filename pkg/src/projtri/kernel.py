"""Homogeneous-coordinate primitives and the in-triangle test on P².

Two arithmetic modes share one code path.  Coordinates that are Python
``int`` or ``Fraction`` are *exact*: every sign decision is made on exact
integers.  Coordinates that are ``float`` run in *float* mode, where a sign is
zero whenever the value is within ``tol`` of zero relative to the magnitude of
its inputs.

Points, lines and plane normals are plain 3-tuples as far as the arithmetic is
concerned; :class:`ProjectivePoint` and :class:`ProjectiveLine` are tuple
subclasses holding a canonical representative, so equality and hashing are
up to nonzero scale.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AllAtInfinity, DegenerateJoin, DegenerateMeet, DegenerateTriangle

DEFAULT_TOL = 1e-12

Vec = Sequence  # a 3-sequence of int | Fraction | float


# --------------------------------------------------------------------------
# raw vector arithmetic


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(u, v, w):
    """Determinant of the matrix with rows u, v, w."""
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def neg(v):
    return (-v[0], -v[1], -v[2])


def norm(v) -> float:
    return math.sqrt(float(v[0]) ** 2 + float(v[1]) ** 2 + float(v[2]) ** 2)


def is_exact(v) -> bool:
    return not (isinstance(v[0], float) or isinstance(v[1], float) or isinstance(v[2], float))


def sign(value, scale=0.0, tol=DEFAULT_TOL) -> int:
    """Sign of ``value``; floats within ``tol * scale`` of zero count as zero."""
    if isinstance(value, float) and abs(value) <= tol * scale:
        return 0
    return (value > 0) - (value < 0)


def _integral(v) -> tuple:
    """Positive multiple of an exact vector with integer entries."""
    if all(type(x) is int for x in v):
        return tuple(v)
    fr = [Fraction(x) for x in v]
    den = math.lcm(*(f.denominator for f in fr))
    return tuple(int(f * den) for f in fr)


def _vanishes(v, scale, tol) -> bool:
    if is_exact(v):
        return v[0] == 0 and v[1] == 0 and v[2] == 0
    return norm(v) <= tol * scale


# --------------------------------------------------------------------------
# canonical representatives


def canonical(coords) -> tuple:
    """Canonical representative of a nonzero homogeneous triple.

    Exact input becomes the primitive integer vector whose first nonzero entry
    is positive.  Float input is divided by its first nonzero entry.
    """
    if len(coords) != 3:
        raise ValueError(f"expected 3 homogeneous coordinates, got {len(coords)}")
    if any(isinstance(c, float) for c in coords):
        xs = tuple(float(c) for c in coords)
        if not all(math.isfinite(c) for c in xs):
            raise ValueError(f"non-finite coordinate in {coords!r}")
        for lead in xs:
            if lead != 0.0:
                return tuple(c / lead for c in xs)
        raise ValueError("the zero vector is not a projective point")
    if all(type(c) is int for c in coords):
        ints = coords
    else:
        fr = [Fraction(c) for c in coords]
        den = math.lcm(*(f.denominator for f in fr))
        ints = [int(f * den) for f in fr]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("the zero vector is not a projective point")
    lead = next(c for c in ints if c != 0)
    if lead < 0:
        g = -g
    return (ints[0] // g, ints[1] // g, ints[2] // g)


class _Homogeneous(tuple):
    __slots__ = ()

    def __new__(cls, *coords):
        if len(coords) == 1:
            coords = tuple(coords[0])
        return super().__new__(cls, canonical(coords))

    @property
    def exact(self) -> bool:
        return is_exact(self)

    def __eq__(self, other):
        if isinstance(other, _Homogeneous) and type(other) is not type(self):
            return False
        return tuple.__eq__(self, other)

    def __ne__(self, other):
        return not self == other

    __hash__ = tuple.__hash__

    def __repr__(self):
        return f"{type(self).__name__}{tuple.__repr__(self)}"


class ProjectivePoint(_Homogeneous):
    """A point of P², stored as its canonical representative."""

    __slots__ = ()


class ProjectiveLine(_Homogeneous):
    """A line [a, b, c] of P², dual to points."""

    __slots__ = ()


def equivalent(p, q, tol=DEFAULT_TOL) -> bool:
    """True when p ~ q, i.e. one is a nonzero multiple of the other."""
    return _vanishes(cross(p, q), norm(p) * norm(q), tol)


# --------------------------------------------------------------------------
# incidence


def join(p, q, tol=DEFAULT_TOL) -> ProjectiveLine:
    v = cross(p, q)
    if _vanishes(v, norm(p) * norm(q), tol):
        raise DegenerateJoin(f"{tuple(p)} and {tuple(q)} are the same point")
    return ProjectiveLine(v)


def meet(L, M, tol=DEFAULT_TOL) -> ProjectivePoint:
    v = cross(L, M)
    if _vanishes(v, norm(L) * norm(M), tol):
        raise DegenerateMeet(f"{tuple(L)} and {tuple(M)} are the same line")
    return ProjectivePoint(v)


def incident(p, L, tol=DEFAULT_TOL) -> bool:
    return sign(dot(p, L), norm(p) * norm(L), tol) == 0


def collinear(p, q, r, tol=DEFAULT_TOL) -> bool:
    return sign(det3(p, q, r), norm(p) * norm(q) * norm(r), tol) == 0


# --------------------------------------------------------------------------
# distinguishing planes


@dataclass(frozen=True)
class DistinguishingPlane:
    """Plane through the origin given by its normal (alpha, beta, gamma)."""

    normal: tuple

    def __post_init__(self):
        n = tuple(self.normal)
        if len(n) != 3:
            raise ValueError("a plane normal has three components")
        object.__setattr__(self, "normal", n)

    @property
    def exact(self) -> bool:
        return is_exact(self.normal)

    def side(self, v, tol=DEFAULT_TOL) -> int:
        return sign(dot(self.normal, v), norm(self.normal) * norm(v), tol)

    def representative(self, v, tol=DEFAULT_TOL):
        """The copy of ``v`` on the positive side of the plane."""
        s = self.side(v, tol)
        if s == 0:
            raise ValueError(f"{tuple(v)} lies on the plane {self.normal}")
        return tuple(v) if s > 0 else neg(v)

    def separates(self, a, b, c, tol=DEFAULT_TOL) -> bool:
        """Strict separation: representatives on the positive side exist."""
        if _vanishes(self.normal, 1.0, 0.0):
            return False
        return all(self.side(v, tol) != 0 for v in (a, b, c))


def distinguishing_plane_for(a, b, c, tol=DEFAULT_TOL) -> DistinguishingPlane:
    """Plane through the origin parallel to the plane through a, b, c.

    The normal is oriented so ``normal . a == normal . b == normal . c > 0``.
    """
    n = tuple(x + y + z for x, y, z in zip(cross(a, b), cross(b, c), cross(c, a)))
    d = dot(n, a)
    s = sign(d, norm(a) * norm(b) * norm(c), tol)
    if s == 0:
        raise DegenerateTriangle(f"representatives {a}, {b}, {c} are linearly dependent")
    if s < 0:
        n = neg(n)
    if is_exact(n):
        if all(type(x) is int for x in n):
            g = math.gcd(*n)
            n = (n[0] // g, n[1] // g, n[2] // g)
    else:
        r = norm(n)
        n = (n[0] / r, n[1] / r, n[2] / r)
    return DistinguishingPlane(n)


def _root(x, exact):
    if exact:
        f = Fraction(x)
        rn, rd = math.isqrt(f.numerator), math.isqrt(f.denominator)
        if rn * rn == f.numerator and rd * rd == f.denominator:
            return Fraction(rn, rd)
    return math.sqrt(float(x))


def plane_transform(plane: DistinguishingPlane):
    """Rotation ``M`` (rows) with ``M p' = p`` sending the plane to z' = 0.

    Entries are exact rationals when the normal is exact and every square root
    involved is rational; otherwise floats.
    """
    a, b, c = plane.normal
    exact = plane.exact
    if not exact:
        a, b, c = float(a), float(b), float(c)
    if c != 0:
        if exact:
            r_bc = _root(b * b + c * c, exact)
            r_all = _root(a * a + b * b + c * c, exact)
        else:  # hypot avoids underflow of tiny components
            r_bc, r_all = math.hypot(b, c), math.hypot(a, b, c)
        ub, uc, ua = b / r_bc, c / r_bc, a / r_all
        m = (
            (0, -r_bc / r_all, ua),
            (uc, ua * ub, b / r_all),
            (-ub, ua * uc, c / r_all),
        )
    elif b != 0:
        r = _root(a * a + b * b, exact) if exact else math.hypot(a, b)
        m = ((b / r, 0, a / r), (-a / r, 0, b / r), (0, -1, 0))
    else:
        return ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    if any(isinstance(x, float) for row in m for x in row):
        return tuple(tuple(float(x) for x in row) for row in m)
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def aligned_frame(plane: DistinguishingPlane):
    """Columns of ``plane_transform`` scaled by positive factors, root-free.

    ``dot(column_k, p)`` is a positive multiple of the k-th plane-aligned
    coordinate of p, which is all a sign computation needs.
    """
    a, b, c = plane.normal
    if c != 0:
        return ((0, c, -b), (-(b * b + c * c), a * b, a * c), (a, b, c))
    if b != 0:
        return ((b, -a, 0), (0, 0, -1), (a, b, 0))
    return ((0, 1, 0), (0, 0, 1), (1, 0, 0))


def _apply(cols, p):
    return (dot(cols[0], p), dot(cols[1], p), dot(cols[2], p))


def _columns(m):
    return tuple(tuple(m[i][k] for i in range(3)) for k in range(3))


# --------------------------------------------------------------------------
# s-mapping


def s_mapping(v, tol=DEFAULT_TOL):
    """The three-case map P² -> R³ on coordinates already aligned with z = 0."""
    x, y, z = v
    scale = norm(v)
    exact = is_exact(v)
    if sign(z, scale, tol) != 0:
        return (1, Fraction(x) / z, Fraction(y) / z) if exact else (1.0, x / z, y / z)
    if sign(x, scale, tol) != 0:
        return (0, 1, Fraction(y) / x) if exact else (0.0, 1.0, y / x)
    return (0, 0, 1) if exact else (0.0, 0.0, 1.0)


def s_map(p, plane: DistinguishingPlane, tol=DEFAULT_TOL):
    """Align ``p`` with ``plane`` and apply the s-mapping.

    Exact input is aligned with :func:`aligned_frame`, so its image differs
    from the rotated one by positive per-axis factors only.
    """
    if is_exact(p) and plane.exact:
        return s_mapping(_apply(aligned_frame(plane), p), tol)
    cols = _columns(plane_transform(DistinguishingPlane(tuple(float(x) for x in plane.normal))))
    return s_mapping(_apply(cols, tuple(float(x) for x in p)), tol)


def _branch_sign(v, scale=0.0, tol=DEFAULT_TOL) -> int:
    # sign of the divisor the s-mapping uses: z, else x, else y
    for k in (2, 0, 1):
        s = sign(v[k], scale, tol)
        if s:
            return s
    return 0


# --------------------------------------------------------------------------
# classification


class Location(enum.Enum):
    INSIDE = "inside"
    ON_EDGE = "on_edge"
    ON_VERTEX = "on_vertex"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Classification:
    """Where a point sits relative to a triangle (a, b, c).

    ``index`` is the edge (0 = ab, 1 = bc, 2 = ca) for ON_EDGE and the vertex
    (0 = a, 1 = b, 2 = c) for ON_VERTEX.
    """

    location: Location
    index: int | None = None

    def __repr__(self):
        if self.index is None:
            return self.location.name
        return f"{self.location.name}({self.index})"


INSIDE = Classification(Location.INSIDE)
OUTSIDE = Classification(Location.OUTSIDE)
ON_EDGE = tuple(Classification(Location.ON_EDGE, k) for k in range(3))
ON_VERTEX = tuple(Classification(Location.ON_VERTEX, k) for k in range(3))

EDGE_VERTICES = ((0, 1), (1, 2), (2, 0))


def classification_from_signs(d0: int, d1: int, d2: int) -> Classification:
    total = d0 + d1 + d2
    if total == 3 or total == -3:
        return INSIDE
    zeros = (d0 == 0) + (d1 == 0) + (d2 == 0)
    if zeros == 1 and (total == 2 or total == -2):
        return ON_EDGE[0 if d0 == 0 else 1 if d1 == 0 else 2]
    if zeros == 2:
        missing = 0 if d0 else 1 if d1 else 2
        return ON_VERTEX[(missing + 2) % 3]
    return OUTSIDE


class PreparedTriangle:
    """Triangle (a, b, c) with its plane, aligned once for repeated queries."""

    __slots__ = ("vertices", "plane", "exact", "tol", "_cols", "_rows", "_pair", "_infinite")

    def __init__(self, a, b, c, plane: DistinguishingPlane, tol=DEFAULT_TOL):
        self.vertices = (a, b, c)
        self.plane = plane
        self.tol = tol
        self.exact = is_exact(a) and is_exact(b) and is_exact(c) and plane.exact
        if collinear(a, b, c, tol):
            raise DegenerateTriangle(f"{a}, {b}, {c} are collinear")
        if self.exact:
            a, b, c = (canonical(tuple(v)) for v in (a, b, c))
            self._cols = aligned_frame(DistinguishingPlane(_integral(plane.normal)))
            rows = [_apply(self._cols, v) for v in (a, b, c)]
            signs = [_branch_sign(r) for r in rows]
            # sign of det(s_i, s_j, .) = sign det(row_i, row_j, .) * divisor signs
            self._pair = (signs[0] * signs[1], signs[1] * signs[2], signs[2] * signs[0])
            self._rows = rows
            self._infinite = all(r[2] == 0 for r in rows)
        else:
            fnormal = tuple(float(x) for x in plane.normal)
            self._cols = _columns(plane_transform(DistinguishingPlane(fnormal)))
            rows = [_apply(self._cols, tuple(float(x) for x in v)) for v in (a, b, c)]
            self._infinite = all(sign(r[2], norm(r), tol) == 0 for r in rows)
            self._rows = [s_mapping(r, tol) for r in rows]
            n0, n1, n2 = (norm(r) for r in self._rows)
            # Hadamard bounds for the three determinants, less the query norm
            self._pair = (n0 * n1, n1 * n2, n2 * n0)

    def classify(self, p) -> Classification:
        x, y, z = p
        c0, c1, c2 = self._cols
        r0, r1, r2 = self._rows
        if self.exact and type(x) is int and type(y) is int and type(z) is int:
            q = (
                c0[0] * x + c0[1] * y + c0[2] * z,
                c1[0] * x + c1[1] * y + c1[2] * z,
                c2[0] * x + c2[1] * y + c2[2] * z,
            )
            if self._infinite and q[2] == 0:
                raise AllAtInfinity("no interior when the triangle and the point are at infinity")
            sp = _branch_sign(q)
            pa, pb, pc = self._pair
            d0 = det3(r0, r1, q) * pa * sp
            d1 = det3(r1, r2, q) * pb * sp
            d2 = det3(r2, r0, q) * pc * sp
            return classification_from_signs(
                (d0 > 0) - (d0 < 0), (d1 > 0) - (d1 < 0), (d2 > 0) - (d2 < 0)
            )
        if self.exact:
            if is_exact(p):
                return self._exact_fallback(p)
            return self._float_twin().classify(p)
        if not (type(x) is float and type(y) is float and type(z) is float):
            x, y, z = float(x), float(y), float(z)
        tol = self.tol
        qx = c0[0] * x + c0[1] * y + c0[2] * z
        qy = c1[0] * x + c1[1] * y + c1[2] * z
        qz = c2[0] * x + c2[1] * y + c2[2] * z
        nq = math.sqrt(qx * qx + qy * qy + qz * qz)
        # s-mapping of the aligned point
        if abs(qz) > tol * nq:
            s = (1.0, qx / qz, qy / qz)
        elif self._infinite:
            raise AllAtInfinity("no interior when the triangle and the point are at infinity")
        elif abs(qx) > tol * nq:
            s = (0.0, 1.0, qy / qx)
        else:
            s = (0.0, 0.0, 1.0)
        ns = math.sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2])
        b0, b1, b2 = self._pair
        d0 = det3(r0, r1, s)
        d1 = det3(r1, r2, s)
        d2 = det3(r2, r0, s)
        e0, e1, e2 = tol * b0 * ns, tol * b1 * ns, tol * b2 * ns
        return classification_from_signs(
            0 if abs(d0) <= e0 else (1 if d0 > 0 else -1),
            0 if abs(d1) <= e1 else (1 if d1 > 0 else -1),
            0 if abs(d2) <= e2 else (1 if d2 > 0 else -1),
        )

    def _exact_fallback(self, p):
        # Fraction coordinates: clear denominators, the class is scale-invariant
        return self.classify(canonical(tuple(p)))

    def _float_twin(self):
        a, b, c = (tuple(float(x) for x in v) for v in self.vertices)
        return PreparedTriangle(a, b, c, DistinguishingPlane(tuple(float(x) for x in self.plane.normal)), self.tol)


def classify(a, b, c, p, plane: DistinguishingPlane, tol=DEFAULT_TOL) -> Classification:
    """In-triangle test: sign sum of three s-mapped determinants."""
    return PreparedTriangle(a, b, c, plane, tol).classify(p)
