import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from projtri.errors import DegenerateJoin, DegenerateMeet, DegenerateTriangle
from projtri.kernel import (
    INSIDE,
    ON_EDGE,
    ON_VERTEX,
    OUTSIDE,
    DistinguishingPlane,
    PreparedTriangle,
    ProjectiveLine,
    ProjectivePoint,
    aligned_frame,
    canonical,
    classification_from_signs,
    classify,
    collinear,
    det3,
    distinguishing_plane_for,
    dot,
    equivalent,
    incident,
    join,
    meet,
    plane_transform,
    s_map,
)
from projtri.oracle import ConeQuery, oracle_cone_membership

ints = st.integers(-6, 6)
triples = st.tuples(ints, ints, ints).filter(any)
scales = st.sampled_from([1, -1, 2, -3, Fraction(5, 7), Fraction(-2, 9)])

TRI = ((1, 0, 1), (0, 1, 1), (-1, -1, 1))
Z = DistinguishingPlane((0, 0, 1))


def scaled(v, lam):
    return tuple(lam * x for x in v)


# --- canonical representatives -------------------------------------------


@pytest.mark.parametrize(
    "raw, expected",
    [
        ((2, 4, -6), (1, 2, -3)),
        ((0, -3, 6), (0, 1, -2)),
        ((Fraction(1, 2), Fraction(-1, 3), 0), (3, -2, 0)),
        ((0, 0, -5), (0, 0, 1)),
        ((-2.0, 1.0, 4.0), (1.0, -0.5, -2.0)),
    ],
)
def test_canonical_form(raw, expected):
    assert canonical(raw) == expected


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        canonical((0, 0, 0))


def test_point_equality_is_up_to_scale():
    assert ProjectivePoint(2, 4, 2) == ProjectivePoint(-1, -2, -1)
    assert hash(ProjectivePoint(3, 0, 3)) == hash(ProjectivePoint(1, 0, 1))
    assert ProjectivePoint(1, 0, 0) != ProjectivePoint(0, 1, 0)


# --- incidence --------------------------------------------------------------


@pytest.mark.parametrize(
    "p, q, line",
    [((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((1, 0, 1), (0, 1, 1), (-1, -1, 1))],
)
def test_join_examples(p, q, line):
    assert join(p, q) == ProjectiveLine(line)


def test_join_of_equal_points():
    with pytest.raises(DegenerateJoin):
        join((2, 0, 2), (1, 0, 1))


@pytest.mark.parametrize(
    "L, M, point",
    [((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((-1, -1, 1), (1, -1, 0), (1, 1, 2))],
)
def test_meet_examples(L, M, point):
    assert meet(L, M) == ProjectivePoint(point)


def test_meet_of_equal_lines():
    with pytest.raises(DegenerateMeet):
        meet((2, 2, -2), (1, 1, -1))


@pytest.mark.parametrize(
    "p, L, expected",
    [((1, 0, 0), (0, 0, 1), True), ((1, 1, 2), (-1, -1, 1), True), ((1, 0, 0), (1, 0, 0), False)],
)
def test_incident_examples(p, L, expected):
    assert incident(p, L) is expected


@pytest.mark.parametrize(
    "p, q, r, expected",
    [
        ((1, 0, 1), (0, 1, 1), (2, 1, 3), True),
        ((1, 0, 0), (0, 1, 0), (0, 0, 1), False),
        ((1, 0, 1), (2, 0, 2), (0, 1, 0), True),
    ],
)
def test_collinear_examples(p, q, r, expected):
    assert collinear(p, q, r) is expected


def test_float_incidence_uses_relative_tolerance():
    p = (1e8, 1e8, 2e8)
    assert incident(p, (-1.0, -1.0, 1.0 + 1e-15))
    assert not incident(p, (-1.0, -1.0, 1.0 + 1e-6))


@given(triples, triples, triples)
def test_duality_round_trip(p, q, r):
    assume(det3(p, q, r) != 0)
    assert equivalent(meet(join(p, q), join(p, r)), p)


@given(triples, triples)
def test_join_is_incident_to_both(p, q):
    assume(not equivalent(p, q))
    L = join(p, q)
    assert incident(p, L) and incident(q, L)


# --- plane transforms -------------------------------------------------------


def _mat_mul_t(m):
    return [[sum(m[i][k] * m[j][k] for k in range(3)) for j in range(3)] for i in range(3)]


def test_transform_gamma_nonzero_with_axis_normal():
    m = plane_transform(DistinguishingPlane((0, 0, 1)))
    assert [row[2] for row in m] == [0, 0, 1]
    assert sorted(abs(x) for row in m for x in row) == [0] * 6 + [1] * 3


def test_transform_beta_gamma_zero_is_the_fixed_permutation():
    assert plane_transform(DistinguishingPlane((1, 0, 0))) == ((0, 0, 1), (1, 0, 0), (0, 1, 0))


def test_transform_gamma_zero():
    assert plane_transform(DistinguishingPlane((0, 1, 0))) == ((1, 0, 0), (0, 0, 1), (0, -1, 0))


@pytest.mark.parametrize("normal", [(3, 4, 0), (0, 3, 4), (1, 0, 0), (2, 0, 0), (-5, 12, 0)])
def test_root_free_transforms_are_exactly_orthogonal(normal):
    m = plane_transform(DistinguishingPlane(normal))
    assert all(isinstance(x, (int, Fraction)) for row in m for x in row)
    assert _mat_mul_t(m) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert det3(*m) == 1


@given(st.tuples(*[st.floats(-10, 10, allow_nan=False)] * 3).filter(lambda n: math.hypot(*n) > 1e-3))
def test_float_transform_is_a_rotation_aligning_the_normal(n):
    m = plane_transform(DistinguishingPlane(n))
    mmt = _mat_mul_t(m)
    assert max(abs(mmt[i][j] - (i == j)) for i in range(3) for j in range(3)) <= 1e-12
    assert abs(det3(*m) - 1) <= 1e-12
    aligned = [sum(m[k][i] * n[k] for k in range(3)) for i in range(3)]
    r = math.hypot(*n)
    assert abs(aligned[0]) <= 1e-12 * r and abs(aligned[1]) <= 1e-12 * r
    # the fixed permutation keeps the sign of alpha, so only proportionality holds
    assert abs(abs(aligned[2]) - r) <= 1e-12 * r


@given(st.tuples(ints, ints, ints).filter(any), triples)
def test_root_free_frame_matches_rotation_up_to_positive_scale(n, p):
    plane = DistinguishingPlane(n)
    cols = aligned_frame(plane)
    m = plane_transform(DistinguishingPlane(tuple(float(x) for x in n)))
    for k in range(3):
        exact = dot(cols[k], p)
        rotated = sum(m[i][k] * p[i] for i in range(3))
        assert (exact > 0) - (exact < 0) == (rotated > 1e-9) - (rotated < -1e-9)


# --- s-mapping ------------------------------------------------------------------


@pytest.mark.parametrize("p", [(2, 4, 2), (1, 5, 0), (0, 3, 0), (-3, 1, 7)])
def test_s_map_is_s_mapping_of_rotated_coordinates(p):
    from projtri.kernel import s_mapping

    # for the normal (0, 0, 1) the gamma != 0 matrix is a quarter turn about z
    m = plane_transform(Z)
    aligned = tuple(sum(m[i][k] * p[i] for i in range(3)) for k in range(3))
    assert aligned == (p[1], -p[0], p[2])
    assert s_map(p, Z) == s_mapping(aligned)


def test_s_map_without_rotation():
    from projtri.kernel import s_mapping

    assert s_mapping((2, 4, 2)) == (1, 1, 2)
    assert s_mapping((1, 5, 0)) == (0, 1, 5)
    assert s_mapping((0, 3, 0)) == (0, 0, 1)


@given(triples, triples, scales)
def test_s_map_is_scale_invariant(p, n, lam):
    plane = DistinguishingPlane(n)
    assert s_map(p, plane) == s_map(scaled(p, lam), plane)


# --- planes for triangles ------------------------------------------------------


def test_plane_for_chart_triangle():
    plane = distinguishing_plane_for(*TRI)
    assert plane.normal == (0, 0, 1)


def test_plane_for_frame_is_diagonal():
    plane = distinguishing_plane_for((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert plane.normal == (1, 1, 1)
    f = distinguishing_plane_for((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    assert all(abs(x - 1 / math.sqrt(3)) < 1e-15 for x in f.normal)


def test_plane_for_dependent_representatives():
    with pytest.raises(DegenerateTriangle):
        distinguishing_plane_for((1, 0, 1), (0, 1, 1), (1, 1, 2))


@given(triples, triples, triples)
def test_plane_separates_its_copy(a, b, c):
    assume(det3(a, b, c) != 0)
    n = distinguishing_plane_for(a, b, c).normal
    assert dot(n, a) == dot(n, b) == dot(n, c) > 0


# --- classification ----------------------------------------------------------


@pytest.mark.parametrize(
    "p, expected",
    [
        ((0, 0, 1), INSIDE),
        ((1, 1, 2), ON_EDGE[0]),
        ((2, 2, 1), OUTSIDE),
        ((1, 0, 1), ON_VERTEX[0]),
        ((0, 1, 1), ON_VERTEX[1]),
        ((-1, -1, 1), ON_VERTEX[2]),
        ((-1, 0, 2), ON_EDGE[1]),
        ((0, -1, 2), ON_EDGE[2]),
    ],
)
def test_classify_chart_examples(p, expected):
    assert classify(*TRI, p, Z) == expected
    assert classify(*TRI, scaled(p, -3), Z) == expected


def test_classify_float_mode_matches():
    tri = [tuple(float(x) for x in v) for v in TRI]
    plane = DistinguishingPlane((0.0, 0.0, 1.0))
    assert classify(*tri, (0.0, 0.0, 1.0), plane) == INSIDE
    assert classify(*tri, (0.5, 0.5, 1.0), plane) == ON_EDGE[0]
    assert classify(*tri, (2.0, 2.0, 1.0), plane) == OUTSIDE


def test_classify_degenerate_triangle():
    with pytest.raises(DegenerateTriangle):
        classify((1, 0, 1), (0, 1, 1), (1, 1, 2), (0, 0, 1), Z)


@pytest.mark.parametrize(
    "signs, expected",
    [
        ((1, 1, 1), INSIDE),
        ((-1, -1, -1), INSIDE),
        ((0, 1, 1), ON_EDGE[0]),
        ((-1, 0, -1), ON_EDGE[1]),
        ((0, 0, 1), ON_VERTEX[1]),
        ((1, 0, 0), ON_VERTEX[2]),
        ((0, 1, 0), ON_VERTEX[0]),
        ((1, -1, 1), OUTSIDE),
        ((0, 1, -1), OUTSIDE),
    ],
)
def test_sign_table(signs, expected):
    assert classification_from_signs(*signs) == expected


def _positive_plane(normal, a, b, c):
    return all(dot(normal, v) != 0 for v in (a, b, c))


@given(triples, triples, triples, triples, triples, scales)
def test_classify_matches_cone_oracle(a, b, c, n, p, lam):
    assume(det3(a, b, c) != 0 and _positive_plane(n, a, b, c))
    reps = [v if dot(n, v) > 0 else scaled(v, -1) for v in (a, b, c)]
    expected = oracle_cone_membership(ConeQuery(*reps, p))
    assert classify(a, b, c, scaled(p, lam), DistinguishingPlane(n)) == expected


@given(triples, triples, triples, triples, st.tuples(ints, ints, ints))
def test_classify_on_vertex_combinations(a, b, c, n, coef):
    # integer combinations of the copy's vertices hit edges and vertices often
    assume(det3(a, b, c) != 0 and _positive_plane(n, a, b, c) and any(coef))
    reps = [v if dot(n, v) > 0 else scaled(v, -1) for v in (a, b, c)]
    p = tuple(sum(k * v[i] for k, v in zip(coef, reps)) for i in range(3))
    expected = oracle_cone_membership(ConeQuery(*reps, p))
    assert classify(a, b, c, p, DistinguishingPlane(n)) == expected
    assert classify(a, b, c, scaled(p, -1), DistinguishingPlane(n)) == expected


@given(triples, triples, triples, triples, triples)
def test_float_classify_agrees_away_from_boundaries(a, b, c, n, p):
    assume(det3(a, b, c) != 0 and _positive_plane(n, a, b, c))
    reps = [v if dot(n, v) > 0 else scaled(v, -1) for v in (a, b, c)]
    expected = oracle_cone_membership(ConeQuery(*reps, p))
    fl = lambda v: tuple(float(x) for x in v)  # noqa: E731
    got = PreparedTriangle(fl(a), fl(b), fl(c), DistinguishingPlane(fl(n))).classify(fl(p))
    assert got == expected


def test_prepared_triangle_accepts_fraction_and_float_queries():
    prep = PreparedTriangle(*TRI, Z)
    assert prep.classify((Fraction(1, 3), Fraction(1, 3), Fraction(2, 3))) == ON_EDGE[0]
    assert prep.classify((0.0, 0.0, 1.0)) == INSIDE
