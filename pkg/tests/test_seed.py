import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EXTRAS, FRAME, random_points
from projtri.errors import DegenerateQuad, NoSeed
from projtri.kernel import INSIDE, ProjectivePoint, canonical, collinear, det3
from projtri.oracle import ConeQuery, brute_force_general_position, oracle_cone_membership, sample_tiling
from projtri.seed import (
    CanonicalSet,
    SeedSet,
    _greedy_from,
    build_canonical,
    build_initial,
    find_canonical,
    find_seed,
    find_seed_exhaustive,
    find_seed_linecover,
    largest_collinear,
    search_canonical,
)

# greedy growth from point 0 gets stuck; starting from point 2 succeeds
GREEDY_TRAP = [(0, 0, 1), (0, 1, 1), (0, 2, 1), (1, 0, 1), (1, 2, 1), (1, 1, 0), (1, -1, 0)]
# on the three lines x = 0, y = 0, z = 0; line-cover fails, greedy does not
THREE_LINES = [(0, -1, -3), (0, 1, 2), (-2, 0, 3), (3, 0, 0), (-3, 0, 1), (0, 1, 0), (-1, 2, 0), (2, 2, 0), (-1, 3, 0)]


def general_position(points, idx):
    return not any(collinear(*(points[i] for i in t)) for t in itertools.combinations(idx, 3))


# --- seeds ----------------------------------------------------------------------


def test_six_points_in_general_position_are_returned_whole():
    pts = FRAME + EXTRAS
    assert sorted(find_seed_exhaustive(pts).indices) == list(range(6))
    assert sorted(find_seed_linecover(pts).indices) == list(range(6))


def test_almost_collinear_input_has_no_seed():
    pts = [(k, 1, 1) for k in range(9)] + [(0, 0, 1)]
    assert brute_force_general_position(pts) == []
    with pytest.raises(NoSeed):
        find_seed_exhaustive(pts)
    with pytest.raises(NoSeed):
        find_seed(pts)


def test_exhaustive_search_tries_other_starts():
    assert _greedy_from(GREEDY_TRAP, 0, 1e-12) is None
    seed = find_seed_exhaustive(GREEDY_TRAP)
    assert seed.indices[0] != 0
    assert tuple(sorted(seed.indices)) in brute_force_general_position(GREEDY_TRAP)


def test_linecover_on_random_points():
    pts = random_points(100, seed=12)
    seed = find_seed_linecover(pts)
    assert len(set(seed.indices)) == 6 and general_position(pts, seed.indices)


def test_linecover_fails_on_three_lines():
    with pytest.raises(NoSeed):
        find_seed_linecover(THREE_LINES)
    seed = find_seed(THREE_LINES)  # the exhaustive fallback still finds one
    assert general_position(THREE_LINES, seed.indices)


def test_too_few_points():
    with pytest.raises(NoSeed):
        find_seed_exhaustive(FRAME)


def test_no_seed_message_mentions_the_open_problem():
    with pytest.raises(NoSeed, match="no complete method"):
        find_seed([(1, k, 0) for k in range(8)])


@settings(max_examples=30)
@given(st.lists(st.tuples(*[st.integers(-3, 3)] * 3).filter(any), min_size=6, max_size=12, unique_by=canonical))
def test_seed_strategies_agree_with_enumeration(pts):
    six = brute_force_general_position(pts)
    try:
        seed = find_seed(pts)
    except NoSeed:
        # the exhaustive fallback is greedy, not complete
        return
    assert tuple(sorted(seed.indices)) in six


def test_largest_collinear():
    pts = [(1, k, 1) for k in range(5)] + [(1, 0, 0), (0, 0, 1)]
    assert sorted(largest_collinear(pts)) == [0, 1, 2, 3, 4]


# --- initial triangulation ------------------------------------------------------


def test_frame_pseudo_points(initial):
    got = {initial.tri.points[s] for s in initial.pseudo}
    assert got == {ProjectivePoint(1, 1, 0), ProjectivePoint(1, 0, 1), ProjectivePoint(0, 1, 1)}


def test_every_face_has_one_pseudo_point(initial):
    for face in initial.tri.faces.values():
        assert sum(v in initial.pseudo for v in face.vertices) == 1


@pytest.mark.parametrize("seed", range(5))
def test_random_quads_triangulate(seed):
    quad = random_points(4, seed=seed, spread=50)
    init = build_initial(quad)
    report = init.tri.validate(tiling_samples=3000, seed=seed)
    assert report.ok and (report.V, report.E, report.F) == (7, 18, 12)


def test_degenerate_quad():
    with pytest.raises(DegenerateQuad):
        build_initial([(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])


def test_region_membership_matches_oracle(initial):
    tri = initial.tri
    rng = random.Random(3)
    for _ in range(200):
        p = tuple(rng.randint(-20, 20) for _ in range(3))
        if not any(p):
            continue
        s = initial.region_of(p)
        inside = []
        for fid, face in tri.faces.items():
            reps = tri.representatives(fid)
            if oracle_cone_membership(ConeQuery(*(reps[v] for v in face.vertices), p)) is INSIDE:
                inside.append(fid)
        if len(inside) == 1:
            assert s in tri.faces[inside[0]].vertices


# --- canonical sets -------------------------------------------------------------


def test_extras_in_different_regions_take_the_first_quad():
    cs = find_canonical(FRAME + EXTRAS, SeedSet(tuple(range(6))))
    assert cs == CanonicalSet((0, 1, 2, 3), (4, 5))


def test_extras_in_one_region_rotate_the_roles():
    # (4,2,1) and (5,2,1) share the region of the frame's pseudo-point (1,1,0)
    pts = FRAME + [(4, 2, 1), (5, 2, 1)]
    init = build_initial(FRAME)
    assert init.region_of(pts[4]) == init.region_of(pts[5])
    cs = find_canonical(pts, SeedSet(tuple(range(6))))
    assert cs.quad != (0, 1, 2, 3)
    init = build_initial([pts[i] for i in cs.quad])
    regions = [init.region_of(pts[e]) for e in cs.extras]
    assert None not in regions and regions[0] != regions[1]


def test_search_canonical_without_general_position():
    pts = [(1, k, 1) for k in range(5)] + [(1, 0, 0), (0, 0, 1), (2, -1, 7)]
    assert brute_force_general_position(pts) == []
    cs = search_canonical(pts)
    tri, _ = build_canonical(pts, cs)
    assert tri.validate(tiling_samples=2000).ok


def _random_general_seed(rng):
    while True:
        pts = [tuple(rng.randint(-30, 30) for _ in range(3)) for _ in range(6)]
        if all(det3(*(pts[i] for i in t)) != 0 for t in itertools.combinations(range(6), 3)):
            return pts


def test_every_general_seed_has_a_canonical_set():
    rng = random.Random(21)
    for _ in range(60):
        pts = _random_general_seed(rng)
        cs = find_canonical(pts, SeedSet(tuple(range(6))))
        tri, vmap = build_canonical(pts, cs)
        assert tri.counts() == (6, 15, 10) and not tri.pseudo
        assert sorted(vmap) == list(range(6))


# --- six-vertex triangulation ---------------------------------------------------


def test_canonical_triangulation_is_k6(canonical_tri):
    assert len(canonical_tri.edges) == 15 and not canonical_tri.pseudo
    assert sample_tiling(canonical_tri, 10_000).ok


def test_build_canonical_rejects_extras_in_one_region():
    pts = FRAME + [(4, 2, 1), (5, 2, 1)]
    with pytest.raises(ValueError):
        build_canonical(pts, CanonicalSet((0, 1, 2, 3), (4, 5)))


def test_build_canonical_checks_every_mutation():
    tri, _ = build_canonical(FRAME + EXTRAS, CanonicalSet((0, 1, 2, 3), (4, 5)), debug=True)
    assert tri.validate().ok
