import random

import pytest
from hypothesis import HealthCheck, settings

from projtri.kernel import canonical
from projtri.seed import CanonicalSet, build_canonical, build_initial

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FRAME = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
EXTRAS = [(1, 2, 4), (4, 2, 1)]


def random_points(n, seed=0, spread=10**6):
    """n distinct random integer points; almost surely in general position."""
    rng = random.Random(seed)
    seen, out = set(), []
    while len(out) < n:
        p = tuple(rng.randint(-spread, spread) for _ in range(3))
        if any(p) and canonical(p) not in seen:
            seen.add(canonical(p))
            out.append(p)
    return out


@pytest.fixture
def initial():
    return build_initial(FRAME)


@pytest.fixture
def canonical_tri():
    tri, _ = build_canonical(FRAME + EXTRAS, CanonicalSet((0, 1, 2, 3), (4, 5)))
    return tri
