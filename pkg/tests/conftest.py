import pytest

import skewlab as sl
from skewlab.quot import get_ring
from skewlab.skew import CenterPoly

# the desk-scale grid: (q, n, s, k) family tuples used across the suite
S_GRID = [(2, 2, 2, 1), (2, 3, 1, 2), (2, 3, 2, 1), (3, 2, 2, 1), (2, 4, 1, 2), (2, 4, 1, 3)]
D_GRID = [(3, 2, 2, 1), (3, 2, 3, 1), (3, 4, 1, 1), (3, 4, 1, 3)]

_RING_KEYS = sorted({(q, n, s) for (q, n, s, _) in S_GRID + D_GRID})


def make_ring(q, n, s):
    assert q in (2, 3), "desk grid uses prime q"
    tw = sl.tower(q, 1, n, s)
    return get_ring(tw, CenterPoly.canonical(tw))


@pytest.fixture(scope="session", params=_RING_KEYS, ids=lambda k: f"q{k[0]}n{k[1]}s{k[2]}")
def grid_ring(request):
    return make_ring(*request.param)


@pytest.fixture(scope="session")
def small_ring():
    """q=2, n=2, s=2, F = y^2+y+1: the smallest ring with s > 1."""
    return make_ring(2, 2, 2)


@pytest.fixture(scope="session")
def classical_ring():
    """q=2, n=3, s=1, F = y-1: linearized-polynomial territory."""
    return make_ring(2, 3, 1)
