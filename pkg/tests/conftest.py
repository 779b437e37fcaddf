import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from topology.cohomology import FourManifold  # noqa: E402

FIXTURES = Path(__file__).parent / 'fixtures'

HYPERBOLIC = [[0, 1], [1, 0]]

# (chi, sigma, Q) for every manifold the equivalence sweeps run over
MANIFOLD_DATA = {
    's4': (2, 0, []),
    'cp2': (3, 1, [[1]]),
    'cp2bar': (3, -1, [[-1]]),
    's2xs2': (4, 0, HYPERBOLIC),
    'cp2#cp2bar': (4, 0, [[1, 0], [0, -1]]),
    'h+h': (6, 0, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
    '3cp2#cp2bar': (6, 2, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
}


def make_manifold(name):
    chi, sigma, q = MANIFOLD_DATA[name]
    return FourManifold(chi, sigma, q, name=name)


@pytest.fixture
def s2xs2():
    return make_manifold('s2xs2')


@pytest.fixture
def cp2():
    return make_manifold('cp2')


@pytest.fixture
def s4():
    return make_manifold('s4')


@pytest.fixture(params=sorted(MANIFOLD_DATA))
def any_manifold(request):
    return make_manifold(request.param)


@pytest.fixture
def fixtures_dir():
    return FIXTURES
