import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ringsieve.catalog import (
    dual_numbers,
    finite_field,
    ring_c1,
    socle_plane_ring,
)
from ringsieve.rings import make_cyclic, make_product


@pytest.fixture(scope="session")
def z12():
    return make_cyclic(12)


@pytest.fixture(scope="session")
def z8():
    return make_cyclic(8)


@pytest.fixture(scope="session")
def f2xy():
    return socle_plane_ring(2)


@pytest.fixture(scope="session")
def f3xy():
    return socle_plane_ring(3)


@pytest.fixture(scope="session")
def c1():
    return ring_c1()


@pytest.fixture(scope="session")
def small_rings():
    """A spread of small validated rings for property tests."""
    rings = [
        make_cyclic(2),
        make_cyclic(6),
        make_cyclic(8),
        make_cyclic(12),
        finite_field(4),
        finite_field(9),
        dual_numbers(2),
        dual_numbers(3),
        socle_plane_ring(2),
        ring_c1(),
        make_product([make_cyclic(2), make_cyclic(2)])[0],
        make_product([make_cyclic(4), finite_field(4)])[0],
    ]
    return rings
