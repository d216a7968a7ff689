import random

import pytest

from mpcover.graphs import EdgeColoring, build_shape


def random_coloring(rng, sizes):
    shape = build_shape(sizes)
    return EdgeColoring(shape, rng.getrandbits(shape.m) if shape.m else 0)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
