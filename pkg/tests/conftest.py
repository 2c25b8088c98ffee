import random

import pytest
from hypothesis import settings, strategies as st

from kempe.coloring import Coloring
from kempe.graph import Graph, cycle

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def c5_coloring():
    # v0..v4 = 1,2,1,2,3; critical vertices are v0, v3, v4
    return Coloring(3, (1, 2, 1, 2, 3))


@pytest.fixture
def rng():
    return random.Random(1234)
