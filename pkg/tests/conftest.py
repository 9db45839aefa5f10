"""Fixtures for turanlab tests."""
import random

import pytest

from turanlab.config import Settings, load_settings
from turanlab.constructions import k4_minus
from turanlab.core import Hypergraph3


@pytest.fixture
def settings() -> Settings:
    """Default settings, independent of the environment."""
    return load_settings(environ={})


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240501)


@pytest.fixture
def k4m() -> Hypergraph3:
    return k4_minus()


@pytest.fixture
def single_edge() -> Hypergraph3:
    return Hypergraph3(3, [(0, 1, 2)])


@pytest.fixture
def bottle_graph() -> Hypergraph3:
    """Six windows of the bottle 1 2 3 4 5 6 2 1; vertex 0 is isolated."""
    return Hypergraph3(7, [(1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 6), (5, 6, 2), (6, 2, 1)])


def random_hypergraph(n: int, density: float, generator: random.Random) -> Hypergraph3:
    """Each triple independently with the given probability."""
    return Hypergraph3(
        n,
        (
            (a, b, c)
            for a in range(n)
            for b in range(a + 1, n)
            for c in range(b + 1, n)
            if generator.random() < density
        ),
    )
