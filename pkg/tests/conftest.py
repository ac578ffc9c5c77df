"""Shared fixtures: the reference system (4, 2, 1) and seeded random generators."""

import numpy as np
import pytest

from confocal.system import make_system


@pytest.fixture
def system421():
    return make_system(4.0, 2.0, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def draw_system(rng, low=-5.0, high=5.0, min_gap=0.5):
    """Distinct parameters in [low, high], at least ``min_gap`` apart, in shuffled axis order."""
    while True:
        params = np.sort(rng.uniform(low, high, 3))
        if np.min(np.diff(params)) >= min_gap:
            return make_system(*rng.permutation(params))


def draw_generic_point(rng, low=0.3, high=2.0):
    """A point whose components all have magnitude in [low, high]."""
    return rng.uniform(low, high, 3) * rng.choice([-1.0, 1.0], 3)


def draw_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


@pytest.fixture
def random_system():
    return draw_system


@pytest.fixture
def generic_point():
    return draw_generic_point


@pytest.fixture
def unit_vector():
    return draw_unit
