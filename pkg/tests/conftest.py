"""Shared fixtures: one register, a default lattice, and small engine lattices."""

import numpy as np
import pytest

from carfield.modes import (
    SingleOscillatorSpace,
    gaussian_profile,
    rapidity_lattice,
    restricted_lattice,
    uniform_profile,
)
from carfield.register import build_register


@pytest.fixture(scope="session")
def reg():
    return build_register()


@pytest.fixture(scope="session")
def default_lattice():
    return rapidity_lattice(6, 0.4, 1.0)


@pytest.fixture(scope="session")
def default_space(default_lattice):
    return SingleOscillatorSpace(default_lattice)


@pytest.fixture(scope="session")
def default_profile(default_lattice):
    return gaussian_profile(default_lattice)


# small lattices the pattern walk runs on: one mode, and two modes one
# rapidity step apart
@pytest.fixture(scope="session")
def single_lattice():
    return rapidity_lattice(0, 0.4, 1.0)


@pytest.fixture(scope="session")
def single_space(single_lattice):
    return SingleOscillatorSpace(single_lattice)


@pytest.fixture(scope="session")
def single_profile(single_lattice):
    return uniform_profile(single_lattice)


@pytest.fixture(scope="session")
def double_lattice():
    return restricted_lattice(rapidity_lattice(1, 0.4, 1.0), (0, 2))


@pytest.fixture(scope="session")
def double_space(double_lattice):
    return SingleOscillatorSpace(double_lattice)


@pytest.fixture(scope="session")
def double_profile(double_lattice):
    return uniform_profile(double_lattice)


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)


def random_table(rng, modes):
    return rng.standard_normal((modes, 2)) + 1j * rng.standard_normal((modes, 2))
