import numpy as np
import pytest

from models.tensor import WeightLambda
from utils.exactalg import Poly
from utils.settings import Settings


def z(n, i):
    return Poly.var(n, i)


def hh(n):
    return Poly.h(n)


def lin(n, coeffs, h_coeff=0):
    return Poly.linear(n, coeffs, h_coeff)


@pytest.fixture
def ring3():
    """z1, z2, z3, h in a ring with n = 3."""
    return [Poly.var(3, i) for i in range(1, 4)] + [Poly.h(3)]


@pytest.fixture
def ring4():
    return [Poly.var(4, i) for i in range(1, 5)] + [Poly.h(4)]


@pytest.fixture
def small_partitions():
    return [WeightLambda.of(p) for p in [(1, 1), (2, 1), (2, 2), (3, 1), (2, 1, 1), (1, 1, 1)]]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def settings():
    return Settings(threads=1, seed=7, samples=2)
