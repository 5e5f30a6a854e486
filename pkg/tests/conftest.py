"""Shared builders for the test suite."""

import numpy as np
import pytest

from hologen.polymaps import PolyMap
from hologen.spaces import NormedSpace


def make_linear_map(space: NormedSpace, matrix) -> PolyMap:
    """Polynomial map z -> matrix @ z with zero constant and no higher parts."""
    A = np.asarray(matrix, dtype=np.complex128)
    return PolyMap(space=space, constant=np.zeros(space.dim, dtype=np.complex128),
                   linear=A, higher=())


def minus_identity(space: NormedSpace) -> PolyMap:
    return make_linear_map(space, -np.eye(space.dim))


def identity_map(space: NormedSpace) -> PolyMap:
    return make_linear_map(space, np.eye(space.dim))


@pytest.fixture
def l2_2d() -> NormedSpace:
    return NormedSpace(2, 2.0)
