import pytest

from leonard import GF, QQ, ParameterArray, realize
from leonard.generate import random_valid_array, standard_corpus

import random


@pytest.fixture
def K1():
    return ParameterArray.of(QQ, [1, -1], [1, -1], [-2], [2])


@pytest.fixture
def K2():
    return ParameterArray.of(QQ, [2, 0, -2], [2, 0, -2], [-4, -4], [4, 4])


@pytest.fixture(scope="session")
def corpus():
    """The fixed 208-array fuzz corpus used by the acceptance criteria."""
    return standard_corpus()


_REALIZATIONS = {}


def cached_realization(arr):
    if arr not in _REALIZATIONS:
        _REALIZATIONS[arr] = realize(arr)
    return _REALIZATIONS[arr]


@pytest.fixture
def sample_arrays():
    """A small cross-field, cross-diameter sample for unit-level checks."""
    rng = random.Random(99)
    out = []
    for d in (0, 1, 2, 3, 4):
        out.append(random_valid_array(rng, QQ, d) if d
                   else ParameterArray.of(QQ, [5], [7], [], []))
    out.append(random_valid_array(rng, GF(10007), 3))
    out.append(random_valid_array(rng, GF(10007), 5))
    return out
