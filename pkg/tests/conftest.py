import numpy as np
import pytest

from tourncycles.core import Tournament


@pytest.fixture
def triangle():
    """Cyclic triangle 0->1->2->0."""
    return Tournament(np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=np.uint8))
