import numpy as np
import pytest

from soclelab import AlgebraSpec, Element


@pytest.fixture
def m2():
    return AlgebraSpec((2,))


@pytest.fixture
def m3():
    return AlgebraSpec((3,))


@pytest.fixture
def spec23():
    return AlgebraSpec((2, 3))


@pytest.fixture
def spec22():
    return AlgebraSpec((2, 2))


def single(matrix) -> Element:
    """Element of the one-block algebra holding the given matrix."""
    m = np.asarray(matrix, dtype=complex)
    return Element(AlgebraSpec((m.shape[0],)), [m])
