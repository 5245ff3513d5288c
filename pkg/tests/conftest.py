import math

import numpy as np
import pytest
from hypothesis import strategies as st

from unruhqfi.states import CorrelationTriple

R_MAX = math.pi / 4


@st.composite
def triples(draw, margin=0.0):
    """Valid correlation triples, drawn in (z, x - y, x + y) coordinates."""
    z = draw(st.floats(-1 + margin, 1 - margin))
    m = draw(st.floats(-(1 + z) + margin, (1 + z) - margin))
    p = draw(st.floats(-(1 - z) + margin, (1 - z) - margin))
    return CorrelationTriple((p + m) / 2, (p - m) / 2, z)


def r_values(lo=0.0, hi=R_MAX):
    return st.floats(lo, hi)


werner_values = st.floats(-1.0, 1.0 / 3.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
