import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracle module

from stlopt import Trace


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def make_trace(values, dt=1.0, t0=0.0, channels=("x",)):
    """1-D values become a single-channel trace; 2-D rows are time steps."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    return Trace(tuple(channels), t0, dt, arr)
