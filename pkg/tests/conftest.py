import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fredkinsim import ModeDims, SystemParams


@pytest.fixture(scope="session")
def fig2_params():
    return SystemParams(omega_a=0.1, g=0.01, Omega_b=100.0, Omega_c=100.0, delta_b=2.0)


@pytest.fixture(scope="session")
def fig4_params():
    return SystemParams(omega_a=1.1, g=0.01, Omega_b=200.0, Omega_c=200.0, delta_b=2.0)


@pytest.fixture(scope="session")
def dims_20():
    return ModeDims(2, 20, 20)


@pytest.fixture(scope="session")
def plus_vacuum(dims_20):
    from fredkinsim import StateVector

    v = np.zeros(dims_20.total, dtype=complex)
    v[dims_20.encode(0, 0, 0)] = 1.0 / np.sqrt(2.0)
    v[dims_20.encode(1, 0, 0)] = 1.0 / np.sqrt(2.0)
    return StateVector(v, dims_20)
