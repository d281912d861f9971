import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shutterbath import BathParams

# benchmark parameter sets used throughout: g=0.1, nbar=10, with the bath
# cutoff either well above resonance (r=10, Lindblad regime) or well below
# (r=0.1, non-Lindblad regime)


@pytest.fixture(scope="session")
def p_res():
    return BathParams(g=0.1, r=10.0, nbar=10.0)


@pytest.fixture(scope="session")
def p_off():
    return BathParams(g=0.1, r=0.1, nbar=10.0)
