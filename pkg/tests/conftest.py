import pytest

from eacpsim import RadioParams

# The two standard heterogeneity cases used throughout the experiments.
CASE1 = {"m_frac": 0.1, "alpha": 5.0}
CASE2 = {"m_frac": 0.2, "alpha": 3.0}


@pytest.fixture
def table_radio() -> RadioParams:
    return RadioParams()
