import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from ginv.matcore import Tol

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def tol():
    return Tol()


@pytest.fixture
def strict():
    return Tol.strict()
