import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "scripts"))
sys.path.insert(0, str(Path(__file__).resolve().parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = ("cycle2", "cycle3", "cycle4", "cycle5", "exp", "g1", "g2")


@pytest.fixture(params=FIXTURES)
def fixture_name(request):
    return request.param
