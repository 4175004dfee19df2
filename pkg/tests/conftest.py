import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: long-running sweeps (included by default; deselect "
        "with -m 'not slow' during development)")


@pytest.fixture(scope="session")
def petersen():
    from gpcops import GpParams, build_gp
    return build_gp(GpParams(5, 2))
