import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", help="run the slow n=4 checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow") or os.environ.get("HESSREC_SLOW"):
        return
    skip = pytest.mark.skip(reason="slow; use --slow or HESSREC_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running checks")
