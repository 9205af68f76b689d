import pathlib

import pytest
from hypothesis import HealthCheck, settings

DATA = pathlib.Path(__file__).resolve().parent / "data"

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def data_dir():
    return DATA


def read_data(name):
    return (DATA / name).read_text()


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module is None or not module.OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in module.TITLES.items():
        if number in module.OUTCOMES:
            verdict = "PASS" if module.OUTCOMES[number] else "FAIL"
        else:
            verdict = "NOT RUN"
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {title}")
