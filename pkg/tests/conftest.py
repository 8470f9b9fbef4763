import pytest
from hypothesis import HealthCheck, settings

from pluricanonical.config import load_model

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def z6():
    return load_model("z6_cy3")


@pytest.fixture(scope="session")
def z8():
    return load_model("z8_fake_cy")


@pytest.fixture(scope="session")
def fermat():
    cache = {}

    def get(b):
        if b not in cache:
            cache[b] = load_model(f"fermat_b{b}")
        return cache[b]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
