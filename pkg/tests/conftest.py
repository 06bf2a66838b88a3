from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from containlab.coefficients import QQ, Cyclotomic, PrimeField
from containlab.configurations import parse_config

settings.register_profile(
    "lab", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("lab")

FIELDS = [QQ, PrimeField(7), PrimeField(2), Cyclotomic(3), Cyclotomic(12)]


def elements(field):
    """Strategy for elements of ``field`` with small coefficients."""
    small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
    if isinstance(field, Cyclotomic):
        return st.lists(small, min_size=field.degree, max_size=field.degree).map(
            lambda cs: sum((field(c) * field.gen ** i for i, c in enumerate(cs)), field(0))
        )
    if isinstance(field, PrimeField):
        return st.integers(0, field.p - 1).map(field)
    return small.map(lambda q: field(Fraction(q)))


_CONFIGS: dict = {}


@pytest.fixture(scope="session")
def config():
    """Registry configurations shared across the session, so Groebner caches are reused."""

    def get(name):
        if name not in _CONFIGS:
            _CONFIGS[name] = parse_config(name)
        return _CONFIGS[name]

    return get


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
