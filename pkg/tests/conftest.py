import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from laurent_duality.scalars import Field

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

Q = Field.rational()
FIELDS = [Q, Field.cyclotomic(3), Field.cyclotomic(4), Field.cyclotomic(5), Field.cyclotomic(12)]

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def field_elements(draw, field):
    """Random element of a field given by small rational coordinates on the power basis."""
    if field.kind == "rational":
        return draw(small_fractions)
    coeffs = draw(st.lists(small_fractions, min_size=field.degree, max_size=field.degree))
    x = field.zero
    for k, c in enumerate(coeffs):
        if c:
            x = x + field(c) * field.zeta(k)
    return x


@pytest.fixture
def Qf():
    return Q


def frac(s):
    return Fraction(s)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
