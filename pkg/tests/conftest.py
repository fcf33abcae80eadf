import os

import pytest

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (passed, detail); filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture
def meal_query():
    """OP, IV+DV flips priced per flip, budget 1, against (fish,chips,beer)."""
    from cpbribery import OP, BriberyInstance
    from cpbribery.fixtures import SIDE, MAIN, DRINK, meal_candidate, meal_profile

    return BriberyInstance(meal_profile(), OP, "ivdv", "flip", 1,
                           meal_candidate("fish", "chips", "beer"), global_order=(SIDE, MAIN, DRINK))
