import random

import pytest
from mpmath import mp, workdps

from legseries.context import PrecisionContext


@pytest.fixture
def ctx30():
    return PrecisionContext(30)


@pytest.fixture
def ctx25():
    return PrecisionContext(25)


@pytest.fixture
def ctx20():
    return PrecisionContext(20)


@pytest.fixture
def rng():
    return random.Random(20240817)


def agree(a, b, digits, scale_floor=1):
    """True when a and b agree to `digits` decimal places (relative)."""
    with workdps(mp.dps + 15):
        diff = abs(a - b)
        scale = max(abs(a), abs(b), scale_floor)
        return diff <= scale * mp.mpf(10) ** (-digits)


def assert_agree(a, b, digits, label=""):
    with workdps(mp.dps + 15):
        diff = abs(a - b)
    assert agree(a, b, digits), f"{label} differ by {diff} (want {digits} digits)"
