"""Shared fixtures: the two reference parameter triples and small helpers."""

import math

import pytest

from subadd import Params


@pytest.fixture(scope="session")
def cert_params():
    """The triple that satisfies all five certificate conditions."""
    return Params(mu=1.2, sigma=0.05, alpha=0.05)


@pytest.fixture(scope="session")
def nearline_params():
    """The triple whose alpha sits just above two of the bounds."""
    return Params(mu=1.5, sigma=0.05, alpha=0.117783036)


def ulps_apart(a: float, b: float) -> int:
    """Number of representable doubles strictly between a and b (0 when
    equal), walked with nextafter; capped at 64 to keep failures cheap."""
    if a == b:
        return 0
    lo, hi = (a, b) if a < b else (b, a)
    steps = 0
    x = lo
    while x < hi and steps <= 64:
        x = math.nextafter(x, math.inf)
        steps += 1
    return steps
