import time

import pytest

from twosquares.hunt import hunt_counterexamples


@pytest.fixture(scope="session")
def acceptance_sweep():
    """The full |a|,|b| <= 25 sweep at search bound 100, with its wall time."""
    t0 = time.perf_counter()
    result = hunt_counterexamples(25, 100, workers=1)
    return result, time.perf_counter() - t0
