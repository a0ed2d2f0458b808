"""Shared fixtures: datasets and the (slow) fits they require, computed once."""

import warnings

import pytest

from bsps import Geometric, Logarithmic, Poisson, fit
from bsps.datasets import load_bearing_fatigue, load_failure_times


@pytest.fixture(scope="session")
def failure_times():
    return load_failure_times()


@pytest.fixture(scope="session")
def bearing_fatigue():
    return load_bearing_fatigue()


@pytest.fixture(scope="session")
def failure_fits(failure_times):
    """All four model fits to the failure-times data, keyed by label."""
    fits = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fits["BSG"] = fit(Geometric(), failure_times)
        fits["BSP"] = fit(Poisson(), failure_times)
        fits["BSL"] = fit(Logarithmic(), failure_times)
        fits["BS"] = fit(None, failure_times)
    return fits


@pytest.fixture(scope="session")
def bearing_fits(bearing_fatigue):
    fits = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fits["BSG"] = fit(Geometric(), bearing_fatigue)
        fits["BSP"] = fit(Poisson(), bearing_fatigue)
        fits["BS"] = fit(None, bearing_fatigue)
    return fits
