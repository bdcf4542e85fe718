import numpy as np
import pytest

from maxhit import (
    NONLINEAR_DEFAULTS,
    CompleteDependence,
    NonlinearExample,
    PiecewiseExample,
    SineBump,
    TwoBranch,
    make_grid,
)

CATALOGUE = [
    CompleteDependence(),
    PiecewiseExample(n=2, a=0.25, b=0.75),
    NonlinearExample(**NONLINEAR_DEFAULTS),
    TwoBranch(),
    SineBump(amp=0.5),
]


@pytest.fixture(scope="session")
def grid201():
    return make_grid(201)


@pytest.fixture(scope="session")
def grid101():
    return make_grid(101)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(params=CATALOGUE, ids=lambda s: type(s).__name__)
def any_spec(request):
    return request.param
