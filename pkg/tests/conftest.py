import warnings

import pytest
from hypothesis import settings
from scipy.integrate import IntegrationWarning

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _quiet_quadpack():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        yield
