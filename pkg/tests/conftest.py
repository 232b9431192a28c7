import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture
def mp_dps():
    """Run a test body at 40 significant digits of mpmath precision."""
    with mpmath.workdps(40):
        yield
