import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from theta_envelopes.config import TestingConfig  # noqa: E402
from theta_envelopes.core import Angle  # noqa: E402
from theta_envelopes.models import Envelope  # noqa: E402
from theta_envelopes.tables import load_table  # noqa: E402


@pytest.fixture(scope='module')
def right_angle():
    """θ = π/2, the congruent-number case."""
    return Angle(1, 0)


@pytest.fixture(scope='module')
def angle_2_1():
    """cos θ = 1/2, not Pythagorean."""
    return Angle(2, 1)


@pytest.fixture(scope='module')
def angle_5_3():
    """cos θ = 3/5, Pythagorean with t = 4."""
    return Angle(5, 3)


@pytest.fixture(scope='module')
def unit_envelope(right_angle):
    """The envelope for n = 1 built from Q1 on E_T."""
    return Envelope(right_angle, Fraction(2, 5), Fraction(143, 60), Fraction(29, 12),
                    Fraction(7, 60), Fraction(5, 12))


@pytest.fixture(scope='module')
def testing_config():
    return TestingConfig


@pytest.fixture(scope='module')
def table5():
    """The bundled table of envelopes for θ = (2, 1)."""
    return load_table(5)


@pytest.fixture
def thread_pool(mocker):
    """
    Swaps the process pool for a thread pool so that the parallel code paths run
    inside the test process.
    """
    return mocker.patch('theta_envelopes.utils.workers.ProcessPoolExecutor', ThreadPoolExecutor)
