import warnings

import numpy as np
import pytest

from noetherforms.forms import DForm, VectorField
from noetherforms.geometry import FrameGeometry
from noetherforms.harness.generate import Bounds, random_coframe, random_form, random_scalar
from noetherforms.lagrangian import NonviableLagrangianWarning

BOUNDS = Bounds(degree=2, coeff=9)


def rng_for(*key):
    return np.random.Generator(np.random.PCG64(list(key)))


def rand_scalar(rng, n, terms=3):
    return random_scalar(rng, n, BOUNDS, terms)


def rand_form(rng, n, q, odd=False):
    return random_form(rng, n, q, BOUNDS, odd)


def rand_geometry(rng, n, signature=None, constant=False):
    sig = signature or (-1,) + (1,) * (n - 1)
    return FrameGeometry(random_coframe(rng, n, BOUNDS, constant), sig)


def rand_coframe_variation(rng, n):
    return [rand_form(rng, n, 1) for _ in range(n)]


def rand_vector(rng, n):
    return VectorField(rand_scalar(rng, n, 2) for _ in range(n))


def all_zero(forms):
    if isinstance(forms, DForm):
        return forms.is_zero()
    if isinstance(forms, dict):
        forms = forms.values()
    return all(f.is_zero() for f in forms)


@pytest.fixture(autouse=True)
def _quiet_nonviable():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonviableLagrangianWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
