import math

import numpy as np
import pytest

from thetawave.curve import validate_params
from thetawave.solution import build_solution

A_REF = 1.0 / 1.3
B_REF = 1.3
PHI_REF = 0.3 * math.pi


@pytest.fixture(scope="session")
def ref_params():
    return validate_params(A_REF, B_REF, PHI_REF, alpha=0.1)


@pytest.fixture(scope="session")
def ref_bundle(ref_params):
    """Full pipeline at the reference parameter set (computed once)."""
    return build_solution(ref_params)


@pytest.fixture(scope="session")
def shifted_bundle(ref_bundle):
    """Pipeline at lambda0 = k2 / (4 k1)."""
    w = ref_bundle.wave
    l0 = w.k2 / (4.0 * w.k1)
    params = validate_params(A_REF, B_REF, PHI_REF, lambda0=l0, alpha=0.1)
    return build_solution(params)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
