import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from iptt.ensembles import ginibre
from iptt.uinorms import UINorm

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

NORMS = [UINorm.parse(s) for s in ("op", "s1", "s2", "s3", "kf2", "rc2:s1")]

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=6)
atoms = st.integers(min_value=1, max_value=5)
norms = st.sampled_from(NORMS)
thetas = st.sampled_from([0.5, 1.0, 2.0])


@st.composite
def cmatrices(draw, dim=None):
    n = draw(dims) if dim is None else dim
    return ginibre(np.random.default_rng(draw(seeds)), n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)
