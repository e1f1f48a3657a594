import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from zigrank.generate import random_interval, random_presented_module
from zigrank.grid import GridInterval

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def staircases(draw, max_width=4, max_height=4):
    """Random interval given by nonincreasing lo/hi column bounds."""
    width = draw(st.integers(1, max_width))
    x0 = draw(st.integers(-2, 2))
    cols = []
    prev_lo = prev_hi = None
    for i in range(width):
        if prev_lo is None:
            hi = draw(st.integers(0, max_height - 1))
            lo = draw(st.integers(0, hi))
        else:
            hi = draw(st.integers(prev_lo, prev_hi))
            lo = draw(st.integers(0, min(prev_lo, hi)))
        cols.append((x0 + i, lo, hi))
        prev_lo, prev_hi = lo, hi
    return GridInterval(cols)


@st.composite
def small_modules(draw, max_side=3, fields=(2, 3), max_dim=3):
    seed = draw(st.integers(0, 2**31 - 1))
    w = draw(st.integers(1, max_side))
    h = draw(st.integers(1, max_side))
    field = draw(st.sampled_from(fields))
    return random_presented_module(seed, (w, h), field, max_dim=max_dim)


@st.composite
def module_and_interval(draw, **kw):
    M = draw(small_modules(**kw))
    seed = draw(st.integers(0, 2**31 - 1))
    return M, random_interval(M.domain, seed)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
