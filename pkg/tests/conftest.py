import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gscsp.core import CspInstance, Domain, RowConvexConstraint, SupportInterval, from_dense

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile("default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=600, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def staircase5() -> RowConvexConstraint:
    """5x5 DS constraint, rows a1..a5 over columns b1..b5 (values 1..5)."""
    grid = [
        [1, 1, 0, 0, 0],
        [1, 1, 1, 0, 0],
        [0, 0, 1, 1, 0],
        [0, 0, 1, 1, 1],
        [0, 0, 0, 0, 1],
    ]
    dom = Domain(range(1, 6))
    return from_dense(dom, dom, grid)


def rows_of(c: RowConvexConstraint):
    return [None if iv is None else (iv.lo, iv.hi) for iv in c.rows]


# -- hypothesis strategies -------------------------------------------------


@st.composite
def gappy_rows(draw, nrows: int, ncols: int, up: bool = False):
    """DS (or, reversed, US) rows with empty rows anywhere, gaps allowed."""
    k = draw(st.integers(0, nrows))
    lows = sorted(draw(st.lists(st.integers(0, ncols - 1), min_size=k, max_size=k)))
    highs = sorted(draw(st.lists(st.integers(0, ncols - 1), min_size=k, max_size=k)))
    highs = [max(a, b) for a, b in zip(lows, highs)]
    chosen = sorted(draw(st.lists(st.integers(0, nrows - 1), min_size=k, max_size=k, unique=True)))
    rows: list = [None] * nrows
    for r, a, b in zip(chosen, lows, highs):
        rows[r] = SupportInterval(a, b)
    return tuple(reversed(rows)) if up else tuple(rows)


@st.composite
def gs_constraints(draw, max_d: int = 8, up: bool | None = None):
    nrows = draw(st.integers(1, max_d))
    ncols = draw(st.integers(1, max_d))
    if up is None:
        up = draw(st.booleans())
    rows = draw(gappy_rows(nrows, ncols, up))
    return RowConvexConstraint(0, 1, Domain(range(nrows)), Domain(range(ncols)), rows)


@st.composite
def dense_grids(draw, max_d: int = 6):
    nrows = draw(st.integers(1, max_d))
    ncols = draw(st.integers(1, max_d))
    return draw(
        st.lists(st.lists(st.integers(0, 1), min_size=ncols, max_size=ncols), min_size=nrows, max_size=nrows)
    )


@st.composite
def gs_instances(draw, max_n: int = 5, max_d: int = 6, up: bool | None = None):
    n = draw(st.integers(1, max_n))
    if up is None:
        up = draw(st.booleans())
    domains = []
    for _ in range(n):
        size = draw(st.integers(1, max_d))
        start = draw(st.integers(-5, 5))
        step = draw(st.integers(1, 3))
        domains.append(Domain(range(start, start + step * size, step)))
    cons = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                a, b = (j, i) if draw(st.booleans()) else (i, j)
                rows = draw(gappy_rows(len(domains[a]), len(domains[b]), up))
                cons.append(RowConvexConstraint(a, b, domains[a], domains[b], rows))
    return CspInstance(domains, cons), ("us" if up else "ds")


def random_dense(rng: np.random.Generator, nrows: int, ncols: int, p: float = 0.4):
    return (rng.random((nrows, ncols)) < p).astype(int).tolist()
