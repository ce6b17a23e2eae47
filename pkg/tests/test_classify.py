import warnings

import numpy as np
import pytest
from hypothesis import given

from conftest import dense_grids, staircase5, gs_constraints, random_dense
from gscsp import oracle
from gscsp.classify import STAIRCASE_KINDS, classify, classify_dense, crc, is_ds, is_gs, is_us
from gscsp.core import Domain, RowConvexConstraint, from_dense, to_dense

D3 = Domain([1, 2, 3])


def relation(pred, dom=D3):
    return from_dense(dom, dom, [[int(pred(a, b)) for b in dom] for a in dom])


def test_less_equal():
    rep = classify(relation(lambda a, b: a <= b))
    assert rep.row_convex and rep.ds and not rep.us
    assert rep.min_closed and rep.max_closed
    assert rep.staircase[("<=", ">=")]
    assert rep.crc and rep.gs and rep.is_staircase


def test_swap_pair():
    grid = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]  # {(1,2), (2,1)}
    rep = classify(from_dense(D3, D3, grid))
    assert rep.row_convex and rep.us and not rep.ds
    assert not rep.min_closed and not rep.max_closed


def test_staircase5():
    rep = classify(staircase5())
    assert rep.ds and not rep.us and rep.crc


def test_empty_relation_is_both():
    c = RowConvexConstraint(0, 1, D3, D3, (None, None, None))
    rep = classify(c)
    assert rep.ds and rep.us and rep.crc
    assert is_ds(c) and is_us(c) and is_gs(c)


def test_single_row_is_both():
    c = from_dense(D3, D3, [[0, 0, 0], [0, 1, 1], [0, 0, 0]])
    assert is_ds(c) and is_us(c)


def test_non_row_convex_dense_input():
    rep = classify_dense([[1, 0, 1], [0, 1, 0], [0, 0, 0]])
    assert not rep.row_convex
    assert not (rep.ds or rep.us or rep.crc)


def test_split_only_by_empty_column_is_row_convex():
    # column 1 is empty, so the reduced form is the 2x2 identity
    rep = classify_dense([[1, 0, 0], [0, 0, 1]])
    assert rep.row_convex and rep.ds and rep.min_closed and rep.max_closed


def test_crc_boundary_cases():
    # images [1,2], [0,0], [2,2]: the last two neither overlap nor touch
    grid = [[0, 1, 1], [1, 0, 0], [0, 0, 1]]
    rep = classify_dense(grid)
    assert rep.row_convex and not rep.crc
    grid = [[0, 1, 1], [1, 1, 0], [0, 1, 1]]
    rep = classify_dense(grid)
    assert rep.crc and not rep.ds and not rep.us


def test_staircase_kinds_on_orders():
    assert classify(relation(lambda a, b: a >= b)).staircase[(">=", "<=")]
    assert classify(relation(lambda a, b: a + b <= 4)).staircase[("<=", "<=")]
    assert classify(relation(lambda a, b: a + b >= 4)).staircase[(">=", ">=")]
    assert not classify(relation(lambda a, b: a == b)).is_staircase


@given(dense_grids())
def test_matches_definitional_checker(grid):
    rep = classify_dense(grid)
    assert rep.row_convex == oracle.dense_row_convex(grid)
    assert rep.ds == oracle.dense_ds(grid)
    assert rep.us == oracle.dense_us(grid)
    assert rep.crc == oracle.dense_crc(grid)
    assert rep.min_closed == oracle.dense_min_closed(grid)
    assert rep.max_closed == oracle.dense_max_closed(grid)
    for a, b in STAIRCASE_KINDS:
        assert rep.staircase[(a, b)] == oracle.dense_staircase(grid, a, b)


@given(dense_grids())
def test_ds_iff_min_and_max_closed(grid):
    rep = classify_dense(grid)
    assert rep.ds == (rep.min_closed and rep.max_closed)


@given(dense_grids())
def test_class_implications(grid):
    rep = classify_dense(grid)
    if rep.ds or rep.us:
        assert rep.row_convex and rep.crc
    if rep.staircase[("<=", ">=")] or rep.staircase[(">=", "<=")]:
        assert rep.ds
    if rep.staircase[("<=", "<=")] or rep.staircase[(">=", ">=")]:
        assert rep.us


@given(gs_constraints())
def test_interval_crc_matches_dense(c):
    assert crc(c) == classify(c).crc
    assert crc(c)


def test_us_closure_staircase_hypothesis():
    """Claimed: up staircase plus min- or max-closure gives a staircase constraint.

    Not assumed anywhere; this only reports how often it fails on full domains.
    """
    rng = np.random.default_rng(11)
    failures = []
    for _ in range(2000):
        nr, nc = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        grid = random_dense(rng, nr, nc, float(rng.random()))
        rep = classify_dense(grid)
        if rep.us and (rep.min_closed or rep.max_closed) and not rep.is_staircase:
            failures.append(grid)
    if failures:
        warnings.warn(
            f"US with min/max closure but not staircase in {len(failures)} of 2000 relations, "
            f"e.g. {failures[0]}",
            stacklevel=1,
        )
    # a single tuple is US and closed under both, yet not monotone in any direction
    single = classify_dense([[0, 0, 0], [0, 1, 0], [0, 0, 0]])
    assert single.us and single.min_closed and single.max_closed
    assert not single.is_staircase


@pytest.mark.parametrize("seed", range(5))
def test_classify_agrees_with_interval_tests(seed):
    rng = np.random.default_rng(seed)
    for _ in range(100):
        nr, nc = int(rng.integers(1, 8)), int(rng.integers(1, 8))
        grid = random_dense(rng, nr, nc)
        try:
            c = from_dense(Domain(range(nr)), Domain(range(nc)), grid)
        except ValueError:
            continue
        rep = classify(c)
        assert rep.ds == is_ds(c) and rep.us == is_us(c)
        assert to_dense(c) == grid
