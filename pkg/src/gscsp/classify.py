"""Class membership tests: row convex, CRC, DS, US, min/max-closed, staircase.

``is_ds`` / ``is_us`` are O(d) interval tests used as engine preconditions.
:func:`classify` produces the full :class:`ClassReport`, with closure and
monotonicity decided by exhaustive pair checks (validation, not a hot path).

Row convexity, CRC, DS and US are judged on the *reduced* form (empty rows and
columns dropped), so a relation whose ones are only separated by empty columns
still counts as row convex. This is the reading under which "DS iff min-closed
and max-closed" holds for arbitrary 0/1 relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .core import RowConvexConstraint

ORDERS = ("<=", ">=")
STAIRCASE_KINDS = tuple(product(ORDERS, ORDERS))


@dataclass(frozen=True)
class ClassReport:
    row_convex: bool
    ds: bool
    us: bool
    crc: bool
    min_closed: bool
    max_closed: bool
    staircase: dict

    @property
    def gs(self) -> bool:
        return self.ds or self.us

    @property
    def is_staircase(self) -> bool:
        return any(self.staircase.values())


def _monotone(seq: Sequence[int], increasing: bool) -> bool:
    if increasing:
        return all(a <= b for a, b in zip(seq, seq[1:]))
    return all(a >= b for a, b in zip(seq, seq[1:]))


def _endpoints(c: RowConvexConstraint) -> tuple[list[int], list[int]]:
    lows = [iv.lo for iv in c.rows if iv is not None]
    highs = [iv.hi for iv in c.rows if iv is not None]
    return lows, highs


def is_ds(c: RowConvexConstraint) -> bool:
    """Min and max of consecutive non-empty rows are nondecreasing."""
    lows, highs = _endpoints(c)
    return _monotone(lows, True) and _monotone(highs, True)


def is_us(c: RowConvexConstraint) -> bool:
    lows, highs = _endpoints(c)
    return _monotone(lows, False) and _monotone(highs, False)


def is_gs(c: RowConvexConstraint) -> bool:
    return is_ds(c) or is_us(c)


def _reduced(matrix: np.ndarray) -> np.ndarray:
    if matrix.size == 0:
        return matrix
    return matrix[matrix.any(axis=1)][:, matrix.any(axis=0)]


def _reduced_intervals(red: np.ndarray) -> list[tuple[int, int]] | None:
    """Per-row [first, last] one of a reduced grid, or None if some row is split."""
    out = []
    for line in red:
        ones = np.flatnonzero(line)
        if ones[-1] - ones[0] + 1 != len(ones):
            return None
        out.append((int(ones[0]), int(ones[-1])))
    return out


def _closed(matrix: np.ndarray, op) -> bool:
    rows, cols = np.nonzero(matrix)
    if len(rows) < 2:
        return True
    r = op.outer(rows, rows)
    c = op.outer(cols, cols)
    return bool(matrix[r, c].all())


def _staircase(matrix: np.ndarray, alpha: str, beta: str) -> bool:
    """(alpha, beta)-monotone: (v, w) member implies (v', w') for v' alpha v, w' beta w."""
    m = matrix.astype(bool)
    if m.size == 0:
        return True
    # monotone closure: cumulative OR along rows, then along columns
    closure = m
    if alpha == "<=":
        closure = np.flip(np.logical_or.accumulate(np.flip(closure, 0), axis=0), 0)
    else:
        closure = np.logical_or.accumulate(closure, axis=0)
    if beta == ">=":
        closure = np.logical_or.accumulate(closure, axis=1)
    else:
        closure = np.flip(np.logical_or.accumulate(np.flip(closure, 1), axis=1), 1)
    return bool((closure == m).all())


def classify_dense(matrix: Sequence[Sequence[int]] | np.ndarray) -> ClassReport:
    """Classify an arbitrary 0/1 relation given as a grid (rows = first variable)."""
    m = np.asarray(matrix, dtype=bool)
    if m.ndim != 2:
        m = m.reshape(len(matrix), -1)
    red = _reduced(m)
    intervals = _reduced_intervals(red) if red.size else []
    min_closed = _closed(m, np.minimum)
    max_closed = _closed(m, np.maximum)
    stair = {(a, b): _staircase(m, a, b) for a, b in STAIRCASE_KINDS}
    if intervals is None:
        return ClassReport(False, False, False, False, min_closed, max_closed, stair)
    lows = [iv[0] for iv in intervals]
    highs = [iv[1] for iv in intervals]
    ds = _monotone(lows, True) and _monotone(highs, True)
    us = _monotone(lows, False) and _monotone(highs, False)
    crc = all(
        a2 <= b1 + 1 and b2 >= a1 - 1 for (a1, b1), (a2, b2) in zip(intervals, intervals[1:])
    )
    return ClassReport(True, ds, us, crc, min_closed, max_closed, stair)


def classify(c: RowConvexConstraint) -> ClassReport:
    """Full class report for an interval-encoded constraint."""
    nrows, ncols = c.shape
    m = np.zeros((nrows, ncols), dtype=bool)
    for r, iv in enumerate(c.rows):
        if iv is not None:
            m[r, iv.lo : iv.hi + 1] = True
    report = classify_dense(m)
    # the interval tests are the contract; the dense path must agree with them
    assert report.ds == is_ds(c) and report.us == is_us(c), "interval and dense DS/US tests disagree"
    return report


def crc(c: RowConvexConstraint) -> bool:
    """Connected row convexity on the reduced form, from intervals alone (O(d))."""
    ncols = len(c.col_domain)
    cover = [0] * (ncols + 1)
    for iv in c.rows:
        if iv is not None:
            cover[iv.lo] += 1
            cover[iv.hi + 1] -= 1
    rank = [0] * ncols
    running = 0
    k = -1
    for v in range(ncols):
        running += cover[v]
        if running > 0:
            k += 1
        rank[v] = k
    ivs = [(rank[iv.lo], rank[iv.hi]) for iv in c.rows if iv is not None]
    return all(a2 <= b1 + 1 and b2 >= a1 - 1 for (a1, b1), (a2, b2) in zip(ivs, ivs[1:]))
