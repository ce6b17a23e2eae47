"""Transposition, intersection and composition of GS constraints in O(d).

All three operations are exact: the returned constraint encodes precisely the
boolean transpose / AND / matrix product of the operands. When that relation is
not row convex (possible only around empty rows of an operand) the operation
raises :class:`NotRowConvex` instead of returning an over-approximation.
"""

from __future__ import annotations

from .classify import is_ds, is_us
from .core import OpCounter, RowConvexConstraint, SupportInterval, span_transpose
from .errors import DomainMismatch, MixedClasses, NotGS, NotRowConvex


def _direction(c: RowConvexConstraint) -> str:
    if is_ds(c):
        return "ds"
    if is_us(c):
        return "us"
    raise NotGS(f"constraint on {c.pair} is neither DS nor US")


def _common_direction(a: RowConvexConstraint, b: RowConvexConstraint) -> str:
    a_ds, a_us, b_ds, b_us = is_ds(a), is_us(a), is_ds(b), is_us(b)
    if not (a_ds or a_us):
        raise NotGS(f"constraint on {a.pair} is neither DS nor US")
    if not (b_ds or b_us):
        raise NotGS(f"constraint on {b.pair} is neither DS nor US")
    if a_ds and b_ds:
        return "ds"
    if a_us and b_us:
        return "us"
    raise MixedClasses(f"cannot combine a {'DS' if a_ds else 'US'} and a {'DS' if b_ds else 'US'} constraint")


def _empty_prefix(c: RowConvexConstraint) -> list[int]:
    """prefix[r] = number of empty rows among rows < r."""
    prefix = [0]
    for iv in c.rows:
        prefix.append(prefix[-1] + (iv is None))
    return prefix


def transpose(c: RowConvexConstraint, counter: OpCounter | None = None) -> RowConvexConstraint:
    _direction(c)
    t = span_transpose(c, counter)
    empties = _empty_prefix(c)
    for v, iv in enumerate(t.rows):
        if iv is not None and empties[iv.hi] - empties[iv.lo] != 0:
            raise NotRowConvex(v, f"column {v} is supported by rows {iv.lo}..{iv.hi} around an empty row")
    if counter is not None:
        counter.tick(len(c.rows) + len(t.rows))
    return t


def intersect(
    a: RowConvexConstraint, b: RowConvexConstraint, counter: OpCounter | None = None
) -> RowConvexConstraint:
    if a.row_domain != b.row_domain or a.col_domain != b.col_domain:
        raise DomainMismatch("intersection needs identical row and column domains")
    _common_direction(a, b)
    rows: list[SupportInterval | None] = []
    for x, y in zip(a.rows, b.rows):
        if x is None or y is None:
            rows.append(None)
            continue
        lo, hi = max(x.lo, y.lo), min(x.hi, y.hi)
        rows.append(SupportInterval(lo, hi) if lo <= hi else None)
    if counter is not None:
        counter.tick(len(rows))
    return RowConvexConstraint(a.row_var, a.col_var, a.row_domain, a.col_domain, tuple(rows))


def compose(
    a: RowConvexConstraint, b: RowConvexConstraint, counter: OpCounter | None = None
) -> RowConvexConstraint:
    """``a`` on (i, j) composed with ``b`` on (j, k), giving a constraint on (i, k).

    Row ``u`` of the result is the union of the images in ``b`` of the rows in
    ``u``'s image in ``a``. Empty rows of ``b`` inside that range are skipped.
    """
    if a.col_domain != b.row_domain:
        raise DomainMismatch("the column domain of the first operand must be the row domain of the second")
    direction = _common_direction(a, b)
    m = len(b.rows)

    # nearest non-empty row of b at or after / at or before each index
    nxt = [-1] * (m + 1)
    for r in range(m - 1, -1, -1):
        nxt[r] = r if b.rows[r] is not None else nxt[r + 1]
    prv = [-1] * m
    last = -1
    for r in range(m):
        if b.rows[r] is not None:
            last = r
        prv[r] = last

    # breaks[r]: how many non-empty rows <= r leave a gap after the previous non-empty row
    breaks = [0] * m
    running = 0
    prev = None
    for r, iv in enumerate(b.rows):
        if iv is not None and prev is not None:
            if direction == "ds":
                gap = iv.lo > prev.hi + 1
            else:
                gap = iv.hi < prev.lo - 1
            running += gap
        if iv is not None:
            prev = iv
        breaks[r] = running

    rows: list[SupportInterval | None] = []
    for u, iv in enumerate(a.rows):
        if iv is None:
            rows.append(None)
            continue
        first, lst = nxt[iv.lo], prv[iv.hi]
        if first == -1 or lst == -1 or first > lst:
            rows.append(None)
            continue
        if breaks[lst] != breaks[first]:
            raise NotRowConvex(u, f"row {u} of the composition is split by a gap in the second operand")
        bf, bl = b.rows[first], b.rows[lst]
        if direction == "ds":
            rows.append(SupportInterval(bf.lo, bl.hi))
        else:
            rows.append(SupportInterval(bl.lo, bf.hi))
    if counter is not None:
        counter.tick(4 * m + len(a.rows))
    return RowConvexConstraint(a.row_var, b.col_var, a.row_domain, b.col_domain, tuple(rows))
