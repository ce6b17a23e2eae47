"""Domains, interval-encoded row-convex constraints and CSP instances.

Everything downstream works on domain *indices*. A constraint stores, for each
row index, either ``None`` (empty image) or a :class:`SupportInterval` of column
indices; ``(r, c)`` is a member iff ``lo <= c <= hi``.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainMismatch, DuplicateConstraint, NotRowConvex

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class OpCounter:
    """Mutable step counter threaded through algorithms for complexity checks."""

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def tick(self, n: int = 1) -> None:
        self.count += n


@dataclass(frozen=True)
class Domain:
    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        vals = tuple(int(v) for v in values)
        if not vals:
            raise ValueError("a domain must contain at least one value")
        for a, b in zip(vals, vals[1:]):
            if a >= b:
                raise ValueError(f"domain values must be strictly increasing ({a} then {b})")
        if vals[0] < INT64_MIN or vals[-1] > INT64_MAX:
            raise ValueError("domain values must fit in a signed 64-bit integer")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, index: int) -> int:
        return self.values[index]

    def __contains__(self, value: object) -> bool:
        try:
            self.index(value)  # type: ignore[arg-type]
        except KeyError:
            return False
        return True

    def index(self, value: int) -> int:
        """Index of ``value``; raises ``KeyError`` when absent."""
        k = bisect_left(self.values, value)
        if k == len(self.values) or self.values[k] != value:
            raise KeyError(value)
        return k

    def window(self, lo_value: int, hi_value: int) -> tuple[int, int] | None:
        """Index range of the values lying in ``[lo_value, hi_value]``, or None."""
        lo = bisect_left(self.values, lo_value)
        hi = bisect_right(self.values, hi_value) - 1
        if lo > hi:
            return None
        return lo, hi

    def __repr__(self) -> str:
        return f"Domain({list(self.values)})"


class SupportInterval(NamedTuple):
    lo: int
    hi: int


Rows = tuple["SupportInterval | None", ...]


@dataclass(frozen=True)
class RowConvexConstraint:
    row_var: int
    col_var: int
    row_domain: Domain
    col_domain: Domain
    rows: Rows

    def __post_init__(self):
        rows = tuple(None if iv is None else SupportInterval(int(iv[0]), int(iv[1])) for iv in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != len(self.row_domain):
            raise DomainMismatch(
                f"constraint has {len(rows)} rows but the row domain has {len(self.row_domain)} values"
            )
        ncols = len(self.col_domain)
        for r, iv in enumerate(rows):
            if iv is not None and not (0 <= iv.lo <= iv.hi < ncols):
                raise ValueError(f"row {r}: interval {tuple(iv)} invalid for {ncols} columns")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.row_var, self.col_var)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_domain), len(self.col_domain))

    def image(self, row: int) -> SupportInterval | None:
        return self.rows[row]

    def contains(self, row: int, col: int) -> bool:
        iv = self.rows[row]
        return iv is not None and iv.lo <= col <= iv.hi

    def allows(self, row_value: int, col_value: int) -> bool:
        """Membership test on raw values (values outside the domains are rejected)."""
        try:
            return self.contains(self.row_domain.index(row_value), self.col_domain.index(col_value))
        except KeyError:
            return False

    def nonempty_rows(self) -> list[int]:
        return [r for r, iv in enumerate(self.rows) if iv is not None]

    def lo_hi(self) -> tuple[list[int], list[int]]:
        """Flat ``lo``/``hi`` index lists with -1 marking empty rows."""
        lo = [-1 if iv is None else iv.lo for iv in self.rows]
        hi = [-1 if iv is None else iv.hi for iv in self.rows]
        return lo, hi

    def to_dense(self) -> list[list[int]]:
        return to_dense(self)

    def members(self) -> list[tuple[int, int]]:
        return [(r, c) for r, iv in enumerate(self.rows) if iv is not None for c in range(iv.lo, iv.hi + 1)]

    def with_vars(self, row_var: int, col_var: int) -> "RowConvexConstraint":
        return RowConvexConstraint(row_var, col_var, self.row_domain, self.col_domain, self.rows)


def from_dense(
    row_domain: Domain,
    col_domain: Domain,
    matrix: Sequence[Sequence[int]],
    row_var: int = 0,
    col_var: int = 1,
) -> RowConvexConstraint:
    """Interval encoding of a 0/1 grid; raises :class:`NotRowConvex` on a split row."""
    if len(matrix) != len(row_domain):
        raise DomainMismatch(f"matrix has {len(matrix)} rows, row domain has {len(row_domain)} values")
    rows: list[SupportInterval | None] = []
    for r, line in enumerate(matrix):
        if len(line) != len(col_domain):
            raise DomainMismatch(f"matrix row {r} has {len(line)} columns, expected {len(col_domain)}")
        ones = [c for c, bit in enumerate(line) if bit]
        if not ones:
            rows.append(None)
            continue
        if ones[-1] - ones[0] + 1 != len(ones):
            raise NotRowConvex(r)
        rows.append(SupportInterval(ones[0], ones[-1]))
    return RowConvexConstraint(row_var, col_var, row_domain, col_domain, tuple(rows))


def to_dense(c: RowConvexConstraint) -> list[list[int]]:
    ncols = len(c.col_domain)
    grid = []
    for iv in c.rows:
        line = [0] * ncols
        if iv is not None:
            for k in range(iv.lo, iv.hi + 1):
                line[k] = 1
        grid.append(line)
    return grid


def image(c: RowConvexConstraint, row: int) -> SupportInterval | None:
    return c.image(row)


def difference_constraint(
    row_var: int, col_var: int, row_domain: Domain, col_domain: Domain, lo: int, hi: int
) -> RowConvexConstraint:
    """``lo <= X_row - X_col <= hi`` compiled to interval rows."""
    rows = tuple(col_domain.window(x - hi, x - lo) for x in row_domain)
    return RowConvexConstraint(
        row_var, col_var, row_domain, col_domain, tuple(None if w is None else SupportInterval(*w) for w in rows)
    )


def span_transpose(c: RowConvexConstraint, counter: OpCounter | None = None) -> RowConvexConstraint:
    """Transpose where each column's image spans its first..last containing row.

    For DS and US constraints the rows containing a column are contiguous among
    the *non-empty* rows, so the result is exact up to empty rows of ``c`` lying
    inside a span. Arc-consistency engines only ever walk non-empty rows, so this
    relaxed form is what they consume; :func:`gscsp.algebra.transpose` adds the
    exactness check.
    """
    from .classify import is_ds  # local import: classify depends on core

    ncols = len(c.col_domain)
    first = [-1] * ncols
    last = [-1] * ncols
    nz = c.nonempty_rows()
    steps = len(c.rows)
    if is_ds(c):
        # first row with hi >= v / last row with lo <= v, both monotone in v
        p = 0
        for v in range(ncols):
            while p < len(nz) and c.rows[nz[p]].hi < v:
                p += 1
                steps += 1
            if p < len(nz) and c.rows[nz[p]].lo <= v:
                first[v] = nz[p]
        q = len(nz) - 1
        for v in range(ncols - 1, -1, -1):
            while q >= 0 and c.rows[nz[q]].lo > v:
                q -= 1
                steps += 1
            if q >= 0 and c.rows[nz[q]].hi >= v:
                last[v] = nz[q]
    else:
        # up staircase: first row with lo <= v, last row with hi >= v
        p = 0
        for v in range(ncols - 1, -1, -1):
            while p < len(nz) and c.rows[nz[p]].lo > v:
                p += 1
                steps += 1
            if p < len(nz) and c.rows[nz[p]].hi >= v:
                first[v] = nz[p]
        q = len(nz) - 1
        for v in range(ncols):
            while q >= 0 and c.rows[nz[q]].hi < v:
                q -= 1
                steps += 1
            if q >= 0 and c.rows[nz[q]].lo <= v:
                last[v] = nz[q]
    rows = tuple(None if first[v] < 0 else SupportInterval(first[v], last[v]) for v in range(ncols))
    if counter is not None:
        counter.tick(steps + 3 * ncols)
    return RowConvexConstraint(c.col_var, c.row_var, c.col_domain, c.row_domain, rows)


Assignment = tuple[int, ...]


@dataclass(frozen=True)
class CspInstance:
    domains: tuple[Domain, ...]
    constraints: tuple[RowConvexConstraint, ...]
    names: tuple[str, ...] = field(default=())

    def __init__(
        self,
        domains: Sequence[Domain | Iterable[int]],
        constraints: Iterable[RowConvexConstraint] = (),
        names: Sequence[str] | None = None,
    ):
        doms = tuple(d if isinstance(d, Domain) else Domain(d) for d in domains)
        n = len(doms)
        if names is None or len(names) == 0:
            names = [f"X{i}" for i in range(n)]
        if len(names) != n:
            raise ValueError(f"{len(names)} names given for {n} variables")
        if len(set(names)) != n:
            raise ValueError("variable names must be distinct")
        seen: set[frozenset[int]] = set()
        cons = sorted(constraints, key=lambda c: c.pair)
        for c in cons:
            i, j = c.pair
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"constraint {c.pair} references an unknown variable")
            if i == j:
                raise ValueError(f"constraint relates variable {i} to itself")
            key = frozenset(c.pair)
            if key in seen:
                raise DuplicateConstraint((min(i, j), max(i, j)))
            seen.add(key)
            if c.row_domain != doms[i] or c.col_domain != doms[j]:
                raise DomainMismatch(f"constraint {c.pair} domains differ from the instance domains")
        object.__setattr__(self, "domains", doms)
        object.__setattr__(self, "constraints", tuple(cons))
        object.__setattr__(self, "names", tuple(names))

    @property
    def n(self) -> int:
        return len(self.domains)

    @property
    def c(self) -> int:
        return len(self.constraints)

    @property
    def d(self) -> int:
        return max((len(dom) for dom in self.domains), default=0)

    @cached_property
    def arcs(self) -> tuple[RowConvexConstraint, ...]:
        """Both orientations of every constraint; the reverse one via :func:`span_transpose`.

        Order: for each stored constraint (sorted by pair), the stored orientation
        then its reverse, so arc ``2k`` and ``2k + 1`` are mutual reverses.
        """
        out: list[RowConvexConstraint] = []
        for c in self.constraints:
            out.append(c)
            out.append(span_transpose(c))
        return tuple(out)

    @cached_property
    def arc_classes(self) -> tuple[tuple[bool, bool], ...]:
        """``(is DS, is US)`` for every arc, in :attr:`arcs` order."""
        from .classify import is_ds, is_us

        return tuple((is_ds(c), is_us(c)) for c in self.arcs)

    @cached_property
    def tables(self):
        """Flat arc arrays consumed by the propagation and search engines."""
        from .tables import build_tables

        return build_tables(self)

    def constraint(self, i: int, j: int) -> RowConvexConstraint | None:
        """The stored constraint on ``(i, j)`` in that orientation, if any."""
        for c in self.constraints:
            if c.pair == (i, j):
                return c
        return None

    def neighbors(self, i: int) -> list[int]:
        out = []
        for c in self.constraints:
            if c.row_var == i:
                out.append(c.col_var)
            elif c.col_var == i:
                out.append(c.row_var)
        return out

    def var_index(self, name_or_id: str | int) -> int:
        if isinstance(name_or_id, int):
            if not 0 <= name_or_id < self.n:
                raise KeyError(name_or_id)
            return name_or_id
        if name_or_id in self.names:
            return self.names.index(name_or_id)
        if name_or_id.lstrip("-").isdigit():
            return self.var_index(int(name_or_id))
        raise KeyError(name_or_id)

    def is_solution(self, values: Sequence[int]) -> bool:
        """Direct evaluation of every constraint on a value assignment."""
        if len(values) != self.n:
            return False
        for i, v in enumerate(values):
            if v not in self.domains[i]:
                return False
        return all(c.allows(values[c.row_var], values[c.col_var]) for c in self.constraints)

    def format_assignment(self, values: Sequence[int]) -> str:
        return " ".join(f"{name}={v}" for name, v in zip(self.names, values))
