"""Ground truth and instance generators.

Nothing here shares code with the engines beyond the data types: brute force
enumerates tuples, AC-3 tests membership pair by pair, and the dense checkers
read the 0/1 grid directly from the definitions.

Random draws use numpy's ``default_rng(seed)`` (PCG64), so a given
:class:`GenSpec` always yields the same instance.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .acids import CONSISTENT, EMPTY_DOMAIN, AcResult
from .core import (
    CspInstance,
    Domain,
    RowConvexConstraint,
    SupportInterval,
    difference_constraint,
)
from .errors import InvalidSpec, TooLarge

BRUTE_FORCE_LIMIT = 10**7


# -- brute force -----------------------------------------------------------


def brute_force_solutions(instance: CspInstance, limit: int | None = None) -> list[tuple[int, ...]]:
    """Every satisfying assignment in lexicographic order (at most ``limit``)."""
    total = math.prod(len(d) for d in instance.domains)
    if total > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{total} tuples exceeds the brute-force limit of {BRUTE_FORCE_LIMIT}")
    n = instance.n
    # constraints checked as soon as both endpoints are assigned
    due: list[list[RowConvexConstraint]] = [[] for _ in range(n)]
    for c in instance.constraints:
        due[max(c.row_var, c.col_var)].append(c)
    out: list[tuple[int, ...]] = []
    values = [0] * n

    def extend(i: int) -> bool:
        if i == n:
            out.append(tuple(values))
            return limit is not None and len(out) >= limit
        for v in instance.domains[i]:
            values[i] = v
            if all(c.allows(values[c.row_var], values[c.col_var]) for c in due[i]):
                if extend(i + 1):
                    return True
        return False

    extend(0)
    return out


def min_solution_members(instance: CspInstance) -> tuple[int, ...] | None:
    """Per variable, the smallest value taking part in any solution."""
    sols = brute_force_solutions(instance)
    if not sols:
        return None
    return tuple(min(s[i] for s in sols) for i in range(instance.n))


# -- AC-3 ------------------------------------------------------------------


def ac3_reference(instance: CspInstance) -> AcResult:
    """Maximal arc-consistent subdomains by plain AC-3 over membership tests."""
    n = instance.n
    alive = [list(range(len(d))) for d in instance.domains]
    # arcs (i, j, test(r_i, r_j)) in both orientations
    arcs: list[tuple[int, int, RowConvexConstraint, bool]] = []
    for c in instance.constraints:
        arcs.append((c.row_var, c.col_var, c, False))
        arcs.append((c.col_var, c.row_var, c, True))
    into: list[list[int]] = [[] for _ in range(n)]
    for k, (_, j, _, _) in enumerate(arcs):
        into[j].append(k)
    ops = 0
    queue = deque(range(len(arcs)))
    queued = [True] * len(arcs)
    empty_var = None
    while queue:
        k = queue.popleft()
        queued[k] = False
        i, j, c, flipped = arcs[k]
        keep = []
        for ri in alive[i]:
            supported = False
            for rj in alive[j]:
                ops += 1
                if (c.contains(rj, ri) if flipped else c.contains(ri, rj)):
                    supported = True
                    break
            if supported:
                keep.append(ri)
        if len(keep) == len(alive[i]):
            continue
        alive[i] = keep
        if not keep:
            empty_var = i
            break
        for k2 in into[i]:
            if arcs[k2][0] != j and not queued[k2]:
                queue.append(k2)
                queued[k2] = True
    domains = tuple(tuple(instance.domains[i][r] for r in alive[i]) for i in range(n))
    status = CONSISTENT if empty_var is None else EMPTY_DOMAIN
    return AcResult(status, domains, ops, empty_var, None, "ac3")


# -- definitional checks on 0/1 grids ---------------------------------------


def _members(grid: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    return [(r, c) for r, line in enumerate(grid) for c, bit in enumerate(line) if bit]


def dense_min_closed(grid: Sequence[Sequence[int]]) -> bool:
    m = _members(grid)
    return all(grid[min(a, c)][min(b, d)] for a, b in m for c, d in m)


def dense_max_closed(grid: Sequence[Sequence[int]]) -> bool:
    m = _members(grid)
    return all(grid[max(a, c)][max(b, d)] for a, b in m for c, d in m)


def dense_staircase(grid: Sequence[Sequence[int]], alpha: str, beta: str) -> bool:
    """(v, w) member and v' alpha v, w' beta w imply (v', w') member."""
    nrows = len(grid)
    ncols = len(grid[0]) if nrows else 0

    def rel(x: int, y: int, op: str) -> bool:
        return x <= y if op == "<=" else x >= y

    for v, w in _members(grid):
        for v2 in range(nrows):
            if not rel(v2, v, alpha):
                continue
            for w2 in range(ncols):
                if rel(w2, w, beta) and not grid[v2][w2]:
                    return False
    return True


def _reduce(grid: Sequence[Sequence[int]]) -> list[list[int]]:
    rows = [r for r, line in enumerate(grid) if any(line)]
    cols = [c for c in range(len(grid[0]) if grid else 0) if any(line[c] for line in grid)]
    return [[grid[r][c] for c in cols] for r in rows]


def _spans(grid: Sequence[Sequence[int]]) -> list[tuple[int, int]] | None:
    out = []
    for line in grid:
        ones = [c for c, bit in enumerate(line) if bit]
        if ones[-1] - ones[0] + 1 != len(ones):
            return None
        out.append((ones[0], ones[-1]))
    return out


def dense_row_convex(grid: Sequence[Sequence[int]]) -> bool:
    return _spans(_reduce(grid)) is not None


def dense_ds(grid: Sequence[Sequence[int]]) -> bool:
    """For every pair of non-empty rows r < r': min and max do not decrease."""
    spans = _spans(_reduce(grid))
    if spans is None:
        return False
    return all(
        spans[a][0] <= spans[b][0] and spans[a][1] <= spans[b][1]
        for a in range(len(spans))
        for b in range(a + 1, len(spans))
    )


def dense_us(grid: Sequence[Sequence[int]]) -> bool:
    spans = _spans(_reduce(grid))
    if spans is None:
        return False
    return all(
        spans[a][0] >= spans[b][0] and spans[a][1] >= spans[b][1]
        for a in range(len(spans))
        for b in range(a + 1, len(spans))
    )


def dense_crc(grid: Sequence[Sequence[int]]) -> bool:
    spans = _spans(_reduce(grid))
    if spans is None:
        return False
    return all(a2 <= b1 + 1 and b2 >= a1 - 1 for (a1, b1), (a2, b2) in zip(spans, spans[1:]))


def dense_transpose(grid: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(col) for col in zip(*grid)] if grid else []


def dense_and(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[int(x and y) for x, y in zip(la, lb)] for la, lb in zip(a, b)]


def dense_product(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    """Boolean matrix product: (u, w) iff some v has a[u][v] and b[v][w]."""
    ncols = len(b[0]) if b else 0
    return [
        [int(any(a[u][v] and b[v][w] for v in range(len(b)))) for w in range(ncols)]
        for u in range(len(a))
    ]


# -- generators ------------------------------------------------------------


class Kind(enum.Enum):
    BOUNDED_DIFF = "bounded_diff"
    RANDOM_DS = "random_ds"
    RANDOM_US = "random_us"


class Topology(enum.Enum):
    CHAIN = "chain"
    CYCLE = "cycle"
    RANDOM = "random"


@dataclass(frozen=True)
class GenSpec:
    kind: Kind
    n: int
    d: int
    density: float = 0.3
    seed: int = 0
    topology: Topology = Topology.CHAIN
    c: int | None = None  # constraint count for RANDOM topology


def _validate(spec: GenSpec) -> None:
    if not isinstance(spec.kind, Kind) or not isinstance(spec.topology, Topology):
        raise InvalidSpec("kind and topology must be Kind / Topology members")
    if spec.n < 1 or spec.d < 1:
        raise InvalidSpec("n and d must be positive")
    if not 0.0 <= spec.density <= 1.0:
        raise InvalidSpec("density must lie in [0, 1]")
    if not -(2**63) <= spec.seed < 2**64:
        raise InvalidSpec("seed must fit in 64 bits")
    if spec.topology is Topology.RANDOM:
        most = spec.n * (spec.n - 1) // 2
        if spec.c is None or not 0 <= spec.c <= most:
            raise InvalidSpec(f"RANDOM topology needs 0 <= c <= {most}")


def _pairs(spec: GenSpec, rng: np.random.Generator) -> list[tuple[int, int]]:
    n = spec.n
    if spec.topology is Topology.CHAIN:
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif spec.topology is Topology.CYCLE:
        pairs = [(i, i + 1) for i in range(n - 1)]
        if n > 2:
            pairs.append((n - 1, 0))
    else:
        every = [(i, j) for i in range(n) for j in range(i + 1, n)]
        picks = rng.choice(len(every), size=spec.c, replace=False) if spec.c else []
        pairs = [every[int(k)] for k in sorted(picks)]
        # random orientation of the stored constraint
        pairs = [(j, i) if rng.random() < 0.5 else (i, j) for i, j in pairs]
    return pairs


def random_ds_rows(
    nrows: int, ncols: int, rng: np.random.Generator, density: float = 0.3
) -> tuple[SupportInterval | None, ...]:
    """DS rows with empty rows only at either end and no gap between consecutive rows."""
    width = max(0, round(density * ncols))
    start = 0
    stop = nrows
    if nrows > 1 and rng.random() < 0.3:
        start = int(rng.integers(0, nrows))
        stop = int(rng.integers(start, nrows)) + 1
    rows: list[SupportInterval | None] = [None] * nrows
    lo = int(rng.integers(0, ncols))
    hi = int(rng.integers(lo, min(ncols - 1, lo + width) + 1))
    for r in range(start, stop):
        if r > start:
            lo = int(rng.integers(lo, min(hi + 1, ncols - 1) + 1))
            floor = max(hi, lo)
            hi = int(rng.integers(floor, max(floor, min(ncols - 1, lo + width)) + 1))
        rows[r] = SupportInterval(lo, hi)
    return tuple(rows)


def random_us_rows(
    nrows: int, ncols: int, rng: np.random.Generator, density: float = 0.3
) -> tuple[SupportInterval | None, ...]:
    return tuple(reversed(random_ds_rows(nrows, ncols, rng, density)))


def random_domain(d: int, rng: np.random.Generator) -> Domain:
    return Domain(sorted(int(v) for v in rng.choice(3 * d, size=d, replace=False)))


def generate(spec: GenSpec) -> CspInstance:
    _validate(spec)
    rng = np.random.default_rng(spec.seed)
    domains = [random_domain(spec.d, rng) for _ in range(spec.n)]
    cons = []
    for i, j in _pairs(spec, rng):
        if spec.kind is Kind.BOUNDED_DIFF:
            # differences of two domain values fall in (-span, span)
            span = 3 * spec.d
            width = int(rng.integers(0, round(spec.density * span) + 1))
            lo = int(rng.integers(-span // 2, span // 2 + 1)) - width // 2
            hi = lo + width
            cons.append(difference_constraint(i, j, domains[i], domains[j], lo, hi))
        else:
            make = random_ds_rows if spec.kind is Kind.RANDOM_DS else random_us_rows
            rows = make(spec.d, spec.d, rng, spec.density)
            cons.append(RowConvexConstraint(i, j, domains[i], domains[j], rows))
    return CspInstance(domains, cons)


# -- named families --------------------------------------------------------


def cyclone_instance(include_c20: bool = True) -> CspInstance:
    """Three events A, B, C with pairwise bounded time differences."""
    da = Domain([1, 5, 9])
    db = Domain([2, 6, 8])
    dc = Domain([3, 4, 10, 20] if include_c20 else [3, 4, 10])
    cons = [
        difference_constraint(0, 1, da, db, -3, 1),
        difference_constraint(1, 2, db, dc, -2, 2),
        difference_constraint(2, 0, dc, da, -2, 3),
    ]
    return CspInstance([da, db, dc], cons, names=["A", "B", "C"])


def diff_chain(n: int, d: int, lo: int = 1, hi: int = 3) -> CspInstance:
    """``lo <= X_i - X_{i+1} <= hi`` on domains 0..d-1; pruning cascades along the chain."""
    dom = Domain(range(d))
    cons = [difference_constraint(i, i + 1, dom, dom, lo, hi) for i in range(n - 1)]
    return CspInstance([dom] * n, cons)


def planted_chain(n: int, d: int, s: int, seed: int = 0) -> CspInstance:
    """``|X_i - X_{i+1}| <= 1`` with domains shifted by offsets in [0, s].

    The smallest solution member of every variable sits at domain index <= s,
    whatever ``d`` is.
    """
    if not 0 <= s < d:
        raise InvalidSpec("need 0 <= s < d")
    rng = np.random.default_rng(seed)
    offsets = [int(o) for o in rng.integers(0, s + 1, size=n)]
    doms = [Domain(range(o, o + d)) for o in offsets]
    cons = [difference_constraint(i, i + 1, doms[i], doms[i + 1], -1, 1) for i in range(n - 1)]
    return CspInstance(doms, cons)


def infeasible_chain(n: int, d: int) -> CspInstance:
    """``X_i - X_{i+1} >= g`` on domains 0..d-1 with ``(n - 1) g > d - 1``: no solution."""
    if n < 2:
        raise InvalidSpec("an infeasible chain needs at least two variables")
    g = (d - 1) // (n - 1) + 1
    dom = Domain(range(d))
    cons = [difference_constraint(i, i + 1, dom, dom, g, d) for i in range(n - 1)]
    return CspInstance([dom] * n, cons)
