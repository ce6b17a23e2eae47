"""DSCSP Solver: synchronized forward scans that stop at the first solution.

Each variable owns a cursor into its domain that only ever moves forward, and
a flag recording whether its current value has been checked against all its
constraints. The returned assignment takes, for every variable, the smallest
value that belongs to any solution; when some cursor runs off its domain the
instance is infeasible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import backend as _backend
from .core import CspInstance
from .errors import NotDS

END = -1


@dataclass(frozen=True)
class SolveResult:
    assignment: tuple[int, ...] | None
    op_count: int
    cursors: tuple[int, ...] = ()
    history: tuple[tuple[int, int], ...] = ()  # (variable, new cursor), when recorded

    @property
    def feasible(self) -> bool:
        return self.assignment is not None


def check_ds(instance: CspInstance) -> None:
    for c, (ds, _) in zip(instance.arcs, instance.arc_classes):
        if not ds:
            # report the stored orientation
            pair = c.pair if instance.constraint(*c.pair) is not None else (c.col_var, c.row_var)
            raise NotDS(pair)


class SolverState:
    """Cursors, flags and queue of one run; ``advance`` enforces monotone cursors."""

    def __init__(self, instance: CspInstance):
        self.instance = instance
        t = instance.tables
        self.n = instance.n
        self.dsize = t.dsize.tolist()
        self.scan = [0] * self.n
        self.flag = [0] * self.n
        self.sum = 0
        self.queue: deque[int] = deque(range(self.n))
        self.ops = self.n
        self.history: list[tuple[int, int]] | None = None

    def advance(self, var: int, to: int) -> None:
        if to < self.scan[var]:
            raise AssertionError(f"cursor of variable {var} would move back from {self.scan[var]} to {to}")
        self.scan[var] = to
        self.ops += 1
        if self.history is not None:
            self.history.append((var, to))


def solve_dscsp_python(instance: CspInstance, record_cursors: bool = False) -> SolveResult:
    check_ds(instance)
    t = instance.tables
    lo = t.lo.tolist()
    row_off = t.row_off.tolist()
    dst = t.dst.tolist()
    rev = t.rev.tolist()
    vao = t.var_arc_off.tolist()
    va = t.var_arcs.tolist()
    out_arcs = [va[vao[i] : vao[i + 1]] for i in range(t.n)]

    st = SolverState(instance)
    if record_cursors:
        st.history = []
    scan, flag, dsize, queue = st.scan, st.flag, st.dsize, st.queue
    n = st.n

    def infeasible() -> SolveResult:
        return SolveResult(None, st.ops, tuple(scan), tuple(st.history or ()))

    if n == 0:
        return SolveResult((), st.ops, ())
    while queue:
        j = queue.popleft()
        st.ops += 1
        restart = True
        while restart:
            restart = False
            for x, a in enumerate(out_arcs[j]):
                k = dst[a]
                ra = rev[a]
                bj = row_off[a]
                bk = row_off[ra]
                st.ops += 1
                start = scan[j]
                while scan[j] < dsize[j] and lo[bj + scan[j]] == -1:
                    st.advance(j, scan[j] + 1)
                if scan[j] == dsize[j]:
                    return infeasible()
                if scan[j] != start and x > 0:
                    # constraints already checked saw the old value
                    restart = True
                    break
                moved = False
                while scan[k] < dsize[k] and lo[bk + scan[k]] == -1:
                    st.advance(k, scan[k] + 1)
                    moved = True
                if scan[k] == dsize[k]:
                    return infeasible()
                if moved and flag[k]:
                    # unreachable for a flagged neighbour (its cursor was already
                    # checked against this constraint); kept as a safety net
                    flag[k] = 0
                    st.sum -= 1
                    queue.append(k)
                    st.ops += 1
                min_j = lo[bk + scan[k]]
                if scan[j] < min_j:
                    st.advance(j, min_j)
                    restart = True
                    break
                min_k = lo[bj + scan[j]]
                if scan[k] < min_k:
                    st.advance(k, min_k)
                    if flag[k]:
                        flag[k] = 0
                        st.sum -= 1
                        queue.append(k)
                        st.ops += 1
        flag[j] = 1
        st.sum += 1
        if st.sum == n:
            values = tuple(instance.domains[i][scan[i]] for i in range(n))
            return SolveResult(values, st.ops, tuple(scan), tuple(st.history or ()))
    raise AssertionError("queue drained before every flag was set")


def solve_dscsp(instance: CspInstance, backend: str | None = None) -> SolveResult:
    """Smallest-member solution of a DS instance, or an infeasible result."""
    chosen = _backend.resolve(backend)
    if chosen == "python":
        return solve_dscsp_python(instance)
    check_ds(instance)
    if instance.n == 0:
        return SolveResult((), 0, ())
    t = instance.tables
    found, scan, ops = _backend.kernels.dscsp_run(
        t.lo, t.row_off, t.dst, t.rev, t.dsize, t.var_arc_off, t.var_arcs
    )
    scan = tuple(int(s) for s in scan)
    if not found:
        return SolveResult(None, int(ops), scan)
    values = tuple(instance.domains[i][scan[i]] for i in range(instance.n))
    return SolveResult(values, int(ops), scan)
