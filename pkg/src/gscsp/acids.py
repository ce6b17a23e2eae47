"""ACiDS: optimal O(cd) arc consistency for down staircase constraints.

The engine keeps, per arc (i, j):

* an active view of ``D_i(C_ij)`` as a doubly linked list over row indices
  (removed nodes keep their stale pointers, which later successor lookups
  follow and compress);
* the MIN structure: for every column ``v_j`` an interval of row indices whose
  smallest still-available support is ``v_j``.

Removing a value ``v_j`` from ``D_j`` queues ``(arc (k, j), v_j)`` for every
arc into ``j``; processing the entry only walks ``MIN(v_j, k)`` from the end
that loses support first. The up staircase variant walks the MIN intervals in
the opposite row direction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import backend as _backend
from .core import CspInstance
from .errors import AlreadyRemoved, ClassMismatch, GscspError, NotApplicable

DS = "ds"
US = "us"
CONSISTENT = "CONSISTENT"
EMPTY_DOMAIN = "EMPTY_DOMAIN"


class InvariantViolation(GscspError, AssertionError):
    pass


@dataclass(frozen=True)
class AcResult:
    status: str
    domains: tuple[tuple[int, ...], ...]
    op_count: int
    empty_var: int | None = None
    direction: str | None = None
    engine: str = "acids"

    @property
    def consistent(self) -> bool:
        return self.status == CONSISTENT

    def first(self, var: int) -> int:
        return self.domains[var][0]

    def last(self, var: int) -> int:
        return self.domains[var][-1]


def normalize_direction(direction: str) -> str:
    d = str(direction).lower()
    if d not in (DS, US):
        raise ValueError(f"direction must be 'ds' or 'us', not {direction!r}")
    return d


def check_classes(instance: CspInstance, direction: str) -> None:
    k = 0 if direction == DS else 1
    for c, flags in zip(instance.arcs, instance.arc_classes):
        if not flags[k]:
            raise ClassMismatch(c.pair, direction)


class AcidsEngine:
    """Pure-Python ACiDS with the individual subroutines exposed for inspection."""

    def __init__(self, instance: CspInstance, direction: str = DS, check_invariants: bool = False):
        self.direction = normalize_direction(direction)
        check_classes(instance, self.direction)
        self.instance = instance
        self.check_invariants = check_invariants
        t = instance.tables
        self.src = t.src.tolist()
        self.dst = t.dst.tolist()
        self.rev = t.rev.tolist()
        self.row_off = t.row_off.tolist()
        self.col_off = t.col_off.tolist()
        self.lo = t.lo.tolist()
        self.hi = t.hi.tolist()
        self.var_off = t.var_off.tolist()
        self.dsize = t.dsize.tolist()
        vao = t.var_arc_off.tolist()
        va = t.var_arcs.tolist()
        self.out_arcs = [va[vao[i] : vao[i + 1]] for i in range(t.n)]
        self.n_arcs = len(self.src)

        self.alive = [1] * t.n_slots
        self.alive_count = list(self.dsize)
        self.nxt = [-1] * len(self.lo)
        self.prv = [-1] * len(self.lo)
        self.head = [-1] * self.n_arcs
        self.tail = [-1] * self.n_arcs
        for a in range(self.n_arcs):
            base = self.row_off[a]
            prev = -1
            for r in range(self.dsize[self.src[a]]):
                if self.lo[base + r] == -1:
                    continue
                if prev == -1:
                    self.head[a] = r
                else:
                    self.nxt[base + prev] = r
                self.prv[base + r] = prev
                prev = r
            self.tail[a] = prev

        self.min_lo = [-1] * self.col_off[-1]
        self.min_hi = [-1] * self.col_off[-1]
        self.queue: deque[tuple[int, int]] = deque()
        self.pending = [0] * self.n_arcs
        self.ops = 0
        self.max_enqueued: dict[tuple[int, int], int] = {}

    # -- active views -----------------------------------------------------

    def is_active(self, var: int, r: int) -> bool:
        return bool(self.alive[self.var_off[var] + r])

    def view(self, a: int) -> list[int]:
        """Active members of arc ``a``'s row view, in increasing order."""
        out = []
        base = self.row_off[a]
        r = self.head[a]
        while r != -1:
            out.append(r)
            r = self.nxt[base + r]
        return out

    def succ(self, a: int, r: int) -> int:
        """Next active member after ``r`` in arc ``a``'s view (``r`` may be removed)."""
        base = self.row_off[a]
        voff = self.var_off[self.src[a]]
        nxt = self.nxt
        s = nxt[base + r]
        if s == -1 or self.alive[voff + s]:
            return s
        path = []
        while s != -1 and not self.alive[voff + s]:
            path.append(s)
            s = nxt[base + s]
            self.ops += 1
        for p in path:
            nxt[base + p] = s
        nxt[base + r] = s
        return s

    def pred(self, a: int, r: int) -> int:
        base = self.row_off[a]
        voff = self.var_off[self.src[a]]
        prv = self.prv
        s = prv[base + r]
        if s == -1 or self.alive[voff + s]:
            return s
        path = []
        while s != -1 and not self.alive[voff + s]:
            path.append(s)
            s = prv[base + s]
            self.ops += 1
        for p in path:
            prv[base + p] = s
        prv[base + r] = s
        return s

    # -- MIN structure ----------------------------------------------------

    def min_interval(self, a: int, col: int) -> tuple[int, int] | None:
        k = self.col_off[a] + col
        if self.min_lo[k] == -1:
            return None
        return self.min_lo[k], self.min_hi[k]

    def _merge(self, a: int, col: int, lo: int, hi: int) -> None:
        k = self.col_off[a] + col
        if self.min_lo[k] == -1:
            self.min_lo[k] = lo
            self.min_hi[k] = hi
        else:
            # several removals from one batch can feed the same successor in
            # any row order, so take the hull rather than assume adjacency
            if lo < self.min_lo[k]:
                self.min_lo[k] = lo
            if hi > self.min_hi[k]:
                self.min_hi[k] = hi
        self.ops += 1

    def initialize_min(self) -> None:
        """MIN(v_j, i) = rows whose image starts at v_j, by one sweep per arc."""
        forward = self.direction == DS
        for a in range(self.n_arcs):
            base = self.row_off[a]
            scan_j = 0
            r = self.head[a] if forward else self.tail[a]
            link = self.nxt if forward else self.prv
            while r != -1:
                m = self.lo[base + r]
                if m > scan_j:
                    scan_j = m
                    self.ops += 1
                self._merge(a, m, r, r)
                r = link[base + r]

    # -- AC5 subroutines --------------------------------------------------

    def arc_cons(self, a: int) -> list[int]:
        """Active rows of arc ``a`` with an empty image."""
        i = self.src[a]
        base = self.row_off[a]
        voff = self.var_off[i]
        lo = self.lo
        alive = self.alive
        n = self.dsize[i]
        self.ops += n
        return [r for r in range(n) if alive[voff + r] and lo[base + r] == -1]

    def local_arc_cons(self, a: int, vj: int) -> list[int]:
        """Rows of arc ``a`` whose last support was the just-removed column ``vj``."""
        k = self.col_off[a] + vj
        lo_m = self.min_lo[k]
        if lo_m == -1:
            return []
        hi_m = self.min_hi[k]
        self.min_lo[k] = self.min_hi[k] = -1
        vj2 = self.succ(self.rev[a], vj)
        base = self.row_off[a]
        voff = self.var_off[self.src[a]]
        hi = self.hi
        delta = []
        if self.direction == DS:
            scan = lo_m if self.alive[voff + lo_m] else self.succ(a, lo_m)
            nxt = self.nxt
            while scan != -1 and scan <= hi_m and (vj2 == -1 or hi[base + scan] < vj2):
                delta.append(scan)
                scan = nxt[base + scan]
                self.ops += 1
            if scan != -1 and scan <= hi_m:
                self._merge(a, vj2, scan, hi_m)
        else:
            scan = hi_m if self.alive[voff + hi_m] else self.pred(a, hi_m)
            prv = self.prv
            while scan != -1 and scan >= lo_m and (vj2 == -1 or hi[base + scan] < vj2):
                delta.append(scan)
                scan = prv[base + scan]
                self.ops += 1
            if scan != -1 and scan >= lo_m:
                self._merge(a, vj2, lo_m, scan)
        return delta

    def enqueue(self, var: int, delta: list[int]) -> None:
        for v in delta:
            for a_out in self.out_arcs[var]:
                a_in = self.rev[a_out]
                self.queue.append((a_in, v))
                self.pending[a_in] += 1
                self.ops += 1
                if self.check_invariants:
                    key = (a_in, v)
                    self.max_enqueued[key] = self.max_enqueued.get(key, 0) + 1
                    if self.max_enqueued[key] > 1:
                        raise InvariantViolation(f"value {v} enqueued twice for arc {a_in}")

    def remove(self, var: int, r: int) -> None:
        slot = self.var_off[var] + r
        if not self.alive[slot]:
            raise AlreadyRemoved(f"value index {r} of variable {var} is already removed")
        nxt, prv = self.nxt, self.prv
        for a in self.out_arcs[var]:
            base = self.row_off[a]
            if self.lo[base + r] == -1:
                continue
            p = prv[base + r]
            s = nxt[base + r]
            if p == -1:
                self.head[a] = s
            else:
                nxt[base + p] = s
            if s == -1:
                self.tail[a] = p
            else:
                prv[base + s] = p
            self.ops += 1
        self.alive[slot] = 0
        self.alive_count[var] -= 1
        self.ops += 1

    def _prune(self, var: int, delta: list[int]) -> bool:
        """Enqueue then remove ``delta``; True when the domain wiped out."""
        if not delta:
            return False
        self.enqueue(var, delta)
        for r in delta:
            self.remove(var, r)
        return self.alive_count[var] == 0

    # -- main loop --------------------------------------------------------

    def run(self) -> AcResult:
        self.initialize_min()
        for a in range(self.n_arcs):
            i = self.src[a]
            if self._prune(i, self.arc_cons(a)):
                return self._result(EMPTY_DOMAIN, i)
        while self.queue:
            a, vj = self.queue.popleft()
            self.pending[a] -= 1
            self.ops += 1
            i = self.src[a]
            if self._prune(i, self.local_arc_cons(a, vj)):
                return self._result(EMPTY_DOMAIN, i)
            if self.check_invariants:
                self.verify()
        if self.check_invariants:
            self.verify()
        return self._result(CONSISTENT, None)

    def surviving(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for i, dom in enumerate(self.instance.domains):
            voff = self.var_off[i]
            out.append(tuple(v for r, v in enumerate(dom.values) if self.alive[voff + r]))
        return tuple(out)

    def _result(self, status: str, empty_var: int | None) -> AcResult:
        return AcResult(status, self.surviving(), self.ops, empty_var, self.direction, "acids")

    # -- debug invariants -------------------------------------------------

    def verify(self) -> None:
        """Check the smallest-support (MIN) invariant and interval disjointness.

        Only arcs with no queued removals are checked: while a removal of
        ``v_j`` is pending, rows whose smallest support was ``v_j`` have not yet
        been reassigned.
        """
        for a in range(self.n_arcs):
            if self.pending[a] == 0:
                self._verify_arc(a)

    def _verify_arc(self, a: int) -> None:
        i, j = self.src[a], self.dst[a]
        base, cbase = self.row_off[a], self.col_off[a]
        voff_i, voff_j = self.var_off[i], self.var_off[j]
        ncols = self.dsize[j]
        intervals = []
        for c in range(ncols):
            if self.min_lo[cbase + c] == -1:
                continue
            if not self.alive[voff_j + c]:
                raise InvariantViolation(f"arc {a}: removed column {c} still owns a MIN interval")
            intervals.append((c, self.min_lo[cbase + c], self.min_hi[cbase + c]))
        for (c1, lo1, hi1), (c2, lo2, hi2) in zip(intervals, intervals[1:]):
            ordered = hi1 < lo2 if self.direction == DS else lo1 > hi2
            if not ordered:
                raise InvariantViolation(
                    f"arc {a}: MIN intervals of columns {c1} and {c2} are not disjoint and ordered"
                )
        for r in range(self.dsize[i]):
            if not self.alive[voff_i + r] or self.lo[base + r] == -1:
                continue
            smallest = next(
                (c for c in range(self.lo[base + r], self.hi[base + r] + 1) if self.alive[voff_j + c]),
                None,
            )
            if smallest is None:
                raise InvariantViolation(f"arc {a}: active row {r} has no active support")
            owners = [c for c, lo, hi in intervals if lo <= r <= hi]
            if owners != [smallest]:
                raise InvariantViolation(
                    f"arc {a}: row {r} has smallest support {smallest} but lies in MIN of {owners}"
                )


def run_acids(
    instance: CspInstance,
    direction: str = DS,
    check_invariants: bool | None = None,
    backend: str | None = None,
) -> AcResult:
    """Arc consistency for a DS (or, with ``direction='us'``, US) instance."""
    direction = normalize_direction(direction)
    if check_invariants is None:
        check_invariants = _backend.invariants_requested()
    chosen = "python" if check_invariants else _backend.resolve(backend)
    if chosen == "python":
        return AcidsEngine(instance, direction, check_invariants).run()
    check_classes(instance, direction)
    t = instance.tables
    status, empty_var, alive, ops = _backend.kernels.acids_run(
        t.lo, t.hi, t.row_off, t.col_off, t.src, t.rev, t.var_off, t.dsize,
        t.var_arc_off, t.var_arcs, direction == US,
    )
    alive = np.asarray(alive)
    domains = []
    for i, dom in enumerate(instance.domains):
        start = int(t.var_off[i])
        mask = alive[start : start + len(dom)]
        domains.append(tuple(v for v, keep in zip(dom.values, mask) if keep))
    return AcResult(
        CONSISTENT if status == 0 else EMPTY_DOMAIN,
        tuple(domains),
        int(ops),
        None if status == 0 else int(empty_var),
        direction,
        "acids",
    )


def extract_bound_solutions(instance: CspInstance, result: AcResult) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The assignments of first and last surviving values, both solutions of a DSCSP."""
    if result.direction != DS:
        raise NotApplicable("arc consistency is not known to be sufficient for up staircase instances")
    if not result.consistent:
        raise NotApplicable("the instance has no arc-consistent subdomain")
    first = tuple(dom[0] for dom in result.domains)
    last = tuple(dom[-1] for dom in result.domains)
    return first, last
