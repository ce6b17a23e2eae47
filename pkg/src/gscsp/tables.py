"""Flat array layout of an instance's arcs, shared by the Python and compiled engines."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CspInstance


@dataclass(frozen=True)
class ArcTables:
    """Both orientations of every constraint, flattened into int64 arrays.

    Arc ``a`` runs from ``src[a]`` (rows) to ``dst[a]`` (columns); ``rev[a]`` is
    its reverse. Row ``r`` of arc ``a`` lives at ``row_off[a] + r`` in ``lo`` and
    ``hi`` (-1 for an empty image); column ``v`` lives at ``col_off[a] + v`` in
    per-column arrays such as the MIN structure. ``var_arcs[var_arc_off[i]:
    var_arc_off[i + 1]]`` lists the arcs leaving variable ``i``; value ``r`` of
    variable ``i`` has global slot ``var_off[i] + r``.
    """

    n: int
    dsize: np.ndarray
    var_off: np.ndarray
    src: np.ndarray
    dst: np.ndarray
    rev: np.ndarray
    row_off: np.ndarray
    col_off: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    var_arc_off: np.ndarray
    var_arcs: np.ndarray

    @property
    def n_arcs(self) -> int:
        return len(self.src)

    @property
    def n_slots(self) -> int:
        return int(self.var_off[-1])

    @property
    def n_rows(self) -> int:
        return len(self.lo)


def _i64(values) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(values, dtype=np.int64))


def build_tables(instance: CspInstance) -> ArcTables:
    arcs = instance.arcs
    dsize = [len(d) for d in instance.domains]
    var_off = [0]
    for s in dsize:
        var_off.append(var_off[-1] + s)
    src, dst, rev, row_off, col_off = [], [], [], [], []
    lo: list[int] = []
    hi: list[int] = []
    col_total = 0
    for a, c in enumerate(arcs):
        src.append(c.row_var)
        dst.append(c.col_var)
        rev.append(a + 1 if a % 2 == 0 else a - 1)
        row_off.append(len(lo))
        col_off.append(col_total)
        col_total += len(c.col_domain)
        clo, chi = c.lo_hi()
        lo.extend(clo)
        hi.extend(chi)
    out_arcs: list[list[int]] = [[] for _ in range(instance.n)]
    for a, s in enumerate(src):
        out_arcs[s].append(a)
    var_arc_off = [0]
    var_arcs: list[int] = []
    for lst in out_arcs:
        var_arcs.extend(lst)
        var_arc_off.append(len(var_arcs))
    return ArcTables(
        n=instance.n,
        dsize=_i64(dsize),
        var_off=_i64(var_off),
        src=_i64(src),
        dst=_i64(dst),
        rev=_i64(rev),
        row_off=_i64(row_off),
        col_off=_i64(col_off + [col_total]),
        lo=_i64(lo),
        hi=_i64(hi),
        var_arc_off=_i64(var_arc_off),
        var_arcs=_i64(var_arcs),
    )
