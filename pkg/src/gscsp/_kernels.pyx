# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled ACiDS and DSCSP Solver loops over the flat arc tables.

Both kernels mirror the pure-Python engines step for step, including the
operation counts, so either backend can stand in for the other.
"""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef inline i64 _succ(i64[::1] nxt, cnp.int8_t[::1] alive, i64 base, i64 voff, i64 r, i64* ops) noexcept nogil:
    cdef i64 s = nxt[base + r]
    cdef i64 t, p
    if s == -1 or alive[voff + s]:
        return s
    t = s
    while t != -1 and not alive[voff + t]:
        t = nxt[base + t]
        ops[0] += 1
    # path compression
    p = s
    while p != t:
        s = nxt[base + p]
        nxt[base + p] = t
        p = s
    nxt[base + r] = t
    return t


cdef inline void _merge(i64[::1] min_lo, i64[::1] min_hi, i64 k, i64 lo, i64 hi, i64* ops) noexcept nogil:
    if min_lo[k] == -1:
        min_lo[k] = lo
        min_hi[k] = hi
    else:
        if lo < min_lo[k]:
            min_lo[k] = lo
        if hi > min_hi[k]:
            min_hi[k] = hi
    ops[0] += 1


def acids_run(
    i64[::1] lo, i64[::1] hi, i64[::1] row_off, i64[::1] col_off, i64[::1] src,
    i64[::1] rev, i64[::1] var_off, i64[::1] dsize, i64[::1] var_arc_off,
    i64[::1] var_arcs, bint up,
):
    """Returns ``(status, empty_var, alive, ops)``; status 0 = consistent, 1 = wipeout."""
    cdef Py_ssize_t n_arcs = src.shape[0]
    cdef Py_ssize_t n = dsize.shape[0]
    cdef Py_ssize_t n_rows = lo.shape[0]
    cdef Py_ssize_t n_cols = col_off[n_arcs] if n_arcs > 0 else 0
    cdef i64 n_slots = var_off[n]

    alive_arr = np.ones(max(n_slots, 1), dtype=np.int8)
    cdef cnp.int8_t[::1] alive = alive_arr
    nxt_arr = np.full(max(n_rows, 1), -1, dtype=np.int64)
    prv_arr = np.full(max(n_rows, 1), -1, dtype=np.int64)
    head_arr = np.full(max(n_arcs, 1), -1, dtype=np.int64)
    tail_arr = np.full(max(n_arcs, 1), -1, dtype=np.int64)
    min_lo_arr = np.full(max(n_cols, 1), -1, dtype=np.int64)
    min_hi_arr = np.full(max(n_cols, 1), -1, dtype=np.int64)
    count_arr = np.array(dsize, dtype=np.int64)
    # every removal enqueues at most one entry per arc leaving the variable
    qcap = 1
    cdef Py_ssize_t q
    for q in range(n):
        qcap += dsize[q] * (var_arc_off[q + 1] - var_arc_off[q])
    qa_arr = np.empty(qcap, dtype=np.int64)
    qv_arr = np.empty(qcap, dtype=np.int64)
    delta_arr = np.empty(max(int(np.max(dsize)) if n > 0 else 1, 1), dtype=np.int64)

    cdef i64[::1] nxt = nxt_arr
    cdef i64[::1] prv = prv_arr
    cdef i64[::1] head = head_arr
    cdef i64[::1] tail = tail_arr
    cdef i64[::1] min_lo = min_lo_arr
    cdef i64[::1] min_hi = min_hi_arr
    cdef i64[::1] count = count_arr
    cdef i64[::1] qa = qa_arr
    cdef i64[::1] qv = qv_arr
    cdef i64[::1] delta = delta_arr

    cdef i64 ops = 0
    cdef Py_ssize_t a, r, prev, base, cbase, qhead = 0, qtail = 0
    cdef i64 i, m, scan_j, scan, nd, voff, lo_m, hi_m, vj, vj2, k, x, e, ao, ai, p, s
    cdef i64 status = 0, empty_var = -1

    with nogil:
        # active views
        for a in range(n_arcs):
            base = row_off[a]
            prev = -1
            for r in range(dsize[src[a]]):
                if lo[base + r] == -1:
                    continue
                if prev == -1:
                    head[a] = r
                else:
                    nxt[base + prev] = r
                prv[base + r] = prev
                prev = r
            tail[a] = prev

        # Initialize
        for a in range(n_arcs):
            base = row_off[a]
            cbase = col_off[a]
            scan_j = 0
            if not up:
                r = head[a]
            else:
                r = tail[a]
            while r != -1:
                m = lo[base + r]
                if m > scan_j:
                    scan_j = m
                    ops += 1
                _merge(min_lo, min_hi, cbase + m, r, r, &ops)
                if not up:
                    r = nxt[base + r]
                else:
                    r = prv[base + r]

        a = 0
        while True:
            # produce delta for the next step: ArcCons over every arc first,
            # then LocalArcCons for each dequeued entry
            if a < n_arcs:
                i = src[a]
                base = row_off[a]
                voff = var_off[i]
                nd = 0
                ops += dsize[i]
                for r in range(dsize[i]):
                    if alive[voff + r] and lo[base + r] == -1:
                        delta[nd] = r
                        nd += 1
                a += 1
            elif qhead < qtail:
                ai = qa[qhead]
                vj = qv[qhead]
                qhead += 1
                ops += 1
                i = src[ai]
                nd = 0
                k = col_off[ai] + vj
                lo_m = min_lo[k]
                if lo_m != -1:
                    hi_m = min_hi[k]
                    min_lo[k] = -1
                    min_hi[k] = -1
                    x = rev[ai]
                    vj2 = _succ(nxt, alive, row_off[x], var_off[src[x]], vj, &ops)
                    base = row_off[ai]
                    voff = var_off[i]
                    if not up:
                        if alive[voff + lo_m]:
                            scan = lo_m
                        else:
                            scan = _succ(nxt, alive, base, voff, lo_m, &ops)
                        while scan != -1 and scan <= hi_m and (vj2 == -1 or hi[base + scan] < vj2):
                            delta[nd] = scan
                            nd += 1
                            scan = nxt[base + scan]
                            ops += 1
                        if scan != -1 and scan <= hi_m:
                            _merge(min_lo, min_hi, col_off[ai] + vj2, scan, hi_m, &ops)
                    else:
                        if alive[voff + hi_m]:
                            scan = hi_m
                        else:
                            scan = _succ(prv, alive, base, voff, hi_m, &ops)
                        while scan != -1 and scan >= lo_m and (vj2 == -1 or hi[base + scan] < vj2):
                            delta[nd] = scan
                            nd += 1
                            scan = prv[base + scan]
                            ops += 1
                        if scan != -1 and scan >= lo_m:
                            _merge(min_lo, min_hi, col_off[ai] + vj2, lo_m, scan, &ops)
            else:
                break

            if nd == 0:
                continue
            # Enqueue
            for e in range(nd):
                for x in range(var_arc_off[i], var_arc_off[i + 1]):
                    ao = var_arcs[x]
                    qa[qtail] = rev[ao]
                    qv[qtail] = delta[e]
                    qtail += 1
                    ops += 1
            # Remove
            for e in range(nd):
                r = delta[e]
                for x in range(var_arc_off[i], var_arc_off[i + 1]):
                    ao = var_arcs[x]
                    base = row_off[ao]
                    if lo[base + r] == -1:
                        continue
                    p = prv[base + r]
                    s = nxt[base + r]
                    if p == -1:
                        head[ao] = s
                    else:
                        nxt[base + p] = s
                    if s == -1:
                        tail[ao] = p
                    else:
                        prv[base + s] = p
                    ops += 1
                alive[var_off[i] + r] = 0
                count[i] -= 1
                ops += 1
            if count[i] == 0:
                status = 1
                empty_var = i
                break

    return status, empty_var, alive_arr[:n_slots].astype(bool), ops


def dscsp_run(
    i64[::1] lo, i64[::1] row_off, i64[::1] dst, i64[::1] rev, i64[::1] dsize,
    i64[::1] var_arc_off, i64[::1] var_arcs,
):
    """Returns ``(found, scan, ops)`` for the DSCSP Solver."""
    cdef Py_ssize_t n = dsize.shape[0]
    scan_arr = np.zeros(n, dtype=np.int64)
    flag_arr = np.zeros(n, dtype=np.int64)
    queue_arr = np.empty(n + 1, dtype=np.int64)
    cdef i64[::1] scan = scan_arr
    cdef i64[::1] flag = flag_arr
    cdef i64[::1] queue = queue_arr
    # circular buffer: a variable is queued at most once at a time
    cdef Py_ssize_t qcap = n + 1, qhead = 0, qtail = 0
    cdef i64 ops = n, total = 0, j, k, a, ra, bj, bk, min_j, min_k, x, start
    cdef bint restart, moved, found = False, dead = False
    cdef Py_ssize_t v

    for v in range(n):
        queue[qtail] = v
        qtail += 1

    with nogil:
        while qhead != qtail:
            j = queue[qhead]
            qhead = (qhead + 1) % qcap
            ops += 1
            restart = True
            while restart:
                restart = False
                for x in range(var_arc_off[j], var_arc_off[j + 1]):
                    a = var_arcs[x]
                    k = dst[a]
                    ra = rev[a]
                    bj = row_off[a]
                    bk = row_off[ra]
                    ops += 1
                    start = scan[j]
                    while scan[j] < dsize[j] and lo[bj + scan[j]] == -1:
                        scan[j] += 1
                        ops += 1
                    if scan[j] == dsize[j]:
                        dead = True
                        break
                    if scan[j] != start and x > var_arc_off[j]:
                        restart = True
                        break
                    moved = False
                    while scan[k] < dsize[k] and lo[bk + scan[k]] == -1:
                        scan[k] += 1
                        ops += 1
                        moved = True
                    if scan[k] == dsize[k]:
                        dead = True
                        break
                    if moved and flag[k]:
                        flag[k] = 0
                        total -= 1
                        queue[qtail] = k
                        qtail = (qtail + 1) % qcap
                        ops += 1
                    min_j = lo[bk + scan[k]]
                    if scan[j] < min_j:
                        scan[j] = min_j
                        ops += 1
                        restart = True
                        break
                    min_k = lo[bj + scan[j]]
                    if scan[k] < min_k:
                        scan[k] = min_k
                        ops += 1
                        if flag[k]:
                            flag[k] = 0
                            total -= 1
                            queue[qtail] = k
                            qtail = (qtail + 1) % qcap
                            ops += 1
                if dead:
                    break
            if dead:
                break
            flag[j] = 1
            total += 1
            if total == n:
                found = True
                break

    return found, scan_arr, ops
