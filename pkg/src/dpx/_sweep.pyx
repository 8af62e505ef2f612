# cython: language_level=3
"""Compiled seed-propagation kernel.

Twin of _sweep_py with identical entry points and results; see that
module for the derivation rules and encoding.  This one exists because
full sweeps visit every four-digit seed over the cell alphabet and the
per-seed work is branchy constraint propagation, which CPython runs two
orders of magnitude slower than C.
"""

import numpy as np

cimport cython
from libc.stdlib cimport free, malloc

COMPILED = True

cdef int OK = 0
cdef int CONFLICT = 1
cdef int STALLED = 2

cdef long long FOREVER = <long long>1 << 62

STATUS_NAMES = {0: "ok", 1: "conflict", 2: "stalled"}


cdef struct State:
    int nh
    int nk
    int n
    int needed
    long long epoch
    int *hmul
    int *kmul
    int *val
    long long *rowstamp
    long long *colstamp
    int *byq_data
    int *byq_len
    int *byp_data
    int *byp_len
    int *pending
    int *touched
    int *scratch


cdef int _state_init(State *st, int nh, int nk, int[::1] hmul, int[::1] kmul) except -1:
    cdef int n = nh * nk
    cdef int i, h, k
    st.nh, st.nk, st.n = nh, nk, n
    st.needed = n - (nh + nk - 1)
    st.epoch = 0
    st.hmul = <int *>malloc(nh * nh * sizeof(int))
    st.kmul = <int *>malloc(nk * nk * sizeof(int))
    st.val = <int *>malloc(n * sizeof(int))
    st.rowstamp = <long long *>malloc(<size_t>nk * n * sizeof(long long))
    st.colstamp = <long long *>malloc(<size_t>nh * n * sizeof(long long))
    st.byq_data = <int *>malloc(<size_t>nk * n * sizeof(int))
    st.byq_len = <int *>malloc(nk * sizeof(int))
    st.byp_data = <int *>malloc(<size_t>nh * n * sizeof(int))
    st.byp_len = <int *>malloc(nh * sizeof(int))
    st.pending = <int *>malloc(n * sizeof(int))
    st.touched = <int *>malloc(n * sizeof(int))
    st.scratch = <int *>malloc((n + (nh if nh > nk else nk)) * sizeof(int))
    if (st.hmul == NULL or st.kmul == NULL or st.val == NULL
            or st.rowstamp == NULL or st.colstamp == NULL
            or st.byq_data == NULL or st.byq_len == NULL
            or st.byp_data == NULL or st.byp_len == NULL
            or st.pending == NULL or st.touched == NULL
            or st.scratch == NULL):
        _state_free(st)
        raise MemoryError()
    for i in range(nh * nh):
        st.hmul[i] = hmul[i]
    for i in range(nk * nk):
        st.kmul[i] = kmul[i]
    for i in range(n):
        st.val[i] = -1
    for i in range(nk * n):
        st.rowstamp[i] = 0
    for i in range(nh * n):
        st.colstamp[i] = 0
    # permanent identity cells: (0, h) = (h, 0) and (k, 0) = (0, k)
    for h in range(nh):
        st.val[h] = h * nk
        st.rowstamp[h * nk] = FOREVER
        st.colstamp[<size_t>h * n + h * nk] = FOREVER
    for k in range(1, nk):
        st.val[k * nh] = k
        st.rowstamp[<size_t>k * n + k] = FOREVER
        st.colstamp[k] = FOREVER
    return 0


cdef void _state_free(State *st) noexcept:
    free(st.hmul); free(st.kmul); free(st.val)
    free(st.rowstamp); free(st.colstamp)
    free(st.byq_data); free(st.byq_len)
    free(st.byp_data); free(st.byp_len)
    free(st.pending); free(st.touched); free(st.scratch)


@cython.cdivision(True)
cdef void _state_reset(State *st, int ntouched) noexcept:
    cdef int i, k, h
    cdef int nh = st.nh, nk = st.nk
    for i in range(ntouched):
        st.val[st.touched[i]] = -1
    st.epoch += 1
    # static index entries mirror the identity cells
    st.byq_len[0] = nh
    for h in range(nh):
        st.byq_data[h] = h
    for k in range(1, nk):
        st.byq_len[k] = 1
        st.byq_data[k * st.n] = k * nh
    st.byp_len[0] = nk
    st.byp_data[0] = 0
    for k in range(1, nk):
        st.byp_data[k] = k * nh
    for h in range(1, nh):
        st.byp_len[h] = 1
        st.byp_data[h * st.n] = h


@cython.boundscheck(False)
@cython.wraparound(False)
@cython.cdivision(True)
cdef int _run(State *st, int *cells, int *values, int ncells, bint lifo,
              int *ntouched_out) noexcept:
    cdef int nh = st.nh, nk = st.nk, n = st.n
    cdef int *val = st.val
    cdef int *hmul = st.hmul
    cdef int *kmul = st.kmul
    cdef long long *rowstamp = st.rowstamp
    cdef long long *colstamp = st.colstamp
    cdef long long epoch = st.epoch
    cdef int nset = 0, ntouched = 0, npend = 0, head = 0
    cdef int i, cell, value, cur, pos, k, h1, v, p, q
    cdef int krow, h1nh, pnh, qrow, h2, v2, pos0, v0, k1, v1, pos2, idx
    cdef int knk, qnk
    cdef size_t ri, ci

    for i in range(ncells):
        cell = cells[i]
        value = values[i]
        cur = val[cell]
        if cur >= 0:
            if cur != value:
                ntouched_out[0] = ntouched
                return CONFLICT
            continue
        ri = <size_t>(cell / nh) * n + value
        ci = <size_t>(cell % nh) * n + value
        if rowstamp[ri] >= epoch or colstamp[ci] >= epoch:
            ntouched_out[0] = ntouched
            return CONFLICT
        val[cell] = value
        rowstamp[ri] = epoch
        colstamp[ci] = epoch
        st.byq_data[<size_t>(value % nk) * n + st.byq_len[value % nk]] = cell
        st.byq_len[value % nk] += 1
        st.byp_data[<size_t>(value / nk) * n + st.byp_len[value / nk]] = cell
        st.byp_len[value / nk] += 1
        st.touched[ntouched] = cell; ntouched += 1
        st.pending[npend] = cell; npend += 1
        nset += 1

    while True:
        if lifo:
            if npend == 0:
                break
            npend -= 1
            pos = st.pending[npend]
        else:
            if head >= npend:
                break
            pos = st.pending[head]
            head += 1
        k = pos / nh
        h1 = pos % nh
        v = val[pos]
        p = v / nk
        q = v % nk
        krow = k * nh
        h1nh = h1 * nh
        pnh = p * nh

        # as A in the row rule: partner cells live in table row q
        qrow = q * nh
        for h2 in range(nh):
            v2 = val[qrow + h2]
            if v2 < 0:
                continue
            cell = krow + hmul[h1nh + h2]
            value = hmul[pnh + v2 / nk] * nk + v2 % nk
            cur = val[cell]
            if cur >= 0:
                if cur != value:
                    ntouched_out[0] = ntouched
                    return CONFLICT
                continue
            ri = <size_t>(cell / nh) * n + value
            ci = <size_t>(cell % nh) * n + value
            if rowstamp[ri] >= epoch or colstamp[ci] >= epoch:
                ntouched_out[0] = ntouched
                return CONFLICT
            val[cell] = value
            rowstamp[ri] = epoch
            colstamp[ci] = epoch
            st.byq_data[<size_t>(value % nk) * n + st.byq_len[value % nk]] = cell
            st.byq_len[value % nk] += 1
            st.byp_data[<size_t>(value / nk) * n + st.byp_len[value / nk]] = cell
            st.byp_len[value / nk] += 1
            st.touched[ntouched] = cell; ntouched += 1
            st.pending[npend] = cell; npend += 1
            nset += 1

        # as B in the row rule: partners have value K-part equal to k
        for idx in range(st.byq_len[k]):
            pos0 = st.byq_data[<size_t>k * n + idx]
            v0 = val[pos0]
            cell = (pos0 / nh) * nh + hmul[(pos0 % nh) * nh + h1]
            value = hmul[(v0 / nk) * nh + p] * nk + q
            cur = val[cell]
            if cur >= 0:
                if cur != value:
                    ntouched_out[0] = ntouched
                    return CONFLICT
                continue
            ri = <size_t>(cell / nh) * n + value
            ci = <size_t>(cell % nh) * n + value
            if rowstamp[ri] >= epoch or colstamp[ci] >= epoch:
                ntouched_out[0] = ntouched
                return CONFLICT
            val[cell] = value
            rowstamp[ri] = epoch
            colstamp[ci] = epoch
            st.byq_data[<size_t>(value % nk) * n + st.byq_len[value % nk]] = cell
            st.byq_len[value % nk] += 1
            st.byp_data[<size_t>(value / nk) * n + st.byp_len[value / nk]] = cell
            st.byp_len[value / nk] += 1
            st.touched[ntouched] = cell; ntouched += 1
            st.pending[npend] = cell; npend += 1
            nset += 1

        # as B in the column rule: partner cells live in table column p
        for k1 in range(nk):
            v1 = val[k1 * nh + p]
            if v1 < 0:
                continue
            cell = kmul[k1 * nk + k] * nh + h1
            value = (v1 / nk) * nk + kmul[(v1 % nk) * nk + q]
            cur = val[cell]
            if cur >= 0:
                if cur != value:
                    ntouched_out[0] = ntouched
                    return CONFLICT
                continue
            ri = <size_t>(cell / nh) * n + value
            ci = <size_t>(cell % nh) * n + value
            if rowstamp[ri] >= epoch or colstamp[ci] >= epoch:
                ntouched_out[0] = ntouched
                return CONFLICT
            val[cell] = value
            rowstamp[ri] = epoch
            colstamp[ci] = epoch
            st.byq_data[<size_t>(value % nk) * n + st.byq_len[value % nk]] = cell
            st.byq_len[value % nk] += 1
            st.byp_data[<size_t>(value / nk) * n + st.byp_len[value / nk]] = cell
            st.byp_len[value / nk] += 1
            st.touched[ntouched] = cell; ntouched += 1
            st.pending[npend] = cell; npend += 1
            nset += 1

        # as A in the column rule: partners have value H-part equal to h1
        knk = k * nk
        qnk = q * nk
        for idx in range(st.byp_len[h1]):
            pos2 = st.byp_data[<size_t>h1 * n + idx]
            v2 = val[pos2]
            cell = kmul[knk + pos2 / nh] * nh + pos2 % nh
            value = v - q + kmul[qnk + v2 % nk]
            cur = val[cell]
            if cur >= 0:
                if cur != value:
                    ntouched_out[0] = ntouched
                    return CONFLICT
                continue
            ri = <size_t>(cell / nh) * n + value
            ci = <size_t>(cell % nh) * n + value
            if rowstamp[ri] >= epoch or colstamp[ci] >= epoch:
                ntouched_out[0] = ntouched
                return CONFLICT
            val[cell] = value
            rowstamp[ri] = epoch
            colstamp[ci] = epoch
            st.byq_data[<size_t>(value % nk) * n + st.byq_len[value % nk]] = cell
            st.byq_len[value % nk] += 1
            st.byp_data[<size_t>(value / nk) * n + st.byp_len[value / nk]] = cell
            st.byp_len[value / nk] += 1
            st.touched[ntouched] = cell; ntouched += 1
            st.pending[npend] = cell; npend += 1
            nset += 1

    ntouched_out[0] = ntouched
    return OK if nset == st.needed else STALLED


@cython.boundscheck(False)
@cython.wraparound(False)
@cython.cdivision(True)
cdef bint _axioms_ok(State *st, int hx, int hy, int kz, int kw) noexcept:
    cdef int nh = st.nh, nk = st.nk, n = st.n
    cdef int *val = st.val
    cdef int *hmul = st.hmul
    cdef int *kmul = st.kmul
    cdef int *cb = st.scratch
    cdef int *seen = st.scratch + n
    cdef int i, k, h, row, mark, a, b, ac, v, gi, c
    # Latin: H-components permute within each row, K-components within
    # each column; otherwise a magma row or column repeats an element.
    for i in range(nh if nh > nk else nk):
        seen[i] = 0
    for k in range(nk):
        row = k * nh
        for h in range(nh):
            v = val[row + h] / nk
            if seen[v] == row + 1:
                return False
            seen[v] = row + 1
    mark = 0
    for h in range(nh):
        mark -= 1
        for k in range(nk):
            v = val[k * nh + h] % nk
            if seen[v] == mark:
                return False
            seen[v] = mark
    # associativity on the four generators is associativity everywhere
    for gi in range(4):
        if gi == 0:
            c = hx * nk
        elif gi == 1:
            c = hy * nk
        elif gi == 2:
            c = kz
        else:
            c = kw
        for b in range(n):
            cb[b] = _mul(st, c, b)
        for a in range(n):
            ac = _mul(st, a, c)
            for b in range(n):
                if _mul(st, ac, b) != _mul(st, a, cb[b]):
                    return False
    return True


@cython.cdivision(True)
cdef inline int _mul(State *st, int g1, int g2) noexcept:
    cdef int v = st.val[(g1 % st.nk) * st.nh + g2 / st.nk]
    return (st.hmul[(g1 / st.nk) * st.nh + v / st.nk] * st.nk
            + st.kmul[(v % st.nk) * st.nk + g2 % st.nk])


def _as_table(obj, int size, str name):
    arr = np.ascontiguousarray(obj, dtype=np.int32)
    if arr.ndim != 1 or arr.shape[0] != size:
        raise ValueError(f"{name} must be a flat table of {size} entries")
    return arr


def propagate_seed(int nh, int nk, hmul, kmul, int hx, int hy, int kz, int kw,
                   int dzx, int dzy, int dwx, int dwy, bint lifo=False):
    """Close the table from one explicit seed; see the pure twin."""
    if nh < 2 or nk < 2:
        raise ValueError("factor orders must be at least 2")
    cdef int[::1] hv = _as_table(hmul, nh * nh, "hmul")
    cdef int[::1] kv = _as_table(kmul, nk * nk, "kmul")
    cdef State st
    cdef int cells[4]
    cdef int values[4]
    cdef int ntouched = 0
    _state_init(&st, nh, nk, hv, kv)
    try:
        _state_reset(&st, 0)
        cells[0] = kz * nh + hx; values[0] = dzx
        cells[1] = kz * nh + hy; values[1] = dzy
        cells[2] = kw * nh + hx; values[2] = dwx
        cells[3] = kw * nh + hy; values[3] = dwy
        code = _run(&st, cells, values, 4, lifo, &ntouched)
        if code == OK:
            return "ok", [st.val[i] for i in range(st.n)]
        return STATUS_NAMES[code], None
    finally:
        _state_free(&st)


def magma_passes_axioms(int nh, int nk, hmul, kmul, table, int hx, int hy,
                        int kz, int kw):
    """Axiom check for a complete table, as used by the sweep."""
    cdef int[::1] hv = _as_table(hmul, nh * nh, "hmul")
    cdef int[::1] kv = _as_table(kmul, nk * nk, "kmul")
    cdef int[::1] tv = _as_table(table, nh * nk, "table")
    cdef State st
    cdef int i
    _state_init(&st, nh, nk, hv, kv)
    try:
        for i in range(st.n):
            st.val[i] = tv[i]
        return bool(_axioms_ok(&st, hx, hy, kz, kw))
    finally:
        _state_free(&st)


def sweep_range(int nh, int nk, hmul, kmul, int hx, int hy, int kz, int kw,
                long long start, long long stop, bint lifo=False):
    """Propagate every seed index in [start, stop); see the pure twin."""
    if nh < 2 or nk < 2:
        raise ValueError("factor orders must be at least 2")
    cdef int[::1] hv = _as_table(hmul, nh * nh, "hmul")
    cdef int[::1] kv = _as_table(kmul, nk * nk, "kmul")
    cdef State st
    cdef int cells[4]
    cdef int values[4]
    cdef long long n_conflict = 0, n_stalled = 0, n_axiom = 0
    cdef long long seed, rest
    cdef int n, code, ntouched = 0
    accepted = []
    _state_init(&st, nh, nk, hv, kv)
    n = st.n
    try:
        cells[0] = kz * nh + hx
        cells[1] = kz * nh + hy
        cells[2] = kw * nh + hx
        cells[3] = kw * nh + hy
        if stop > <long long>n * n * n * n:
            raise ValueError(f"seed index {stop - 1} out of range")
        for seed in range(start, stop):
            values[3] = <int>(seed % n); rest = seed / n
            values[2] = <int>(rest % n); rest = rest / n
            values[1] = <int>(rest % n)
            values[0] = <int>(rest / n)
            _state_reset(&st, ntouched)
            code = _run(&st, cells, values, 4, lifo, &ntouched)
            if code == CONFLICT:
                n_conflict += 1
            elif code == STALLED:
                n_stalled += 1
            elif _axioms_ok(&st, hx, hy, kz, kw):
                accepted.append(seed)
            else:
                n_axiom += 1
        return n_conflict, n_stalled, n_axiom, accepted
    finally:
        _state_free(&st)
