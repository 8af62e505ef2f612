"""Pure Python seed-propagation kernel for crossing-table sweeps.

A crossing table assigns to every pair (k, h), with k in a group K of
order nk and h in a group H of order nh, a value pair (p, q) meaning
k*h = p*q with p in H and q in K.  Cells are encoded p*nk + q and a
table position is k*nh + h.  A seed fixes the four cells at (z, x),
(z, y), (w, x), (w, y) for the designated generator indices; identity
cells (1, h) = (h, 1) and (k, 1) = (1, k) are always present.  Two
derivation rules close the table:

  row:     (k, h1) = (p, q) and (q, h2) = (u, v)  =>  (k, h1*h2) = (p*u, v)
  column:  (k2, h) = (u, v) and (k1, u) = (p, q)  =>  (k1*k2, h) = (p, q*v)

Each rule instance fires when the later of its two cells is popped from
the worklist; newly set cells are checked against row and column value
injectivity, which holds in any genuine factorization by cancellation.
A contradiction or injectivity hit is a conflict; an exhausted worklist
with unknown cells left is a stall; a complete table then faces the
group axioms, checked as a Latin condition on the crossing components
plus an associativity test on the four generators (which generate, so
the test is exact).

This module is the fallback twin of the compiled kernel in _sweep.pyx;
the two expose identical functions and must produce identical results.
The code is written for speed under CPython: flat lists, bound locals,
manually inlined cell updates.
"""

from __future__ import annotations

COMPILED = False

_OK = 0
_CONFLICT = 1
_STALLED = 2

_FOREVER = 1 << 62  # stamp for identity cells, valid in every epoch

STATUS_NAMES = {_OK: "ok", _CONFLICT: "conflict", _STALLED: "stalled"}


class _State:
    """Reusable per-sweep buffers; one instance serves many seeds."""

    __slots__ = ("nh", "nk", "n", "hmul", "kmul", "val", "rowstamp",
                 "colstamp", "byq", "byp", "touched", "pending", "epoch",
                 "needed")

    def __init__(self, nh, nk, hmul, kmul):
        n = nh * nk
        self.nh, self.nk, self.n = nh, nk, n
        self.hmul = list(hmul)
        self.kmul = list(kmul)
        self.val = [-1] * n
        self.rowstamp = [0] * (nk * n)
        self.colstamp = [0] * (nh * n)
        self.byq = [[] for _ in range(nk)]
        self.byp = [[] for _ in range(nh)]
        self.touched = []
        self.pending = []
        self.epoch = 0
        # non-identity cells to fill for a complete table
        self.needed = n - (nh + nk - 1)
        # identity cells never change: (0, h) = (h, 0) and (k, 0) = (0, k)
        for h in range(nh):
            self.val[h] = h * nk
            self.rowstamp[h * nk] = _FOREVER          # row 0, value h*nk
            self.colstamp[h * n + h * nk] = _FOREVER  # column h
        for k in range(1, nk):
            self.val[k * nh] = k
            self.rowstamp[k * n + k] = _FOREVER
            self.colstamp[k] = _FOREVER               # column 0, value k
        self._rebuild_static_index()

    def _rebuild_static_index(self):
        self.byq[0][:] = list(range(self.nh))
        for k in range(1, self.nk):
            self.byq[k][:] = [k * self.nh]
        self.byp[0][:] = [0] + [k * self.nh for k in range(1, self.nk)]
        for h in range(1, self.nh):
            self.byp[h][:] = [h]

    def reset(self):
        for pos in self.touched:
            self.val[pos] = -1
        del self.touched[:]
        del self.pending[:]
        self.epoch += 1
        nh, nk = self.nh, self.nk
        del self.byq[0][nh:]
        for k in range(1, nk):
            del self.byq[k][1:]
        del self.byp[0][nk:]
        for h in range(1, nh):
            del self.byp[h][1:]


def _make_state(nh, nk, hmul, kmul):
    if nh < 2 or nk < 2:
        raise ValueError("factor orders must be at least 2")
    if len(hmul) != nh * nh or len(kmul) != nk * nk:
        raise ValueError("multiplication tables do not match the stated orders")
    return _State(nh, nk, hmul, kmul)


def _run(st, cells, lifo=False):
    """Propagate from the given (position, value) seed cells.

    Returns _OK, _CONFLICT or _STALLED.  The table is left in st.val
    for inspection on _OK.  The worklist order (queue or stack) cannot
    change the verdict, only the discovery order; both are exposed so
    the tests can confirm that.
    """
    nh, nk, n = st.nh, st.nk, st.n
    val, hmul, kmul = st.val, st.hmul, st.kmul
    rowstamp, colstamp = st.rowstamp, st.colstamp
    byq, byp = st.byq, st.byp
    touched, pending = st.touched, st.pending
    epoch = st.epoch
    nset = 0

    for cell, value in cells:
        cur = val[cell]
        if cur >= 0:
            if cur != value:
                return _CONFLICT
            continue
        ri = (cell // nh) * n + value
        ci = (cell % nh) * n + value
        if rowstamp[ri] >= epoch or colstamp[ci] >= epoch:
            return _CONFLICT
        val[cell] = value
        rowstamp[ri] = epoch
        colstamp[ci] = epoch
        byq[value % nk].append(cell)
        byp[value // nk].append(cell)
        touched.append(cell)
        pending.append(cell)
        nset += 1

    head = 0
    while True:
        if lifo:
            if not pending:
                break
            pos = pending.pop()  # cells stay recorded in touched
        else:
            if head >= len(pending):
                break
            pos = pending[head]
            head += 1
        k, h1 = divmod(pos, nh)
        v = val[pos]
        p, q = divmod(v, nk)
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
            value = hmul[pnh + v2 // nk] * nk + v2 % nk
            cur = val[cell]
            if cur >= 0:
                if cur != value:
                    return _CONFLICT
                continue
            ri = (cell // nh) * n + value
            ci = (cell % nh) * n + value
            if rowstamp[ri] >= epoch or colstamp[ci] >= epoch:
                return _CONFLICT
            val[cell] = value
            rowstamp[ri] = epoch
            colstamp[ci] = epoch
            byq[value % nk].append(cell)
            byp[value // nk].append(cell)
            touched.append(cell)
            pending.append(cell)
            nset += 1

        # as B in the row rule: partners have value K-part equal to k
        lst = byq[k]
        for idx in range(len(lst)):
            pos0 = lst[idx]
            v0 = val[pos0]
            cell = (pos0 // nh) * nh + hmul[(pos0 % nh) * nh + h1]
            value = hmul[(v0 // nk) * nh + p] * nk + q
            cur = val[cell]
            if cur >= 0:
                if cur != value:
                    return _CONFLICT
                continue
            ri = (cell // nh) * n + value
            ci = (cell % nh) * n + value
            if rowstamp[ri] >= epoch or colstamp[ci] >= epoch:
                return _CONFLICT
            val[cell] = value
            rowstamp[ri] = epoch
            colstamp[ci] = epoch
            byq[value % nk].append(cell)
            byp[value // nk].append(cell)
            touched.append(cell)
            pending.append(cell)
            nset += 1

        # as B in the column rule: partner cells live in table column p
        for k1 in range(nk):
            v1 = val[k1 * nh + p]
            if v1 < 0:
                continue
            cell = kmul[k1 * nk + k] * nh + h1
            value = (v1 // nk) * nk + kmul[(v1 % nk) * nk + q]
            cur = val[cell]
            if cur >= 0:
                if cur != value:
                    return _CONFLICT
                continue
            ri = (cell // nh) * n + value
            ci = (cell % nh) * n + value
            if rowstamp[ri] >= epoch or colstamp[ci] >= epoch:
                return _CONFLICT
            val[cell] = value
            rowstamp[ri] = epoch
            colstamp[ci] = epoch
            byq[value % nk].append(cell)
            byp[value // nk].append(cell)
            touched.append(cell)
            pending.append(cell)
            nset += 1

        # as A in the column rule: partners have value H-part equal to h1
        lst = byp[h1]
        knk = k * nk
        qnk = q * nk
        for idx in range(len(lst)):
            pos2 = lst[idx]
            v2 = val[pos2]
            cell = kmul[knk + pos2 // nh] * nh + pos2 % nh
            value = v - q + kmul[qnk + v2 % nk]  # p*nk plus the K product
            cur = val[cell]
            if cur >= 0:
                if cur != value:
                    return _CONFLICT
                continue
            ri = (cell // nh) * n + value
            ci = (cell % nh) * n + value
            if rowstamp[ri] >= epoch or colstamp[ci] >= epoch:
                return _CONFLICT
            val[cell] = value
            rowstamp[ri] = epoch
            colstamp[ci] = epoch
            byq[value % nk].append(cell)
            byp[value // nk].append(cell)
            touched.append(cell)
            pending.append(cell)
            nset += 1

    return _OK if nset == st.needed else _STALLED


def _axioms_ok(nh, nk, hmul, kmul, val, hx, hy, kz, kw):
    """Group axioms for the magma induced by a complete crossing table.

    Latin property first: within each table row the H-components must be
    a permutation, within each column the K-components must be one;
    otherwise some magma row or column repeats.  Then associativity on
    the four generators, which extends to the whole magma because they
    generate it and the property is closed under products.
    """
    n = nh * nk
    seen = [0] * (nh if nh >= nk else nk)
    for k in range(nk):
        row = k * nh
        for h in range(nh):
            pp = val[row + h] // nk
            if seen[pp] == row + 1:
                return False
            seen[pp] = row + 1
    mark = 0
    for h in range(nh):
        mark -= 1
        for k in range(nk):
            qq = val[k * nh + h] % nk
            if seen[qq] == mark:
                return False
            seen[qq] = mark

    def mul(g1, g2):
        v = val[(g1 % nk) * nh + g2 // nk]
        return hmul[(g1 // nk) * nh + v // nk] * nk + kmul[(v % nk) * nk + g2 % nk]

    for c in (hx * nk, hy * nk, kz, kw):
        cb = [mul(c, b) for b in range(n)]
        for a in range(n):
            ac = mul(a, c)
            for b in range(n):
                if mul(ac, b) != mul(a, cb[b]):
                    return False
    return True


def propagate_seed(nh, nk, hmul, kmul, hx, hy, kz, kw, dzx, dzy, dwx, dwy,
                   lifo=False):
    """Close the table from one explicit seed.

    Returns (status, table) with status in "ok", "conflict", "stalled";
    table is a flat list of nh*nk encoded cells on "ok", else None.
    """
    st = _make_state(nh, nk, hmul, kmul)
    st.epoch = 1
    code = _run(st, ((kz * nh + hx, dzx), (kz * nh + hy, dzy),
                     (kw * nh + hx, dwx), (kw * nh + hy, dwy)), lifo)
    if code == _OK:
        return "ok", list(st.val)
    return STATUS_NAMES[code], None


def magma_passes_axioms(nh, nk, hmul, kmul, table, hx, hy, kz, kw):
    """Axiom check for a complete table, as used by the sweep."""
    return _axioms_ok(nh, nk, list(hmul), list(kmul), list(table),
                      hx, hy, kz, kw)


def sweep_range(nh, nk, hmul, kmul, hx, hy, kz, kw, start, stop, lifo=False):
    """Propagate every seed index in [start, stop).

    A seed index packs the four generator cells as base nh*nk digits in
    the order (z,x), (z,y), (w,x), (w,y), most significant first.
    Returns (conflict, stalled, axiom, accepted) where the first three
    count rejected seeds and accepted lists surviving seed indices.
    """
    st = _make_state(nh, nk, hmul, kmul)
    n = st.n
    czx = kz * nh + hx
    czy = kz * nh + hy
    cwx = kw * nh + hx
    cwy = kw * nh + hy
    n_conflict = n_stalled = n_axiom = 0
    accepted = []
    for seed in range(start, stop):
        rest, dwy = divmod(seed, n)
        rest, dwx = divmod(rest, n)
        dzx, dzy = divmod(rest, n)
        if dzx >= n:
            raise ValueError(f"seed index {seed} out of range")
        st.reset()
        code = _run(st, ((czx, dzx), (czy, dzy), (cwx, dwx), (cwy, dwy)), lifo)
        if code == _CONFLICT:
            n_conflict += 1
        elif code == _STALLED:
            n_stalled += 1
        elif _axioms_ok(nh, nk, st.hmul, st.kmul, st.val, hx, hy, kz, kw):
            accepted.append(seed)
        else:
            n_axiom += 1
    return n_conflict, n_stalled, n_axiom, accepted
