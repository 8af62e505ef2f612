"""Canonical dihedral groups in two independent constructions.

``dihedral_group`` lays the group out algebraically on normal forms.
``dihedral_permutation_group`` builds the same group from actual vertex
permutations and is kept deliberately separate so the two constructions
can cross-check each other.
"""

from __future__ import annotations

import numpy as np

from .core import build_from_table
from .errors import InvalidInput


def dihedral_group(n, names=("r", "f")):
    """Dihedral group of order 2n on normal forms rot^i * ref^e.

    Element index is e*n + i, so the rotations occupy indices 0..n-1,
    index 0 is the identity, index 1 is the rotation generator and index
    n is the reflection.
    """
    if n < 2:
        raise InvalidInput(f"rotation order must be at least 2, got {n}")
    i = np.arange(2 * n) % n
    e = np.arange(2 * n) // n
    # (rot^i1 ref^e1)(rot^i2 ref^e2) = rot^(i1 + (-1)^e1 i2) ref^(e1+e2)
    sign = 1 - 2 * e[:, None]
    rot = (i[:, None] + sign * i[None, :]) % n
    ref = (e[:, None] + e[None, :]) % 2
    table = ref * n + rot
    rname, fname = names
    labels = []
    for k in range(2 * n):
        ik, ek = k % n, k // n
        part = []
        if ik:
            part.append(rname if ik == 1 else f"{rname}^{ik}")
        if ek:
            part.append(fname)
        labels.append("*".join(part) if part else "1")
    return build_from_table(2 * n, table, labels=labels,
                            generators={rname: 1, fname: n})


def rotation_index(n, i):
    """Index of rot^i in the canonical layout."""
    return i % n


def reflection_index(n, i):
    """Index of rot^i * ref in the canonical layout."""
    return n + (i % n)


def dihedral_permutation_group(n, names=("r", "f")):
    """Dihedral group of order 2n built from vertex permutations.

    The rotation sends vertex v to v+1 mod n and the reflection sends v
    to -v mod n.  Elements are discovered breadth-first from the
    identity, so the element indexing is unrelated to the algebraic
    layout of ``dihedral_group``.
    """
    if n < 3:
        raise InvalidInput(f"need at least 3 vertices, got {n}")
    rot = tuple((v + 1) % n for v in range(n))
    ref = tuple((-v) % n for v in range(n))
    ident = tuple(range(n))

    def compose(p, q):
        # p then q, i.e. (p*q)(v) = q(p(v))
        return tuple(q[p[v]] for v in range(n))

    index = {ident: 0}
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in (rot, ref):
                h = compose(p, g)
                if h not in index:
                    index[h] = len(elems)
                    elems.append(h)
                    nxt.append(h)
        frontier = nxt
    size = len(elems)
    table = np.empty((size, size), dtype=np.int32)
    for a, p in enumerate(elems):
        for b, q in enumerate(elems):
            table[a, b] = index[compose(p, q)]
    rname, fname = names
    return build_from_table(size, table,
                            generators={rname: index[rot], fname: index[ref]})


def cyclic_group(k):
    """Cyclic group of order k as addition mod k."""
    if k < 1:
        raise InvalidInput(f"order must be positive, got {k}")
    idx = np.arange(k)
    table = (idx[:, None] + idx[None, :]) % k
    gens = {"g": 1 % k} if k > 1 else {}
    return build_from_table(k, table, generators=gens)
