"""Finite groups as dense Cayley tables, plus the subgroup toolkit.

Everything in this package works on explicit multiplication tables.  The
orders involved stay small (a few hundred elements), so exhaustive
validation and naive subgroup algorithms are both affordable and easy to
audit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import NotAGroup, SearchBudgetExceeded

DEFAULT_ISO_BUDGET = 10**8


class ConcreteGroup:
    """A finite group stored as a full multiplication table.

    ``table[a, b]`` is the index of the product a*b.  Every group built
    by this package places the identity at index 0, although
    ``build_from_table`` accepts tables with the identity anywhere.
    """

    def __init__(self, table, identity, inverse, labels=None, generators=None):
        self.table = table
        self.order = int(table.shape[0])
        self.identity = int(identity)
        self.inverse = inverse
        self.labels = list(labels) if labels is not None else None
        self.generators = dict(generators) if generators else {}
        self._orders = None

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return int(self.inverse[a])

    def power(self, g, k):
        if k < 0:
            g, k = self.inv(g), -k
        acc = self.identity
        for _ in range(k):
            acc = int(self.table[acc, g])
        return acc

    def conjugate(self, g, h):
        """h^-1 * g * h."""
        t = self.table
        return int(t[t[self.inv(h), g], h])

    def commutator(self, g, h):
        """g^-1 * h^-1 * g * h."""
        t = self.table
        return int(t[t[t[self.inv(g), self.inv(h)], g], h])

    def element_orders(self):
        """Vector of element orders, computed once and cached."""
        if self._orders is None:
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            cur = np.arange(n)
            idx = np.arange(n)
            k = 1
            while (orders == 0).any():
                done = (cur == self.identity) & (orders == 0)
                orders[done] = k
                cur = self.table[cur, idx]
                k += 1
            self._orders = orders
        return self._orders

    def as_subgroup(self):
        return Subgroup(self, tuple(range(self.order)),
                        tuple(sorted(self.generators.values())) or tuple(range(self.order)))

    def label(self, g):
        return self.labels[g] if self.labels else str(g)

    def __repr__(self):
        return f"ConcreteGroup(order={self.order})"


def build_from_table(order, table, labels=None, generators=None):
    """Validate a dense table and wrap it as a ConcreteGroup.

    Checks, in this sequence: shape and entry range, the Latin property
    for rows and columns, a two-sided identity, exhaustive associativity
    over all triples, and inverses.  Raises NotAGroup with the first
    failure; the reason names a concrete witness where one exists.
    """
    t = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise NotAGroup(f"table shape {t.shape} is not square")
    n = t.shape[0]
    if order != n:
        raise NotAGroup(f"declared order {order} does not match table size {n}")
    if n == 0:
        raise NotAGroup("empty table")
    if int(t.min()) < 0 or int(t.max()) >= n:
        raise NotAGroup("table entry out of range")

    ref = np.arange(n, dtype=np.int32)
    row_ok = (np.sort(t, axis=1) == ref).all(axis=1)
    if not row_ok.all():
        raise NotAGroup(f"row {int(np.nonzero(~row_ok)[0][0])} is not a permutation")
    col_ok = (np.sort(t, axis=0) == ref[:, None]).all(axis=0)
    if not col_ok.all():
        raise NotAGroup(f"column {int(np.nonzero(~col_ok)[0][0])} is not a permutation")

    left_ids = np.nonzero((t == ref).all(axis=1))[0]
    identity = None
    for e in left_ids:
        if (t[:, e] == ref).all():
            identity = int(e)
            break
    if identity is None:
        raise NotAGroup("no two-sided identity")

    # Chunk over the first operand so the work stays in two N*N gathers.
    for a in range(n):
        lhs = t[t[a], :]
        rhs = t[a][t]
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            raise NotAGroup(f"associativity fails at ({a}, {int(b)}, {int(c)})")

    inverse = np.argmax(t == identity, axis=1).astype(np.int32)
    if not (t[inverse, ref] == identity).all():
        raise NotAGroup("one-sided inverse")  # unreachable after the checks above

    t.setflags(write=False)
    inverse.setflags(write=False)
    return ConcreteGroup(t, identity, inverse, labels, generators)


def element_order(G, g):
    """Smallest k >= 1 with g**k equal to the identity."""
    k, cur = 1, int(g)
    while cur != G.identity:
        cur = int(G.table[cur, g])
        k += 1
        if k > G.order:
            raise NotAGroup(f"element {g} has no finite order")  # defensive
    return k


def order_profile(G):
    """Multiset of element orders as a plain {order: count} dict."""
    orders = G.element_orders()
    return dict(sorted(Counter(int(o) for o in orders).items()))


class Subgroup:
    """A subgroup of a ConcreteGroup.

    ``members`` is the sorted tuple of element indices and
    ``witness_generators`` is a generating set recorded by whoever built
    the subgroup.  Closure of the witness always reproduces the members.
    """

    def __init__(self, parent, members, witness_generators):
        self.parent = parent
        self.members = tuple(sorted(int(g) for g in members))
        self.witness_generators = tuple(int(g) for g in witness_generators)
        self.member_set = frozenset(self.members)

    @property
    def order(self):
        return len(self.members)

    def __contains__(self, g):
        return int(g) in self.member_set

    def __eq__(self, other):
        return (isinstance(other, Subgroup)
                and self.parent is other.parent
                and self.members == other.members)

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __repr__(self):
        return f"Subgroup(order={self.order})"


def closure(G, seed):
    """Subgroup generated by ``seed``, by breadth-first multiplication."""
    gens = sorted({int(s) for s in seed})
    t = G.table
    members = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = int(t[g, s])
                if h not in members:
                    members.add(h)
                    nxt.append(h)
        frontier = nxt
    return Subgroup(G, members, gens)


def _as_member_set(G, S):
    if isinstance(S, Subgroup):
        return S.member_set
    return frozenset(int(s) for s in S)


def core(G, S):
    """Intersection of all conjugates of S: the largest normal subgroup inside S.

    Conjugates by every group element, with no generator shortcut; the
    scan exits early once the running intersection is trivial.
    """
    base = _as_member_set(G, S)
    t, inv = G.table, G.inverse
    members = set(base)
    for g in range(G.order):
        gi = int(inv[g])
        conj = {int(t[t[gi, s], g]) for s in base}
        members &= conj
        if members == {G.identity}:
            break
    return Subgroup(G, members, sorted(members))


def centralizer(G, S):
    """Elements commuting with every element of S."""
    elems = _as_member_set(G, S)
    t = G.table
    members = [g for g in range(G.order) if all(t[g, s] == t[s, g] for s in elems)]
    return Subgroup(G, members, members)


def is_normal(G, S):
    """Whether g^-1 S g == S for every g."""
    base = _as_member_set(G, S)
    t, inv = G.table, G.inverse
    for g in range(G.order):
        gi = int(inv[g])
        if any(int(t[t[gi, s], g]) not in base for s in base):
            return False
    return True


@dataclass(frozen=True)
class DihedralVerdict:
    """Outcome of recognize_dihedral.

    kind is "dihedral", "cyclic" or "other".  Dihedral verdicts carry a
    rotation generator and a reflection; cyclic verdicts carry a
    generator.
    """

    kind: str
    rotation_generator: int | None = None
    reflection: int | None = None
    generator: int | None = None


def recognize_dihedral(S):
    """Classify a subgroup as dihedral, cyclic or other.

    Dihedral means order 2k with k >= 3: a cyclic subgroup of index 2
    plus an involution outside it that inverts the rotation.  Orders 2
    and 4 are never reported dihedral; the groups of order 2 report
    cyclic and the Klein four group reports other.
    """
    G = S.parent
    n = S.order
    orders = {g: element_order(G, g) for g in S.members}
    if n >= 6 and n % 2 == 0:
        k = n // 2
        for c in S.members:
            if orders[c] != k:
                continue
            rot = {G.power(c, i) for i in range(k)}
            for rho in S.members:
                if rho in rot or orders[rho] != 2:
                    continue
                if G.conjugate(c, rho) == G.inv(c):
                    return DihedralVerdict("dihedral", rotation_generator=c, reflection=rho)
    for c in S.members:
        if orders[c] == n:
            return DihedralVerdict("cyclic", generator=c)
    return DihedralVerdict("other")


# ---------------------------------------------------------------------------
# Isomorphism search


def _generating_sequence(G, members=None):
    """Greedy generating sequence: highest order first, lowest index ties.

    When ``members`` is given the sequence generates that subgroup and
    every chosen generator lies inside it.
    """
    pool = list(members) if members is not None else list(range(G.order))
    orders = G.element_orders()
    have = {G.identity}
    gens = []
    while len(have) < len(pool):
        best = None
        for g in pool:
            if g in have:
                continue
            if best is None or orders[g] > orders[best]:
                best = g
        gens.append(best)
        have = set(closure(G, gens).members)
    return gens


def _extend_map(G1, G2, gens, imgs):
    """Grow the partial map on <gens> forced by gens -> imgs.

    Returns the {element: image} dict when the assignment extends to an
    injective homomorphism on the generated subgroup, else None.
    """
    t1, t2 = G1.table, G2.table
    phi = {G1.identity: G2.identity}
    frontier = [G1.identity]
    while frontier:
        nxt = []
        for g in frontier:
            fg = phi[g]
            for s, fs in zip(gens, imgs):
                gs = int(t1[g, s])
                im = int(t2[fg, fs])
                seen = phi.get(gs)
                if seen is None:
                    phi[gs] = im
                    nxt.append(gs)
                elif seen != im:
                    return None
        frontier = nxt
    if len(set(phi.values())) != len(phi):
        return None
    return phi


class _NodeBudget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self):
        self.used += 1
        if self.used > self.limit:
            raise SearchBudgetExceeded(self.used)


def _match_generators(G1, G2, gens, candidate_sets, budget):
    """Backtracking search for images of ``gens`` inside ``candidate_sets``.

    Each partial assignment is pruned through _extend_map, which also
    enforces subgroup-order compatibility.  Returns the full element map
    as a dict, or None.
    """
    imgs = []

    def rec(level):
        if level == len(gens):
            return _extend_map(G1, G2, gens, imgs)
        for cand in candidate_sets[level]:
            budget.spend()
            imgs.append(cand)
            if _extend_map(G1, G2, gens[: level + 1], imgs) is not None:
                found = rec(level + 1)
                if found is not None:
                    return found
            imgs.pop()
        return None

    return rec(0)


def _verify_isomorphism(G1, G2, mapping):
    arr = np.array([mapping[g] for g in range(G1.order)], dtype=np.int32)
    ok = np.array_equal(arr[G1.table], G2.table[arr[:, None], arr[None, :]])
    return arr if ok else None


def isomorphic(G1, G2, node_budget=DEFAULT_ISO_BUDGET):
    """Isomorphism between two table groups, or None.

    Generators of G1 are matched against order-compatible elements of
    G2, highest order first, with partial homomorphism extension as the
    pruning step.  Raises SearchBudgetExceeded when the node budget runs
    out before a verdict.
    """
    if G1.order != G2.order:
        return None
    if order_profile(G1) != order_profile(G2):
        return None
    if np.array_equal(G1.table, G2.table):
        return np.arange(G1.order, dtype=np.int32)
    gens = _generating_sequence(G1)
    o1 = G1.element_orders()
    o2 = G2.element_orders()
    cands = [[h for h in range(G2.order) if o2[h] == o1[g]] for g in gens]
    budget = _NodeBudget(node_budget)
    found = _match_generators(G1, G2, gens, cands, budget)
    if found is None or len(found) != G1.order:
        return None
    return _verify_isomorphism(G1, G2, found)


def isomorphic_as_factorization(G1, H1, K1, G2, H2, K2,
                                node_budget=DEFAULT_ISO_BUDGET):
    """Isomorphism G1 -> G2 carrying H1 onto H2 and K1 onto K2, or None.

    Generators of H1 may only map into H2 and generators of K1 into K2,
    which forces psi(H1) = H2 and psi(K1) = K2 once psi is bijective.
    """
    if G1.order != G2.order or H1.order != H2.order or K1.order != K2.order:
        return None
    if order_profile(G1) != order_profile(G2):
        return None
    o1 = G1.element_orders()
    o2 = G2.element_orders()
    hgens = _generating_sequence(G1, H1.members)
    kgens = _generating_sequence(G1, K1.members)
    gens = hgens + kgens
    cands = [[h for h in H2.members if o2[h] == o1[g]] for g in hgens]
    cands += [[k for k in K2.members if o2[k] == o1[g]] for g in kgens]
    budget = _NodeBudget(node_budget)
    found = _match_generators(G1, G2, gens, cands, budget)
    if found is None or len(found) != G1.order:
        return None
    arr = _verify_isomorphism(G1, G2, found)
    if arr is None:
        return None
    if {int(arr[h]) for h in H1.members} != set(H2.members):
        return None
    if {int(arr[k]) for k in K1.members} != set(K2.members):
        return None
    return arr


# ---------------------------------------------------------------------------
# Products and serialization


def direct_product(G1, G2):
    """Direct product with pair (a, b) stored at index a * |G2| + b."""
    o1, o2 = G1.order, G2.order
    t = (G1.table[:, None, :, None].astype(np.int64) * o2
         + G2.table[None, :, None, :]).reshape(o1 * o2, o1 * o2)
    labels = None
    if G1.labels and G2.labels:
        labels = [f"{a}|{b}" for a in G1.labels for b in G2.labels]
    gens = {}
    for name, g in G1.generators.items():
        gens[name] = g * o2 + G2.identity
    for name, g in G2.generators.items():
        if name in gens:
            name = name + "'"
        gens[name] = G1.identity * o2 + g
    return build_from_table(o1 * o2, t, labels=labels, generators=gens)


def write_cayley_text(G):
    """Serialize as the order= header plus one comma-separated row per element."""
    if G.identity != 0:
        raise ValueError("cayley format requires the identity at index 0")
    lines = [f"order={G.order}"]
    lines.extend(",".join(str(int(v)) for v in row) for row in G.table)
    return "\n".join(lines) + "\n"


def read_cayley_text(text):
    """Parse and fully validate a Cayley table serialization."""
    lines = [ln for ln in text.strip().split("\n")]
    if not lines or not lines[0].startswith("order="):
        raise NotAGroup("missing order= header")
    try:
        order = int(lines[0][len("order="):])
    except ValueError:
        raise NotAGroup("malformed order= header") from None
    rows = lines[1:]
    if len(rows) != order:
        raise NotAGroup(f"expected {order} rows, found {len(rows)}")
    try:
        table = [[int(v) for v in row.split(",")] for row in rows]
    except ValueError:
        raise NotAGroup("non-integer table entry") from None
    if any(len(row) != order for row in table):
        raise NotAGroup("ragged table row")
    G = build_from_table(order, table)
    if G.identity != 0:
        raise NotAGroup("element 0 is not the identity")
    return G


def write_cayley(G, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_cayley_text(G))


def read_cayley(path):
    with open(path, "r", encoding="utf-8") as fh:
        return read_cayley_text(fh.read())
