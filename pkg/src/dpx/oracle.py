"""Brute-force oracle over crossing tables, independent of the
parameter family.

For factor groups H (dihedral, rotation order n) and K (dihedral,
rotation order m), every group multiplication on the set H x K that
restricts to H and K on the layers and factors uniquely as h*k is
captured by a crossing function phi(k, h) = (p, q) with k*h = p*q.
Such a function is pinned down by its four generator cells, so sweeping
all (4*m*n)**4 seeds and keeping the ones that propagate to a complete,
axiom-satisfying table enumerates every exact product of the two
dihedral groups with no reference to the parameter family.  The family
is then judged against the sweep in both directions: each enumerated
tuple must round-trip to an accepted seed, and each accepted seed must
match some admissible tuple.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import (
    Subgroup,
    build_from_table,
    closure,
    core,
    element_order,
    isomorphic_as_factorization,
    recognize_dihedral,
)
from .dihedral import dihedral_group
from .errors import BudgetExceeded, InvalidInput, NotAGroup
from .products import ParameterTuple, check_conditions

DEFAULT_SEED_BUDGET = 2 * 10**8
SEED_BUDGET_ENV = "DPX_SEED_BUDGET"

_CHUNK_TARGET = 65536
_MAX_CHUNKS = 256


def resolve_seed_budget(explicit=None):
    """Effective seed budget: explicit argument, else environment, else
    the default.  Must be positive."""
    if explicit is not None:
        budget = int(explicit)
    else:
        raw = os.environ.get(SEED_BUDGET_ENV)
        if raw is None:
            return DEFAULT_SEED_BUDGET
        try:
            budget = int(raw)
        except ValueError:
            raise InvalidInput(
                f"{SEED_BUDGET_ENV} must be an integer, got {raw!r}") from None
    if budget < 1:
        raise InvalidInput(f"seed budget must be positive, got {budget}")
    return budget


def _factor_tables(m, n):
    H = dihedral_group(n, names=("x", "y"))
    K = dihedral_group(m, names=("z", "w"))
    return H, K


def _flat(table):
    return [int(v) for v in table.ravel()]


@dataclass(frozen=True)
class CrossingSeed:
    """The four generator cells (z,x), (z,y), (w,x), (w,y) of a
    crossing table, each encoded p*(2m) + q."""

    m: int
    n: int
    dzx: int
    dzy: int
    dwx: int
    dwy: int

    def __post_init__(self):
        base = 4 * self.m * self.n
        for name in ("dzx", "dzy", "dwx", "dwy"):
            v = getattr(self, name)
            if not 0 <= v < base:
                raise InvalidInput(f"{name}={v} outside [0, {base})")

    @property
    def index(self):
        b = 4 * self.m * self.n
        return ((self.dzx * b + self.dzy) * b + self.dwx) * b + self.dwy

    @classmethod
    def from_index(cls, m, n, index):
        b = 4 * m * n
        if not 0 <= index < b**4:
            raise InvalidInput(f"seed index {index} outside [0, {b**4})")
        rest, dwy = divmod(index, b)
        rest, dwx = divmod(rest, b)
        dzx, dzy = divmod(rest, b)
        return cls(m, n, dzx, dzy, dwx, dwy)


@dataclass
class CrossingTable:
    """A complete crossing function, values[k*(2n) + h] = p*(2m) + q."""

    m: int
    n: int
    values: tuple

    def __post_init__(self):
        nh, nk = 2 * self.n, 2 * self.m
        if len(self.values) != nh * nk:
            raise InvalidInput("crossing table has the wrong size")
        self.values = tuple(int(v) for v in self.values)

    def pair(self, k, h):
        """The (p, q) with k*h = p*q."""
        v = self.values[k * 2 * self.n + h]
        return divmod(v, 2 * self.m)

    @property
    def seed(self):
        nh, nk = 2 * self.n, 2 * self.m
        return CrossingSeed(self.m, self.n,
                            self.values[1 * nh + 1],
                            self.values[1 * nh + self.n],
                            self.values[self.m * nh + 1],
                            self.values[self.m * nh + self.n])


def propagate(m, n, seed, lifo=False):
    """Close a crossing table from a seed.

    Returns (status, table) with status "ok", "conflict" or "stalled"
    and table a CrossingTable on success, None otherwise.
    """
    if isinstance(seed, int):
        seed = CrossingSeed.from_index(m, n, seed)
    if (seed.m, seed.n) != (m, n):
        raise InvalidInput("seed was built for different factor sizes")
    H, K = _factor_tables(m, n)
    status, values = kernels.propagate_seed(
        2 * n, 2 * m, _flat(H.table), _flat(K.table), 1, n, 1, m,
        seed.dzx, seed.dzy, seed.dwx, seed.dwy, lifo)
    if status != "ok":
        return status, None
    return status, CrossingTable(m, n, tuple(values))


@dataclass
class OracleGroup:
    """A fully validated group built from one accepted crossing table.

    Elements are pairs (h, k) indexed h*(2m) + k; the H layer is the
    set with k = 0 and the K layer the set with h = 0.
    """

    group: object
    H: Subgroup
    K: Subgroup
    table: CrossingTable

    @property
    def seed(self):
        return self.table.seed


def build_oracle_group(m, n, source):
    """Materialize and fully validate the group of a seed or table.

    source may be a CrossingSeed, a seed index, or a CrossingTable.
    The multiplication (h1,k1)*(h2,k2) = (h1*p, q*k2) with (p,q) =
    phi(k1,h2) goes through complete table validation, so a bad table
    raises NotAGroup rather than producing a broken object.
    """
    if isinstance(source, CrossingTable):
        tab = source
        if (tab.m, tab.n) != (m, n):
            raise InvalidInput("crossing table was built for different sizes")
    else:
        status, tab = propagate(m, n, source)
        if status != "ok":
            raise NotAGroup(f"seed rejected during propagation ({status})")
    H, K = _factor_tables(m, n)
    nh, nk = 2 * n, 2 * m
    order = nh * nk
    val = np.asarray(tab.values, dtype=np.int32).reshape(nk, nh)
    g = np.arange(order, dtype=np.int32)
    h1, k1 = g // nk, g % nk
    v = val[k1[:, None], h1[None, :]]        # phi(k of g1, h of g2)
    p, q = v // nk, v % nk
    table = H.table[h1[:, None], p] * nk + K.table[q, k1[None, :]]
    labels = []
    for hh in range(nh):
        for kk in range(nk):
            hl, kl = H.label(hh), K.label(kk)
            labels.append(kl if hl == "1" else hl if kl == "1"
                          else f"{hl}*{kl}")
    gens = {"x": 1 * nk, "y": n * nk, "z": 1, "w": m}
    G = build_from_table(order, table, labels=labels, generators=gens)
    GH = closure(G, [gens["x"], gens["y"]])
    GK = closure(G, [gens["z"], gens["w"]])
    if GH.members != tuple(h * nk for h in range(nh)):
        raise NotAGroup("H layer is not the H-generated subgroup")
    if GK.members != tuple(range(nk)):
        raise NotAGroup("K layer is not the K-generated subgroup")
    return OracleGroup(G, GH, GK, tab)


def crossing_from_group(G, x, y, z, w):
    """Extract the crossing table of an exact product presented by
    generators: x, y spanning the H factor, z, w the K factor.

    Inverts the factorization h*k once into a lookup, then reads off
    phi(k, h) for every pair.  Raises InvalidInput when the factors
    overlap or do not cover the group, since then no crossing exists.
    """
    n = element_order(G, x)
    m = element_order(G, z)
    nh, nk = 2 * n, 2 * m
    if nh * nk != G.order:
        raise InvalidInput("factor orders do not multiply to the group order")
    hlist = [G.mul(G.power(x, i), y if e else G.identity)
             for e in (0, 1) for i in range(n)]
    klist = [G.mul(G.power(z, i), w if e else G.identity)
             for e in (0, 1) for i in range(m)]
    if len(set(hlist)) != nh or len(set(klist)) != nk:
        raise InvalidInput("generators do not span dihedral factors")
    fact = {}
    for hp, hval in enumerate(hlist):
        for kq, kval in enumerate(klist):
            fact[G.mul(hval, kval)] = hp * nk + kq
    if len(fact) != G.order:
        raise InvalidInput("elements do not factor uniquely across H and K")
    values = [fact[G.mul(kval, hval)] for kval in klist for hval in hlist]
    return CrossingTable(m, n, tuple(values))


# ---------------------------------------------------------------------------
# Sweeping


def _chunk_bounds(total):
    chunks = min(_MAX_CHUNKS, max(1, math.ceil(total / _CHUNK_TARGET)))
    return [(i * total // chunks, (i + 1) * total // chunks)
            for i in range(chunks)]


def _sweep_chunk(args):
    m, n, start, stop, lifo = args
    H, K = _factor_tables(m, n)
    return kernels.sweep_range(2 * n, 2 * m, _flat(H.table), _flat(K.table),
                               1, n, 1, m, start, stop, lifo)


@dataclass
class SweepResult:
    """Tally of one full seed sweep plus the surviving groups."""

    m: int
    n: int
    seeds_total: int
    conflict: int
    stalled: int
    axiom_rejected: int
    accepted_seeds: list
    groups: list = field(default_factory=list)

    @property
    def propagation_rejected(self):
        return self.conflict + self.stalled

    @property
    def groups_accepted(self):
        return len(self.accepted_seeds)


def enumerate_exact_products(m, n, workers=None, budget=None, lifo=False,
                             progress=None, build_groups=True):
    """Sweep every seed for the pair (m, n) and build the survivors.

    The seed space is split into deterministic chunks (a function of the
    total alone, never of the worker count) and merged in chunk order,
    so tallies and accepted seed order do not depend on scheduling.
    workers > 1 runs chunks in a process pool; workers None uses the
    CPU count.  Raises BudgetExceeded when the seed space is larger
    than the effective budget.
    """
    total = (4 * m * n) ** 4
    limit = resolve_seed_budget(budget)
    if total > limit:
        raise BudgetExceeded(total, limit)
    if workers is None:
        workers = os.cpu_count() or 1
    bounds = _chunk_bounds(total)
    jobs = [(m, n, start, stop, lifo) for start, stop in bounds]
    conflict = stalled = axiom = 0
    accepted = []
    done = 0
    if workers <= 1:
        results = map(_sweep_chunk, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_sweep_chunk, jobs)
    try:
        for c, s, a, acc in results:
            conflict += c
            stalled += s
            axiom += a
            accepted.extend(int(x) for x in acc)
            done += 1
            if progress is not None:
                progress(done, len(jobs))
    finally:
        if workers > 1:
            pool.shutdown()
    out = SweepResult(m, n, total, conflict, stalled, axiom, accepted)
    if build_groups:
        out.groups = [build_oracle_group(m, n, seed) for seed in accepted]
    return out


# ---------------------------------------------------------------------------
# Matching accepted groups back to the family


def _dihedral_generator_candidates(G, S):
    """(rotation, reflection) candidate pairs for a dihedral subgroup,
    in a fixed deterministic order."""
    verdict = recognize_dihedral(S)
    if verdict.kind != "dihedral":
        return 0, []
    rho = verdict.rotation_generator
    k = S.order // 2
    rotations = [G.identity]
    cur = G.identity
    for _ in range(k - 1):
        cur = G.mul(cur, rho)
        rotations.append(cur)
    reflections = sorted(set(S.members) - set(rotations))
    rot_cands = [rotations[i] for i in range(1, k) if math.gcd(i, k) == 1]
    return k, [(r, f) for r in rot_cands for f in reflections]


def match_parameters(G, H, K):
    """Identify an accepted exact product inside the parameter family.

    Searches generator choices x, y in H and z, w in K, reads the six
    interaction residues off the three mixed commutators, and accepts
    the first choice for which every defining relation holds and the
    admissibility conditions pass.  Returns (params, witnesses) or None;
    witnesses maps generator names to element indices.
    """
    n, hcands = _dihedral_generator_candidates(G, H)
    m, kcands = _dihedral_generator_candidates(G, K)
    if not hcands or not kcands:
        return None
    n1 = n // core(G, closure(G, [hcands[0][0]])).order
    m1 = m // core(G, closure(G, [kcands[0][0]])).order
    if n % n1 or m % m1:  # cores are subgroups of the cyclic rotations
        return None
    for x, y in hcands:
        for z, w in kcands:
            powers = {}
            xi = G.identity
            for i in range(n):
                zj = xi
                for j in range(m):
                    powers.setdefault(zj, (i, j))
                    zj = G.mul(zj, z)
                xi = G.mul(xi, x)
            found = _read_residues(G, powers, m, n, m1, n1, x, y, z, w)
            if found is not None:
                return found, {"x": x, "y": y, "z": z, "w": w}
    return None


def _read_residues(G, powers, m, n, m1, n1, x, y, z, w):
    """Six residues from the mixed commutators, or None on any miss."""
    mq, nq = m // m1, n // n1
    out = {}
    for key_i, key_j, g1, g2 in (("s", "b", x, w), ("r", "a", z, y),
                                 ("t", "c", y, w)):
        ij = powers.get(G.commutator(g1, g2))
        if ij is None:
            return None
        i, j = ij
        if i % n1 or j % m1:
            return None
        out[key_i] = (i // n1) % nq
        out[key_j] = (j // m1) % mq
    try:
        params = ParameterTuple(m, n, m1, n1, out["a"], out["b"], out["c"],
                                out["r"], out["s"], out["t"])
    except InvalidInput:
        return None
    if not check_conditions(params).passed:
        return None
    if not _relations_hold(G, params, x, y, z, w):
        return None
    return params


def _relations_hold(G, p, x, y, z, w):
    from .products import presentation_relators

    return all(check(G, x, y, z, w)
               for _, check in presentation_relators(p))


# ---------------------------------------------------------------------------
# Two-sided cross-validation


@dataclass
class CrossReport:
    """Outcome of judging the family against the sweep for one pair."""

    m: int
    n: int
    sweep: SweepResult
    tuples_total: int
    classes_as_factorizations: int
    completeness_failures: list
    soundness_failures: list
    matched: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.completeness_failures and not self.soundness_failures

    def sweep_json(self):
        """The canonical nine-key summary of one sweep."""
        return {
            "m": self.m,
            "n": self.n,
            "seeds_total": self.sweep.seeds_total,
            "propagation_rejected": self.sweep.propagation_rejected,
            "axiom_rejected": self.sweep.axiom_rejected,
            "groups_accepted": self.sweep.groups_accepted,
            "classes_as_factorizations": self.classes_as_factorizations,
            "completeness_failures": len(self.completeness_failures),
            "soundness_failures": len(self.soundness_failures),
        }

    def to_json(self):
        """Plain-data form: the summary keys plus the full detail lists.

        Everything is JSON-native and deterministically ordered, so the
        serialized report is byte-identical across worker counts.
        """
        data = self.sweep_json()
        data["accepted_seeds"] = [int(s) for s in self.sweep.accepted_seeds]
        data["completeness_failure_detail"] = [
            [int(seed), reason] for seed, reason in self.completeness_failures]
        data["soundness_failure_detail"] = [
            [list(key), reason] for key, reason in self.soundness_failures]
        data["matched"] = {",".join(str(v) for v in key): int(seed)
                           for key, seed in sorted(self.matched.items())}
        data["passed"] = self.passed
        return data


def partition_as_factorizations(groups, iso_budget=None):
    """Partition OracleGroups by factor-preserving isomorphism.

    Returns a list of lists of indices into ``groups``, in first-seen
    order.  Each group is compared against one representative per
    existing class, so the class count drives the cost.
    """
    from .core import DEFAULT_ISO_BUDGET

    budget = DEFAULT_ISO_BUDGET if iso_budget is None else iso_budget
    classes = []
    for idx, og in enumerate(groups):
        placed = False
        for cls in classes:
            rep = groups[cls[0]]
            if isomorphic_as_factorization(og.group, og.H, og.K, rep.group,
                                           rep.H, rep.K,
                                           node_budget=budget) is not None:
                cls.append(idx)
                placed = True
                break
        if not placed:
            classes.append([idx])
    return classes


def cross_validate(m, n, workers=None, budget=None, iso_budget=None,
                   progress=None):
    """Run the sweep and judge the family against it, both directions.

    Completeness: every accepted seed's group must match some
    admissible tuple via match_parameters (nothing outside the family
    survives the sweep).  Soundness: every admissible tuple's
    constructed group must be covered by an accepted seed whose oracle
    group is isomorphic to it through the factors.  Returns a
    CrossReport carrying the failures by name.
    """
    from .core import DEFAULT_ISO_BUDGET
    from .products import admissible_tuples, construct_group

    node_budget = DEFAULT_ISO_BUDGET if iso_budget is None else iso_budget
    sweep = enumerate_exact_products(m, n, workers=workers, budget=budget,
                                     progress=progress)
    accepted = dict(zip(sweep.accepted_seeds, sweep.groups))
    tuples = admissible_tuples(m, n)
    soundness = []
    matched = {}
    for params in tuples:
        epg = construct_group(params)
        tab = crossing_from_group(epg.group, epg.x, epg.y, epg.z, epg.w)
        seed = tab.seed.index
        og = accepted.get(seed)
        if og is None:
            soundness.append((params.key(), "seed not accepted"))
            continue
        if isomorphic_as_factorization(epg.group, epg.H, epg.K, og.group,
                                       og.H, og.K,
                                       node_budget=node_budget) is None:
            soundness.append((params.key(), "accepted group differs"))
        else:
            matched[params.key()] = seed
    completeness = []
    for seed, og in accepted.items():
        got = match_parameters(og.group, og.H, og.K)
        if got is None:
            completeness.append((seed, "no admissible tuple matches"))
    classes = partition_as_factorizations(sweep.groups, iso_budget=iso_budget)
    return CrossReport(m, n, sweep, len(tuples), len(classes), completeness,
                       soundness, matched)
