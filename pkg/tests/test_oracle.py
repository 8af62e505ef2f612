"""Oracle tests: seed encoding, propagation wrappers, the full sweep,
matching back to the family, and the two-sided cross-check.

Sweep tallies and class sizes pinned here come from the first full
runs, which were corroborated in two independent ways: the accepted
seed set coincides exactly with the seeds extracted from the
constructed family, and the factorization class sizes match the
orbit counts of the generator-change action on tuples.
"""

import pytest

from dpx.core import isomorphic_as_factorization
from dpx.errors import BudgetExceeded, InvalidInput, NotAGroup
from dpx.oracle import (
    DEFAULT_SEED_BUDGET,
    SEED_BUDGET_ENV,
    CrossingSeed,
    CrossingTable,
    build_oracle_group,
    cross_validate,
    crossing_from_group,
    enumerate_exact_products,
    match_parameters,
    partition_as_factorizations,
    propagate,
    resolve_seed_budget,
)
from dpx.products import admissible_tuples, check_conditions, construct_group

# full sweep tallies, frozen
FULL_33 = dict(seeds_total=1679616, conflict=1675334, stalled=4254,
               axiom_rejected=0, accepted=28)
FULL_35 = dict(seeds_total=12960000, conflict=12772616, stalled=187360,
               axiom_rejected=0, accepted=24)

# factorization-equivalence class sizes at (3,3), frozen; these equal
# the orbit sizes of generator changes on the tuple set, which sum to 28
CLASS_SIZES_33 = [1, 3, 3, 6, 6, 9]


@pytest.fixture(scope="module")
def family_33():
    out = []
    for params in admissible_tuples(3, 3):
        epg = construct_group(params)
        tab = crossing_from_group(epg.group, epg.x, epg.y, epg.z, epg.w)
        out.append((params, epg, tab))
    return out


@pytest.fixture(scope="module")
def sweep_33():
    return enumerate_exact_products(3, 3, workers=1)


def test_seed_index_round_trip():
    for idx in (0, 1, 35, 36, 36**4 - 1, 351561, 987654):
        assert CrossingSeed.from_index(3, 3, idx).index == idx
    seed = CrossingSeed(3, 3, 7, 19, 9, 21)
    assert CrossingSeed.from_index(3, 3, seed.index) == seed
    with pytest.raises(InvalidInput):
        CrossingSeed.from_index(3, 3, 36**4)
    with pytest.raises(InvalidInput):
        CrossingSeed(3, 3, 36, 0, 0, 0)


def test_propagate_reproduces_extracted_tables(family_33):
    _, _, tab = family_33[0]
    status, tab2 = propagate(3, 3, tab.seed)
    assert status == "ok"
    assert tab2 == tab
    # int seeds are accepted too
    status, tab3 = propagate(3, 3, tab.seed.index)
    assert status == "ok" and tab3 == tab
    with pytest.raises(InvalidInput):
        propagate(5, 3, tab.seed)


def test_crossing_table_validation():
    with pytest.raises(InvalidInput):
        CrossingTable(3, 3, (0,) * 35)


def test_build_oracle_group_from_table(family_33):
    _, epg, tab = family_33[0]
    og = build_oracle_group(3, 3, tab)
    assert og.group.order == 36
    assert og.H.order == 6 and og.K.order == 6
    assert og.seed == tab.seed
    assert isomorphic_as_factorization(
        og.group, og.H, og.K, epg.group, epg.H, epg.K) is not None


def test_build_oracle_group_rejects_bad_seed(family_33):
    _, _, tab = family_33[0]
    seed = tab.seed
    # send (z, x) to (identity, z): no exact product does that
    bad = CrossingSeed(3, 3, 0 * 6 + 1, seed.dzy, seed.dwx, seed.dwy)
    with pytest.raises(NotAGroup):
        build_oracle_group(3, 3, bad)
    with pytest.raises(InvalidInput):
        build_oracle_group(5, 3, tab)


def test_crossing_from_group_rejects_non_factorizing_pairs(family_33):
    _, epg, _ = family_33[0]
    with pytest.raises(InvalidInput):
        crossing_from_group(epg.group, epg.x, epg.y, epg.z, epg.y)


def test_full_33_sweep(sweep_33):
    sr = sweep_33
    assert sr.seeds_total == FULL_33["seeds_total"]
    assert sr.conflict == FULL_33["conflict"]
    assert sr.stalled == FULL_33["stalled"]
    assert sr.axiom_rejected == FULL_33["axiom_rejected"]
    assert sr.groups_accepted == FULL_33["accepted"]
    assert sr.propagation_rejected == sr.conflict + sr.stalled
    assert sr.accepted_seeds == sorted(sr.accepted_seeds)
    assert all(og.group.order == 36 for og in sr.groups)


def test_sweep_is_deterministic_across_workers():
    one = enumerate_exact_products(3, 3, workers=1, build_groups=False)
    four = enumerate_exact_products(3, 3, workers=4, build_groups=False)
    for name in ("seeds_total", "conflict", "stalled", "axiom_rejected",
                 "accepted_seeds"):
        assert getattr(one, name) == getattr(four, name)


def test_accepted_seeds_are_exactly_the_family_seeds(sweep_33, family_33):
    # the strongest pin: the sweep and the family agree seed for seed
    family_seeds = {tab.seed.index for _, _, tab in family_33}
    assert set(sweep_33.accepted_seeds) == family_seeds


def test_match_parameters_identifies_every_accepted_group(sweep_33):
    for og in sweep_33.groups:
        got = match_parameters(og.group, og.H, og.K)
        assert got is not None
        params, witnesses = got
        assert (params.m, params.n) == (3, 3)
        assert check_conditions(params).passed
        assert sorted(witnesses) == ["w", "x", "y", "z"]


def test_cross_validate_33(sweep_33):
    cr = cross_validate(3, 3, workers=1)
    assert cr.passed
    assert cr.completeness_failures == [] and cr.soundness_failures == []
    assert cr.tuples_total == 28
    assert len(cr.matched) == 28
    assert cr.sweep_json() == {
        "m": 3, "n": 3,
        "seeds_total": 1679616,
        "propagation_rejected": 1679588,
        "axiom_rejected": 0,
        "groups_accepted": 28,
        "classes_as_factorizations": 6,
        "completeness_failures": 0,
        "soundness_failures": 0,
    }
    sizes = sorted(len(c) for c in
                   partition_as_factorizations(sweep_33.groups))
    assert sizes == CLASS_SIZES_33


def test_cross_validate_35_and_53_swap_symmetry():
    cr35 = cross_validate(3, 5, workers=2)
    cr53 = cross_validate(5, 3, workers=2)
    for cr, m, n in ((cr35, 3, 5), (cr53, 5, 3)):
        assert cr.passed
        assert cr.sweep.seeds_total == FULL_35["seeds_total"]
        assert cr.sweep.conflict == FULL_35["conflict"]
        assert cr.sweep.stalled == FULL_35["stalled"]
        assert cr.sweep.axiom_rejected == FULL_35["axiom_rejected"]
        assert cr.sweep.groups_accepted == FULL_35["accepted"]
        assert (cr.m, cr.n) == (m, n)
    a, b = cr35.sweep_json(), cr53.sweep_json()
    a["m"], a["n"] = a["n"], a["m"]
    assert a == b


def test_budget_guard():
    with pytest.raises(BudgetExceeded) as exc:
        enumerate_exact_products(7, 9)
    assert exc.value.total == 252**4
    assert exc.value.budget == DEFAULT_SEED_BUDGET
    with pytest.raises(BudgetExceeded):
        enumerate_exact_products(3, 3, budget=36**4 - 1)


def test_resolve_seed_budget(monkeypatch):
    monkeypatch.delenv(SEED_BUDGET_ENV, raising=False)
    assert resolve_seed_budget() == DEFAULT_SEED_BUDGET
    assert resolve_seed_budget(123) == 123
    monkeypatch.setenv(SEED_BUDGET_ENV, "5000")
    assert resolve_seed_budget() == 5000
    assert resolve_seed_budget(77) == 77  # explicit beats the environment
    monkeypatch.setenv(SEED_BUDGET_ENV, "many")
    with pytest.raises(InvalidInput):
        resolve_seed_budget()
    with pytest.raises(InvalidInput):
        resolve_seed_budget(0)
