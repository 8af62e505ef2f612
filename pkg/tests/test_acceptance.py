"""Acceptance battery: the eight go/no-go checks for this package.

Each criterion runs at its stated scale, inside its stated time budget,
and prints exactly one verdict line.  Run with -s (or read the captured
output) for the live lines:

    python3 -m pytest tests/test_acceptance.py -v -s
"""

import json
import time

import numpy as np
import pytest

from dpx.core import (
    build_from_table,
    direct_product,
    isomorphic,
    write_cayley_text,
)
from dpx.dihedral import dihedral_permutation_group
from dpx.errors import InadmissibleTuple, NotAGroup
from dpx.oracle import CrossingSeed, cross_validate, crossing_from_group, propagate
from dpx.products import (
    ParameterTuple,
    additive_order,
    admissible_tuples,
    check_conditions,
    construct_group,
    order_condition_scan,
    strata_counts,
    structural_checks,
    verify_cores,
    verify_exact_product,
)
from dpx.report import build_report, emit_report, parse_report


def _verdict(num, name, failures, elapsed, budget):
    ok = not failures and elapsed < budget
    print(f"[acceptance {num}] {name}: {'PASS' if ok else 'FAIL'} "
          f"({elapsed:.1f}s, budget {budget:.0f}s)")
    assert not failures, f"criterion {num}: {failures}"
    assert elapsed < budget, f"criterion {num} took {elapsed:.1f}s"


def test_criterion_1_direct_product_sanity():
    failures = []
    elapsed = 0.0
    for m, n in ((3, 3), (3, 5)):
        t0 = time.perf_counter()
        epg = construct_group(ParameterTuple(m, n, 1, 1, 0, 0, 0, 0, 0, 0))
        ref = direct_product(dihedral_permutation_group(n),
                             dihedral_permutation_group(m))
        if isomorphic(epg.group, ref) is None:
            failures.append(f"({m},{n}) not isomorphic to the reference")
        dt = time.perf_counter() - t0
        elapsed = max(elapsed, dt)
        if dt >= 1.0:
            failures.append(f"({m},{n}) took {dt:.2f}s")
    _verdict(1, "direct-product sanity", failures, elapsed, 1.0)


def test_criterion_2_soundness_sweep():
    failures = []
    t0 = time.perf_counter()
    for m, n in ((3, 3), (3, 5), (5, 3), (5, 5), (3, 7), (3, 9)):
        for params in admissible_tuples(m, n):
            try:
                epg = construct_group(params)  # full axiom validation
            except Exception as exc:  # noqa: BLE001
                failures.append(f"{params}: construction failed ({exc})")
                continue
            if epg.group.order != 4 * m * n:
                failures.append(f"{params}: wrong order")
            if not verify_exact_product(epg).passed:
                failures.append(f"{params}: exact product check failed")
            if not verify_cores(epg).passed:
                failures.append(f"{params}: core check failed")
            bad = [nm for nm, ok in structural_checks(epg) if not ok]
            if bad:
                failures.append(f"{params}: structural {bad}")
    _verdict(2, "soundness sweep over six pairs", failures,
             time.perf_counter() - t0, 300.0)


def test_criterion_3_crosscheck_33():
    failures = []
    t0 = time.perf_counter()
    single = cross_validate(3, 3, workers=1)
    dt_single = time.perf_counter() - t0
    t0 = time.perf_counter()
    eight = cross_validate(3, 3, workers=8)
    dt_eight = time.perf_counter() - t0
    for label, cr in (("workers=1", single), ("workers=8", eight)):
        if cr.sweep.seeds_total != 1679616:
            failures.append(f"{label}: wrong seed count")
        if cr.completeness_failures:
            failures.append(f"{label}: unmatched oracle groups "
                            f"{cr.completeness_failures}")
        if cr.soundness_failures:
            failures.append(f"{label}: uncovered tuples "
                            f"{cr.soundness_failures}")
        if len(cr.matched) != cr.tuples_total:
            failures.append(f"{label}: matched {len(cr.matched)} of "
                            f"{cr.tuples_total} tuples")
    if dt_single >= 900:
        failures.append(f"single-threaded run took {dt_single:.0f}s")
    _verdict(3, "completeness cross-check at (3,3)", failures, dt_eight,
             180.0)


def test_criterion_4_crosscheck_35_53():
    failures = []
    elapsed = 0.0
    reports = {}
    for m, n in ((3, 5), (5, 3)):
        t0 = time.perf_counter()
        cr = cross_validate(m, n, workers=8)
        dt = time.perf_counter() - t0
        elapsed = max(elapsed, dt)
        reports[(m, n)] = cr
        if cr.completeness_failures or cr.soundness_failures:
            failures.append(f"({m},{n}): {len(cr.completeness_failures)}/"
                            f"{len(cr.soundness_failures)} failures")
        if dt >= 3600:
            failures.append(f"({m},{n}) took {dt:.0f}s")
    a = reports[(3, 5)].sweep_json()
    b = reports[(5, 3)].sweep_json()
    a["m"], a["n"] = a["n"], a["m"]
    if a != b:
        failures.append("tallies differ under the factor swap")
    _verdict(4, "completeness cross-check at (3,5)/(5,3)", failures,
             elapsed, 3600.0)


def test_criterion_5_enumeration_regressions():
    failures = []
    t0 = time.perf_counter()
    tuples = admissible_tuples(3, 3)
    counts = strata_counts(tuples, 3, 3)
    expected = {(1, 1): 16, (1, 3): 6, (3, 1): 6, (3, 3): 0}
    if counts != expected:
        failures.append(f"strata {counts} != {expected}")
    # the (3,3) stratum is forced empty: with m1 = m the modulus m/m1
    # is 1, so condition (c) needs additive order n1 = 3 in Z_1
    rep = check_conditions(ParameterTuple(3, 3, 3, 3, 0, 0, 0, 0, 0, 0))
    if rep.passed or "c" not in rep.failed_names():
        failures.append("(m1,n1)=(3,3) was not rejected by condition (c)")
    # confirm each admissible tuple against the literal quantified scan
    for p in tuples:
        if not order_condition_scan(p.b, p.m_quot, p.n1):
            failures.append(f"{p}: scan disagrees on condition (c)")
        if not order_condition_scan(p.r, p.n_quot, p.m1):
            failures.append(f"{p}: scan disagrees on condition (d)")
    _verdict(5, "enumeration regressions at (3,3)", failures,
             time.perf_counter() - t0, 30.0)


def test_criterion_6_condition_checker_equivalence():
    failures = []
    t0 = time.perf_counter()
    disagreements = 0
    for q in range(1, 101):
        for v in range(q):
            if not order_condition_scan(v, q, additive_order(v, q)):
                disagreements += 1
                failures.append(f"gcd form and scan disagree at v={v}, q={q}")
    # the scan must be able to say no: sanity-probe a wrong target
    if order_condition_scan(2, 6, 4):
        failures.append("scan accepted a wrong additive order")
    if disagreements:
        failures.append(f"{disagreements} disagreements")
    _verdict(6, "condition-checker equivalence to q=100", failures,
             time.perf_counter() - t0, 30.0)


def test_criterion_7_determinism():
    failures = []
    t0 = time.perf_counter()
    outputs = []
    for workers in (1, 4, 8):
        cr = cross_validate(3, 3, workers=workers)
        outputs.append((json.dumps(cr.sweep_json(), sort_keys=True),
                        json.dumps(cr.to_json(), sort_keys=True)))
    if len(set(outputs)) != 1:
        failures.append("sweep/crosscheck output varies with worker count")
    rep = build_report(3, 3)
    if parse_report(emit_report(rep)) != rep:
        failures.append("report JSON does not round-trip")
    if emit_report(rep) != emit_report(rep):
        failures.append("report serialization is not deterministic")
    _verdict(7, "determinism across workers and formats", failures,
             time.perf_counter() - t0, 120.0)


def test_criterion_8_negative_controls():
    failures = []
    t0 = time.perf_counter()

    epg = construct_group(ParameterTuple(3, 3, 1, 1, 0, 0, 0, 0, 0, 0))
    table = np.array(epg.group.table)
    table[4, 7] = (table[4, 7] + 1) % 36
    try:
        build_from_table(36, table)
        failures.append("corrupted Cayley table was accepted")
    except NotAGroup:
        pass

    try:
        construct_group(ParameterTuple(3, 3, 3, 3, 0, 0, 0, 0, 0, 0))
        failures.append("inadmissible (m1,n1)=(3,3) tuple was accepted")
    except InadmissibleTuple as exc:
        if exc.report is None or exc.report.witnesses.get("c") != 1:
            failures.append(f"expected witness k=1, got "
                            f"{exc.report and exc.report.witnesses}")

    tab = crossing_from_group(epg.group, epg.x, epg.y, epg.z, epg.w)
    seed = tab.seed
    bad = CrossingSeed(3, 3, 0 * 6 + 1, seed.dzy, seed.dwx, seed.dwy)
    status, _ = propagate(3, 3, bad)
    if status == "ok":
        failures.append("identity-component crossing seed was accepted")

    _verdict(8, "negative controls", failures,
             time.perf_counter() - t0, 1.0)
