"""Classification report tests: partitions, JSON round-trips, markdown."""

import json

import pytest

from dpx.core import direct_product, isomorphic
from dpx.dihedral import cyclic_group, dihedral_group
from dpx.errors import InvalidInput
from dpx.products import ParameterTuple, construct_group
from dpx.report import (
    ClassificationReport,
    build_report,
    emit_report,
    parse_report,
    partition_by_isomorphism,
)


def _group(m1, n1, **res):
    p = ParameterTuple(3, 3, m1, n1, **{k: res.get(k, 0)
                                        for k in "abcrst"})
    return construct_group(p).group


def test_single_group_is_a_single_cell():
    part = partition_by_isomorphism([_group(1, 1)])
    assert part.cells == [[0]] and part.undecided == []


def test_profile_gate_separates_direct_product_from_cyclic():
    dp = direct_product(dihedral_group(3), dihedral_group(3))
    part = partition_by_isomorphism([dp, cyclic_group(36)])
    assert part.cells == [[0], [1]]
    assert part.undecided == []


def test_pinned_regression_b1_b2_are_isomorphic():
    # the two (1,3)-stratum groups with a=1 and b in {1, 2} land in one
    # cell; the verdict was first established by the backtracking search
    g1 = _group(1, 3, a=1, b=1)
    g2 = _group(1, 3, a=1, b=2)
    assert isomorphic(g1, g2) is not None
    assert partition_by_isomorphism([g1, g2]).cells == [[0, 1]]


def test_budget_overrun_lands_in_undecided_not_merged():
    # this pair needs backtracking, so a one-node budget cannot settle
    # it; the pair must surface as undecided, never silently merged
    g1 = _group(1, 3, a=1, b=1)
    g2 = _group(1, 3, a=1, b=2)
    part = partition_by_isomorphism([g1, g2], node_budget=1)
    assert part.cells == [[0], [1]]
    assert part.undecided == [[0, 1]]


@pytest.fixture(scope="module")
def report_33():
    return build_report(3, 3)


def test_report_pinned_structure(report_33):
    rep = report_33
    assert (rep.m, rep.n) == (3, 3)
    assert len(rep.tuples) == 28
    assert all(t["passed"] for t in rep.tuples)
    assert rep.strata == {"1,1": 16, "1,3": 6, "3,1": 6, "3,3": 0}
    assert sorted(len(c) for c in rep.iso_classes) == [9, 19]
    assert sorted(len(c) for c in rep.factorization_classes) == \
        [1, 3, 3, 6, 6, 9]
    assert rep.iso_undecided == []
    assert rep.oracle is None
    assert set(rep.timing) == {"enumerate", "verify", "iso_classes",
                               "factorization_classes"}


def test_partitions_cover_and_refine(report_33):
    rep = report_33
    everyone = set(range(len(rep.tuples)))
    for cells in (rep.iso_classes, rep.factorization_classes):
        flat = [i for cell in cells for i in cell]
        assert sorted(flat) == sorted(everyone)
    cell_of = {i: ci for ci, cell in enumerate(rep.iso_classes)
               for i in cell}
    for cell in rep.factorization_classes:
        assert len({cell_of[i] for i in cell}) == 1


def test_json_round_trip_and_determinism(report_33):
    text = emit_report(report_33)
    assert emit_report(report_33) == text  # byte identical
    back = parse_report(text)
    assert back == report_33


def test_markdown_shape(report_33):
    md = emit_report(report_33, format="markdown")
    assert emit_report(report_33, format="markdown") == md
    assert "| 3 | 3 | 0 |" in md  # the forced-empty stratum row
    assert "## Strata" in md and "## Factorization classes" in md
    assert md.count("\n| ") >= 28  # one row per tuple plus strata rows


def test_empty_report_is_still_a_valid_document():
    rep = ClassificationReport(3, 3, [], {"1,1": 0}, [], [], [], None, {})
    doc = emit_report(rep)
    assert parse_report(doc) == rep
    md = emit_report(rep, format="markdown")
    assert "- admissible tuples: 0" in md


def test_parse_rejects_malformed_documents(report_33):
    with pytest.raises(InvalidInput):
        parse_report("not json")
    with pytest.raises(InvalidInput):
        parse_report(json.dumps({"m": 3, "n": 3}))
    data = json.loads(emit_report(report_33))
    data["factorization_classes"][0] = [0, 1, 2, 99]  # not a partition
    with pytest.raises(InvalidInput):
        parse_report(json.dumps(data))


def test_unknown_format_rejected(report_33):
    with pytest.raises(InvalidInput):
        emit_report(report_33, format="yaml")


def test_report_with_embedded_oracle():
    rep = build_report(3, 3, include_oracle=True, workers=1)
    assert rep.oracle is not None
    assert rep.oracle["passed"] is True
    assert rep.oracle["groups_accepted"] == 28
    assert rep.oracle["classes_as_factorizations"] == 6
    assert len(rep.oracle["matched"]) == 28
    assert "oracle" in rep.timing
    assert parse_report(emit_report(rep)) == rep
