"""Classification reports over the admissible family.

A report collects, for one (m, n): the admissible tuples with their
verification verdicts, the stratum counts, the partition into plain
isomorphism classes, the finer partition into factor-preserving
isomorphism classes, an optional embedded cross-check, and per-phase
timings.  Every field is plain data so JSON emission round-trips:
parse_report(emit_report(rep)) == rep.
"""

import json
import time
from dataclasses import asdict, dataclass, field

from .core import (
    DEFAULT_ISO_BUDGET,
    SearchBudgetExceeded,
    isomorphic,
    order_profile,
)
from .errors import InvalidInput
from .oracle import cross_validate, partition_as_factorizations
from .products import (
    admissible_tuples,
    construct_group,
    strata_counts,
    structural_checks,
    verify_cores,
    verify_exact_product,
)

_REPORT_FIELDS = ("m", "n", "tuples", "strata", "iso_classes",
                  "iso_undecided", "factorization_classes", "oracle",
                  "timing")


@dataclass
class IsoPartition:
    """Cells of pairwise-isomorphic groups plus the budget leftovers.

    ``undecided`` lists [representative, candidate] index pairs whose
    isomorphism search ran out of nodes.  Such candidates stay in their
    own cells; they are never merged on a guess.
    """

    cells: list
    undecided: list


def partition_by_isomorphism(groups, node_budget=None):
    """Partition a list of groups by plain isomorphism.

    Cells come out in first-seen order and each carries indices into
    ``groups``.  Order profiles gate the pairwise checks, so groups
    with different element-order statistics are never compared.
    """
    budget = DEFAULT_ISO_BUDGET if node_budget is None else node_budget
    cells = []
    profiles = []  # one hashable profile key per cell
    undecided = []
    for idx, G in enumerate(groups):
        key = tuple(order_profile(G).items())
        placed = False
        for ci, cell in enumerate(cells):
            if profiles[ci] != key:
                continue
            rep = cell[0]
            try:
                hit = isomorphic(groups[rep], G, node_budget=budget)
            except SearchBudgetExceeded:
                undecided.append([rep, idx])
                continue
            if hit is not None:
                cell.append(idx)
                placed = True
                break
        if not placed:
            cells.append([idx])
            profiles.append(key)
    return IsoPartition(cells, undecided)


@dataclass
class ClassificationReport:
    """Everything known about one (m, n) family, as plain data."""

    m: int
    n: int
    tuples: list
    strata: dict
    iso_classes: list
    iso_undecided: list
    factorization_classes: list
    oracle: object = None
    timing: dict = field(default_factory=dict)

    def validate(self):
        """Enforce the partition invariants; raises InvalidInput."""
        everyone = set(range(len(self.tuples)))
        for label, cells in (("iso_classes", self.iso_classes),
                             ("factorization_classes",
                              self.factorization_classes)):
            seen = []
            for cell in cells:
                seen.extend(cell)
            if len(seen) != len(set(seen)) or set(seen) != everyone:
                raise InvalidInput(f"{label} is not a partition of the tuples")
        # the finer partition must sit inside the coarser one
        cell_of = {}
        for ci, cell in enumerate(self.iso_classes):
            for idx in cell:
                cell_of[idx] = ci
        for cell in self.factorization_classes:
            if len({cell_of[idx] for idx in cell}) > 1:
                raise InvalidInput(
                    "factorization class straddles isomorphism classes")
        return self


def build_report(m, n, include_oracle=False, workers=None, seed_budget=None,
                 iso_budget=None, progress=None):
    """Construct and classify the whole family for one (m, n).

    Builds every admissible tuple's group, runs the full verification
    battery on each, partitions the family two ways, and optionally
    appends a sweep cross-check.  Timing is recorded per phase.
    """
    timing = {}
    t0 = time.perf_counter()
    tuples = admissible_tuples(m, n)
    strata = {f"{m1},{n1}": cnt
              for (m1, n1), cnt in sorted(strata_counts(tuples, m, n).items())}
    timing["enumerate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    built = []
    entries = []
    for params in tuples:
        epg = construct_group(params)
        vp = verify_exact_product(epg)
        vc = verify_cores(epg)
        sc = structural_checks(epg)
        built.append(epg)
        entries.append({
            "params": asdict(params),
            "order": int(epg.group.order),
            "exact_product": vp.passed,
            "cores": vc.passed,
            "structural": {name: bool(ok) for name, ok in sc},
            "diagnostics": list(vp.diagnostics) + list(vc.diagnostics),
            "passed": vp.passed and vc.passed and all(ok for _, ok in sc),
        })
    timing["verify"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    part = partition_by_isomorphism([e.group for e in built],
                                    node_budget=iso_budget)
    timing["iso_classes"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    fact = partition_as_factorizations(built, iso_budget=iso_budget)
    timing["factorization_classes"] = time.perf_counter() - t0

    oracle = None
    if include_oracle:
        t0 = time.perf_counter()
        cr = cross_validate(m, n, workers=workers, budget=seed_budget,
                            iso_budget=iso_budget, progress=progress)
        oracle = cr.to_json()
        timing["oracle"] = time.perf_counter() - t0

    rep = ClassificationReport(m, n, entries, strata, part.cells,
                               part.undecided, fact, oracle, timing)
    return rep.validate()


def emit_report(report, format="json"):
    """Serialize a report deterministically as JSON or markdown."""
    if format == "json":
        data = {name: getattr(report, name) for name in _REPORT_FIELDS}
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    if format == "markdown":
        return _emit_markdown(report)
    raise InvalidInput(f"unknown report format {format!r}")


def _stratum_rows(strata):
    rows = []
    for key in strata:
        m1, n1 = (int(v) for v in key.split(","))
        rows.append((m1, n1, strata[key]))
    rows.sort()
    return rows


def _emit_markdown(report):
    lines = [
        f"# Exact product classification for (m, n) = "
        f"({report.m}, {report.n})",
        "",
        f"- admissible tuples: {len(report.tuples)}",
        f"- isomorphism classes: {len(report.iso_classes)}",
        f"- factorization classes: {len(report.factorization_classes)}",
        f"- all verified: {all(t['passed'] for t in report.tuples)}",
        "",
        "## Strata",
        "",
        "| m1 | n1 | tuples |",
        "|---:|---:|-------:|",
    ]
    for m1, n1, cnt in _stratum_rows(report.strata):
        lines.append(f"| {m1} | {n1} | {cnt} |")
    lines += [
        "",
        "## Tuples",
        "",
        "| # | m1 | n1 | a | b | c | r | s | t | passed |",
        "|--:|---:|---:|--:|--:|--:|--:|--:|--:|:-------|",
    ]
    for i, entry in enumerate(report.tuples):
        p = entry["params"]
        cols = [str(i)] + [str(p[k])
                           for k in ("m1", "n1", "a", "b", "c", "r", "s", "t")]
        cols.append("yes" if entry["passed"] else "NO")
        lines.append("| " + " | ".join(cols) + " |")
    for title, cells in (("Isomorphism classes", report.iso_classes),
                         ("Factorization classes",
                          report.factorization_classes)):
        lines += ["", f"## {title}", ""]
        for ci, cell in enumerate(cells):
            members = ", ".join(str(i) for i in cell)
            lines.append(f"- class {ci} ({len(cell)} members): {members}")
        if not cells:
            lines.append("- none")
    if report.iso_undecided:
        lines += ["", "## Undecided pairs", ""]
        for rep_idx, idx in report.iso_undecided:
            lines.append(f"- ({rep_idx}, {idx}) exceeded the search budget")
    if report.oracle is not None:
        lines += ["", "## Oracle cross-check", ""]
        for key in sorted(report.oracle):
            if key.endswith("_detail") or key in ("accepted_seeds", "matched"):
                continue
            lines.append(f"- {key}: {report.oracle[key]}")
    lines += ["", "## Timing", ""]
    for phase, secs in report.timing.items():
        lines.append(f"- {phase}: {secs:.3f}s")
    return "\n".join(lines) + "\n"


def parse_report(text):
    """Inverse of emit_report's JSON form."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"report is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or set(data) != set(_REPORT_FIELDS):
        raise InvalidInput("report JSON does not have the expected fields")
    return ClassificationReport(**data).validate()
