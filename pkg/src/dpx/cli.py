"""Command line front end.

Machine output goes to stdout, progress to stderr, and every command is
deterministic for fixed inputs and flags, including under parallelism.
Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 resource budget exceeded.
"""

import argparse
import json
import os
import sys
from dataclasses import asdict

from .core import closure, read_cayley, write_cayley_text
from .errors import (
    BudgetExceeded,
    ConstructionInconsistent,
    InadmissibleTuple,
    InvalidInput,
    InvalidTuple,
    NotAGroup,
)
from .oracle import cross_validate, resolve_seed_budget
from .products import (
    ExactProductGroup,
    ParameterTuple,
    admissible_tuples,
    construct_group,
    gap_presentation,
    presentation_relators,
    strata_counts,
    structural_checks,
    verify_cores,
    verify_exact_product,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


def _progress(done, total):
    print(f"progress: {done}/{total} chunks", file=sys.stderr, flush=True)


def _write_output(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_tuple_flag(text, m, n):
    """Parse the --tuple k=v list; m1 and n1 are mandatory, rest default 0."""
    data = {"m": m, "n": n}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise InvalidTuple(f"expected key=value, got {part!r}")
        try:
            data[key.strip()] = int(value)
        except ValueError:
            raise InvalidTuple(f"{key.strip()} must be an integer, "
                               f"got {value!r}") from None
    return ParameterTuple.from_dict(data)


def _resolve_workers(value):
    if value is None:
        return os.cpu_count() or 1
    if value < 1:
        raise InvalidInput("workers must be >= 1")
    return value


def cmd_enumerate(args):
    tuples = admissible_tuples(args.m, args.n)
    counts = strata_counts(tuples, args.m, args.n)
    summary = " ".join(f"{m1},{n1}={cnt}"
                       for (m1, n1), cnt in sorted(counts.items()))
    print(f"strata: {summary}", file=sys.stderr)
    if args.format == "json":
        text = json.dumps([asdict(p) for p in tuples], sort_keys=True,
                          indent=2) + "\n"
    else:
        lines = [
            f"# Admissible tuples for (m, n) = ({args.m}, {args.n})",
            "",
            "| m1 | n1 | count |",
            "|---:|---:|------:|",
        ]
        lines += [f"| {m1} | {n1} | {cnt} |"
                  for (m1, n1), cnt in sorted(counts.items())]
        lines += [
            "",
            "| # | m1 | n1 | a | b | c | r | s | t |",
            "|--:|---:|---:|--:|--:|--:|--:|--:|--:|",
        ]
        for i, p in enumerate(tuples):
            vals = (p.m1, p.n1, p.a, p.b, p.c, p.r, p.s, p.t)
            lines.append("| " + " | ".join(str(v) for v in (i,) + vals) + " |")
        text = "\n".join(lines) + "\n"
    _write_output(text, args.output)
    return EXIT_OK


def cmd_construct(args):
    params = _parse_tuple_flag(args.tuple, args.m, args.n)
    epg = construct_group(params)
    if args.emit == "cayley":
        text = write_cayley_text(epg.group)
    elif args.emit == "gap":
        text = gap_presentation(params)
    else:
        text = json.dumps({
            "tuple": asdict(params),
            "order": int(epg.group.order),
            "generators": {"x": epg.x, "y": epg.y, "z": epg.z, "w": epg.w},
        }, sort_keys=True, indent=2) + "\n"
    _write_output(text, args.output)
    return EXIT_OK


def _named_checks(epg):
    """The full check list as (name, passed, detail) rows."""
    rows = [("order_is_4mn",
             epg.group.order == 4 * epg.params.m * epg.params.n, "")]
    for name, check in presentation_relators(epg.params):
        rows.append((f"relation[{name}]",
                     check(epg.group, epg.x, epg.y, epg.z, epg.w), ""))
    vp = verify_exact_product(epg)
    rows.append(("exact_product", vp.passed, "; ".join(vp.diagnostics)))
    vc = verify_cores(epg)
    rows.append(("cores", vc.passed, "; ".join(vc.diagnostics)))
    rows.extend((name, ok, "") for name, ok in structural_checks(epg))
    return rows


def cmd_verify(args):
    params = _parse_tuple_flag(args.tuple, args.m, args.n)
    epg = construct_group(params)
    if args.from_cayley:
        try:
            G = read_cayley(args.from_cayley)
        except NotAGroup as exc:
            print(f"table_is_group: fail ({exc})")
            return EXIT_VERIFY
        if G.order != 4 * params.m * params.n:
            print(f"table_is_group: fail (order {G.order}, "
                  f"expected {4 * params.m * params.n})")
            return EXIT_VERIFY
        # same element indexing as the constructor's normal forms
        epg = ExactProductGroup(G, params, epg.x, epg.y, epg.z, epg.w,
                                closure(G, [epg.x, epg.y]),
                                closure(G, [epg.z, epg.w]))
    print("table_is_group: pass")
    failures = 0
    for name, ok, detail in _named_checks(epg):
        if ok:
            print(f"{name}: pass")
        else:
            failures += 1
            print(f"{name}: fail" + (f" ({detail})" if detail else ""))
    return EXIT_OK if failures == 0 else EXIT_VERIFY


def _run_crosscheck(args):
    workers = _resolve_workers(args.workers)
    budget = resolve_seed_budget(args.budget)
    iso_budget = getattr(args, "iso_budget", None)
    if iso_budget is not None and iso_budget < 1:
        raise InvalidInput("iso budget must be >= 1")
    return cross_validate(args.m, args.n, workers=workers, budget=budget,
                          iso_budget=iso_budget, progress=_progress)


def cmd_oracle(args):
    cr = _run_crosscheck(args)
    text = json.dumps(cr.sweep_json(), sort_keys=True, indent=2) + "\n"
    _write_output(text, args.output)
    return EXIT_OK


def cmd_crosscheck(args):
    cr = _run_crosscheck(args)
    sys.stdout.write(json.dumps(cr.sweep_json(), sort_keys=True, indent=2)
                     + "\n")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(cr.to_json(), sort_keys=True, indent=2) + "\n")
    return EXIT_OK if cr.passed else EXIT_VERIFY


def _add_mn(sub):
    sub.add_argument("-m", type=int, required=True,
                     help="rotation order of the second factor (odd, >= 3)")
    sub.add_argument("-n", type=int, required=True,
                     help="rotation order of the first factor (odd, >= 3)")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dpx",
        description="Exact products of two dihedral groups of twice-odd "
                    "order: enumerate, construct, verify, sweep, crosscheck.")
    subs = ap.add_subparsers(dest="command", required=True)

    p = subs.add_parser("enumerate", help="list the admissible tuples")
    _add_mn(p)
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--output", default=None, help="write to a file")
    p.set_defaults(fn=cmd_enumerate)

    p = subs.add_parser("construct", help="build one group and emit it")
    _add_mn(p)
    p.add_argument("--tuple", required=True,
                   help="m1=..,n1=..[,a=..,b=..,c=..,r=..,s=..,t=..]")
    p.add_argument("--emit", choices=("cayley", "gap", "json"),
                   default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(fn=cmd_construct)

    p = subs.add_parser("verify", help="run the named check battery")
    _add_mn(p)
    p.add_argument("--tuple", required=True)
    p.add_argument("--from-cayley", default=None, metavar="FILE",
                   help="check this Cayley table instead of the "
                        "freshly constructed one")
    p.set_defaults(fn=cmd_verify)

    p = subs.add_parser("oracle", help="run the brute-force seed sweep")
    _add_mn(p)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--budget", type=int, default=None,
                   help="seed budget (default 2e8; DPX_SEED_BUDGET overrides)")
    p.add_argument("--output", default=None)
    p.set_defaults(fn=cmd_oracle)

    p = subs.add_parser("crosscheck",
                        help="sweep plus two-sided family comparison")
    _add_mn(p)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--iso-budget", type=int, default=None,
                   dest="iso_budget")
    p.add_argument("--report", default=None, metavar="FILE",
                   help="write the full cross-check report here")
    p.set_defaults(fn=cmd_crosscheck)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidInput, InvalidTuple, InadmissibleTuple, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConstructionInconsistent as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
