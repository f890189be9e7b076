"""Command-line front end: ``ncg <subcommand> ...``.

Exit status is 0 when every executed check passes (or nothing was checked),
1 when at least one check failed, and 2 on usage or I/O errors.  Data goes to
files or stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys

from . import catalog as cat
from . import harness
from .errors import NCGError
from .graph import CLIQUE_CAP, ISO_CAP, are_isomorphic, fingerprint, max_clique, multipartite_parts, noncommuting_graph
from .harness import FAIL, CheckResult
from .structure import center, p_group_profile

CHECK_IDS = ("lemma2.1", "lemma2.4", "lemma2.5", "lemma2.6", "prop2.7", "lemma2.8", "frobenius", "theorem1.2")


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _default_jobs():
    try:
        return max(1, int(os.environ.get("NCG_JOBS", "1")))
    except ValueError:
        return 1


def _add_selection(p, *, families=True):
    p.add_argument("--group", action="append", default=[], help="family:param, named group, or catalog name (repeatable)")
    p.add_argument("--catalog", action="append", default=[], metavar="PATH", help="JSONL catalog (repeatable)")
    if families:
        p.add_argument("--families", default=None, help="'all' (or 'builtin') or a comma-separated family list")
    p.add_argument("--max-order", type=_positive, default=64)


def _add_caps(p):
    p.add_argument("--clique-cap", type=_positive, default=CLIQUE_CAP)
    p.add_argument("--iso-cap", type=_positive, default=ISO_CAP)
    p.add_argument("--jobs", type=_positive, default=_default_jobs())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncg", description="Non-commuting graph toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-catalog", help="write the built-in catalog as JSONL")
    p.add_argument("--families", default="all")
    p.add_argument("--max-order", type=_positive, default=64)
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--with-invariants", action="store_true")

    p = sub.add_parser("ingest", help="validate, merge and dedupe catalogs")
    p.add_argument("--catalog", action="append", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--report", metavar="PATH")

    p = sub.add_parser("graph", help="build and export a non-commuting graph")
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", action="append", default=[], metavar="PATH")
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--clique-cap", type=_positive, default=CLIQUE_CAP)

    p = sub.add_parser("check", help="run one check over a set of groups")
    p.add_argument("check_id", choices=CHECK_IDS)
    _add_selection(p)
    _add_caps(p)
    p.add_argument("--report", metavar="PATH")

    p = sub.add_parser("classify", help="classify solvable AC-groups into H1..H5")
    _add_selection(p)
    _add_caps(p)
    p.add_argument("--report", metavar="PATH")

    p = sub.add_parser("scan-pairs", help="find graph-isomorphic pairs and check their orders")
    _add_selection(p)
    _add_caps(p)
    p.add_argument("--report", metavar="PATH")

    p = sub.add_parser("profile", help="print the p-group profile and compatible center orders")
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", action="append", default=[], metavar="PATH")
    return parser


def _select_groups(args):
    catalogs = [cat.read_catalog(path) for path in args.catalog]
    groups = {}
    # with explicit --group names, catalogs only serve name resolution
    if not args.group:
        for G in (G for c in catalogs for G in c):
            if G.order <= args.max_order:
                groups[G.name] = G
    for name in args.group:
        G = cat.resolve_group(name, catalogs)
        groups[G.name] = G
    families = getattr(args, "families", None)
    if families is None and not args.catalog and not args.group:
        families = "all"
    if families is not None:
        fams = None if families in ("all", "builtin") else [f.strip() for f in families.split(",") if f.strip()]
        for G in cat.builtin_catalog(args.max_order, fams):
            groups.setdefault(G.name, G)
    return [groups[k] for k in sorted(groups)]


def _recheck(args, command, names):
    parts = ["ncg", *command.split()]
    for path in args.catalog:
        parts += ["--catalog", path]
    for name in names:
        parts += ["--group", name]
    return " ".join(shlex.quote(p) for p in parts)


def _emit(rows, args, command_for):
    for row in rows:
        if row.status == FAIL:
            row.witness["recheck"] = _recheck(args, command_for(row), row.subjects)
    text = "\n".join(harness.report_lines(rows)) + "\n"
    if getattr(args, "report", None):
        with open(args.report, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    summary = harness.summarize(rows)
    print(f"pass={summary['pass']} fail={summary['fail']} not_applicable={summary['not_applicable']}", file=sys.stderr)
    return 1 if summary["fail"] else 0


def _pair_rows(groups, args, *, pgroup_only):
    report = harness.scan_pairs(groups, iso_cap=args.iso_cap, pgroup_only=pgroup_only, jobs=args.jobs)
    rows = list(report.rows)
    for s in report.skipped:
        if "pair" in s:
            rows.append(CheckResult("skipped", tuple(s["pair"]), harness.NA, {"reason": s["reason"]}))
    return report, rows


def cmd_check(args):
    groups = _select_groups(args)
    cid = args.check_id
    if cid == "theorem1.2":
        _, rows = _pair_rows(groups, args, pgroup_only=True)
        return _emit(rows, args, lambda r: "check theorem1.2")
    if cid == "lemma2.1":
        report, _ = _pair_rows(groups, args, pgroup_only=False)
        by_name = {G.name: G for G in groups}
        rows = []
        for pair in report.pairs:
            G, H = (by_name[n] for n in pair["groups"])
            iso = are_isomorphic(noncommuting_graph(G), noncommuting_graph(H), cap=args.iso_cap)
            rows.append(harness.check_lemma_2_1(G, H, iso))
            rows.append(harness.check_lemma_2_1(H, G, iso.inverse()))
        rows.sort(key=lambda r: (r.subjects, r.check_id))
        return _emit(rows, args, lambda r: "check lemma2.1")
    rows = harness.run_sweep(cid, groups, jobs=args.jobs, clique_cap=args.clique_cap)
    return _emit(rows, args, lambda r: f"check {cid}")


def cmd_classify(args):
    rows = harness.run_sweep("classify", _select_groups(args), jobs=args.jobs, clique_cap=args.clique_cap)
    return _emit(rows, args, lambda r: "classify")


def cmd_scan_pairs(args):
    report, rows = _pair_rows(_select_groups(args), args, pgroup_only=False)
    for cls in report.classes:
        print("iso-class: " + ", ".join(cls), file=sys.stderr)
    return _emit(rows, args, lambda r: "scan-pairs")


def cmd_graph(args):
    catalogs = [cat.read_catalog(p) for p in args.catalog]
    G = cat.resolve_group(args.group, catalogs)
    g = noncommuting_graph(G)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(g.to_dot())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(g.to_json(), fh, sort_keys=True)
            fh.write("\n")
    info = {
        "group": G.name,
        "order": G.order,
        "center": center(G).order,
        "vertices": g.n,
        "edges": g.edge_count,
        "parts": multipartite_parts(g),
        "fingerprint": fingerprint(g).to_dict(),
    }
    if g.n <= args.clique_cap:
        info["clique_number"] = max_clique(g, cap=args.clique_cap)
    print(json.dumps(info, sort_keys=True))
    return 0


def cmd_profile(args):
    catalogs = [cat.read_catalog(p) for p in args.catalog]
    G = cat.resolve_group(args.group, catalogs)
    prof = p_group_profile(G)
    out = {
        "group": G.name,
        "p": prof.p,
        "n": prof.n,
        "r": prof.r,
        "a": list(prof.a_list),
        "u": prof.u,
        "compatible_center_orders": harness.compatible_center_orders(prof),
    }
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_build_catalog(args):
    fams = None if args.families in ("all", "builtin") else [f.strip() for f in args.families.split(",")]
    groups = cat.builtin_catalog(args.max_order, fams)
    n = cat.write_catalog(groups, args.out, with_invariants=args.with_invariants)
    print(f"wrote {n} groups to {args.out}", file=sys.stderr)
    return 0


def cmd_ingest(args):
    groups = {}
    for path in args.catalog:
        for G in cat.read_catalog(path):
            groups.setdefault(G.name, G)
    kept, flagged = cat.dedupe([groups[k] for k in sorted(groups)])
    n = cat.write_catalog(kept, args.out, with_invariants=True)
    lines = [json.dumps({"suspected_duplicate": list(pair)}) for pair in flagged]
    if args.report:
        with open(args.report, "w") as fh:
            fh.write("".join(line + "\n" for line in lines))
    for line in lines:
        print(line, file=sys.stderr)
    print(f"wrote {n} groups to {args.out}; {len(flagged)} suspected duplicate pairs", file=sys.stderr)
    return 0


COMMANDS = {
    "build-catalog": cmd_build_catalog,
    "ingest": cmd_ingest,
    "graph": cmd_graph,
    "check": cmd_check,
    "classify": cmd_classify,
    "scan-pairs": cmd_scan_pairs,
    "profile": cmd_profile,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return COMMANDS[args.command](args)
    except (NCGError, OSError) as exc:
        print(f"ncg: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
