"""Command-line front end: word arithmetic, verification, sweeps.

Exit codes are a stable contract: 0 success, 1 a mathematical check
failed, 2 usage or parse error.  Reports are deterministic for a fixed
seed once timings are stripped (``--no-timings``), regardless of the
``--parallel`` level.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from .family import (
    DEFAULT_G_VALUES,
    DEFAULT_L_VALUES,
    DEFAULT_SEED,
    REPORT_SCHEMA,
    FamilyParams,
    VerificationReport,
    first_shuffle_failure,
    verify,
)
from .words import (
    Alphabet,
    WordSyntaxError,
    canonical_class,
    parse_word,
    render_word,
)

_CSV_COLUMNS = [
    "kind",
    "g",
    "l",
    "injective",
    "image_rank",
    "closed_form_ok",
    "shuffle_identities_ok",
    "block_letter_ok",
    "quotient_order",
    "reference_order",
    "reference_order_match",
    "hard_pass",
    "distinct_unoriented",
    "distinct_oriented",
    "all_nontrivial",
    "boundary_class",
]


def _parse_int_list(text: str) -> list[int]:
    """Comma-separated integers; ``a..b`` items expand to inclusive ranges."""
    items: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ".." in chunk:
            lo_text, hi_text = chunk.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            items.extend(range(lo, hi + 1))
        else:
            items.append(int(chunk))
    return items


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fgkit",
        description="Free-group word arithmetic and embedding-family verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_word = sub.add_parser("word", help="ad-hoc word computations")
    p_word.add_argument(
        "op", choices=["reduce", "invert", "concat", "cyclic", "canon"]
    )
    p_word.add_argument("texts", nargs="+", metavar="WORD")
    p_word.add_argument(
        "--alphabet",
        default="y1,y2,y3",
        help="comma-separated generator names (default y1,y2,y3)",
    )
    p_word.add_argument(
        "--oriented",
        action="store_true",
        help="canon: compare conjugacy classes with orientation",
    )

    p_verify = sub.add_parser("verify", help="verify one (g, l) instance")
    p_verify.add_argument("--g", type=int, required=True)
    p_verify.add_argument("--l", type=int, required=True)
    _add_report_flags(p_verify)

    p_sweep = sub.add_parser("sweep", help="verify a parameter grid")
    p_sweep.add_argument("--g-list", default=None, help="e.g. 2,4,6,8")
    p_sweep.add_argument("--l-list", default=None, help="e.g. 3..12 or 3,4,5")
    p_sweep.add_argument("--parallel", type=int, default=1)
    _add_report_flags(p_sweep)

    p_ident = sub.add_parser("identities", help="check the shuffle identities")
    p_ident.add_argument("--i-max", type=int, default=6)
    p_ident.add_argument("--j-max", type=int, default=6)
    p_ident.add_argument("--l-list", default=None, help="default 3..12")

    return parser


def _add_report_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=["json", "csv", "table"], default="json")
    p.add_argument("--out", default=None, metavar="PATH")
    p.add_argument("--no-timings", action="store_true")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "word":
            return _cmd_word(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_identities(args)
    except WordSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _cmd_word(args) -> int:
    names = tuple(n.strip() for n in args.alphabet.split(",") if n.strip())
    try:
        alphabet = Alphabet(names)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    op = args.op
    if op == "concat":
        if len(args.texts) < 2:
            print("error: concat needs at least two words", file=sys.stderr)
            return 2
    elif len(args.texts) != 1:
        print(f"error: {op} takes exactly one word", file=sys.stderr)
        return 2
    words = [parse_word(t, alphabet) for t in args.texts]
    if op == "reduce":
        result = words[0]
    elif op == "invert":
        result = words[0].inverse()
    elif op == "concat":
        result = words[0]
        for w in words[1:]:
            result = result * w
    elif op == "cyclic":
        core, _ = words[0].cyclic_reduce()
        result = core.to_word()
    else:  # canon
        result = canonical_class(words[0], oriented=args.oriented).to_word()
    print(render_word(result))
    return 0


def _validate_params(g: int, l: int) -> Optional[str]:
    if g % 2 != 0:
        return "g must be even"
    if g < 2:
        return "g must be >= 2"
    if l < 3:
        return "l must be ≥ 3"
    return None


def _cmd_verify(args) -> int:
    problem = _validate_params(args.g, args.l)
    if problem is not None:
        print(f"error: {problem}", file=sys.stderr)
        return 2
    report = verify(FamilyParams(args.g, args.l), seed=args.seed)
    for w in report.warnings:
        print(f"WARNING: g={args.g} l={args.l}: {w}", file=sys.stderr)
    include_timings = not args.no_timings
    if args.format == "json":
        text = json.dumps(report.to_json_dict(include_timings), indent=2) + "\n"
    elif args.format == "csv":
        text = _reports_csv([report], [])
    else:
        text = _reports_table([report], [])
    _emit(text, args.out)
    return 0 if report.hard_pass else 1


def _sweep_worker(job: tuple[int, int, int]) -> VerificationReport:
    g, l, seed = job
    return verify(FamilyParams(g, l), seed=seed)


def _run_grid(
    g_values: list[int], l_values: list[int], seed: int, parallel: int
) -> list[VerificationReport]:
    jobs = [(g, l, seed) for g in g_values for l in l_values]
    if parallel > 1:
        try:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=parallel) as pool:
                reports = list(pool.map(_sweep_worker, jobs))
        except (OSError, PermissionError) as exc:  # no subprocess support
            print(f"note: falling back to serial execution ({exc})", file=sys.stderr)
            reports = [_sweep_worker(job) for job in jobs]
    else:
        reports = [_sweep_worker(job) for job in jobs]
    # deterministic aggregation order regardless of execution order
    reports.sort(key=lambda r: (r.params.g, r.params.l))
    return reports


def _distinctness_rows(reports: list[VerificationReport]) -> list[dict]:
    by_g: dict[int, list[VerificationReport]] = {}
    for r in reports:
        by_g.setdefault(r.params.g, []).append(r)
    rows = []
    for g in sorted(by_g):
        group = sorted(by_g[g], key=lambda r: r.params.l)
        unoriented = [r.boundary_class for r in group]
        oriented = [r.boundary_class_oriented for r in group]
        rows.append(
            {
                "g": g,
                "l_values": [r.params.l for r in group],
                "distinct_unoriented": len(set(unoriented)) == len(unoriented),
                "distinct_oriented": len(set(oriented)) == len(oriented),
                "all_nontrivial": all(not c.is_identity() for c in unoriented),
            }
        )
    return rows


def _cmd_sweep(args) -> int:
    g_values = (
        _parse_int_list(args.g_list) if args.g_list is not None else list(DEFAULT_G_VALUES)
    )
    l_values = (
        _parse_int_list(args.l_list) if args.l_list is not None else list(DEFAULT_L_VALUES)
    )
    if not g_values:
        print("error: empty g list", file=sys.stderr)
        return 2
    if not l_values:
        print("error: empty l list", file=sys.stderr)
        return 2
    for g in g_values:
        for l in l_values:
            problem = _validate_params(g, l)
            if problem is not None:
                print(f"error: {problem}", file=sys.stderr)
                return 2
    if args.parallel < 1:
        print("error: --parallel must be >= 1", file=sys.stderr)
        return 2

    reports = _run_grid(g_values, l_values, args.seed, args.parallel)
    distinct = _distinctness_rows(reports)
    for r in reports:
        for w in r.warnings:
            print(
                f"WARNING: g={r.params.g} l={r.params.l}: {w}", file=sys.stderr
            )
    ok = all(r.hard_pass for r in reports) and all(
        row["distinct_unoriented"] and row["all_nontrivial"] for row in distinct
    )
    include_timings = not args.no_timings
    if args.format == "json":
        payload = {
            "schema": REPORT_SCHEMA,
            "seed": args.seed,
            "grid": {"g_values": g_values, "l_values": l_values},
            "reports": [r.to_json_dict(include_timings) for r in reports],
            "distinctness": distinct,
            "ok": ok,
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        text = _reports_csv(reports, distinct)
    else:
        text = _reports_table(reports, distinct)
    _emit(text, args.out)
    return 0 if ok else 1


def _cmd_identities(args) -> int:
    if args.i_max < 0 or args.j_max < 0:
        print("error: bounds must be >= 0", file=sys.stderr)
        return 2
    l_values = (
        _parse_int_list(args.l_list) if args.l_list is not None else list(DEFAULT_L_VALUES)
    )
    if not l_values:
        print("error: empty l list", file=sys.stderr)
        return 2
    if any(l < 3 for l in l_values):
        print("error: l must be ≥ 3", file=sys.stderr)
        return 2
    for l in l_values:
        failure = first_shuffle_failure(args.i_max, args.j_max, l)
        if failure is not None:
            branch, i, j = failure
            print(f"FAIL: branch={branch} i={i} j={j} l={l}")
            return 1
    print(
        f"OK: all identity branches hold for i<={args.i_max}, j<={args.j_max}, "
        f"l in {l_values}"
    )
    return 0


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _reports_csv(reports: list[VerificationReport], distinct: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        d = r.to_json_dict(include_timings=False)
        writer.writerow(
            {
                "kind": "report",
                "g": r.params.g,
                "l": r.params.l,
                "injective": d["injective"],
                "image_rank": d["image_rank"],
                "closed_form_ok": d["closed_form_ok"],
                "shuffle_identities_ok": d["shuffle_identities_ok"],
                "block_letter_ok": d["block_letter_ok"],
                "quotient_order": d["quotient_order"],
                "reference_order": d["reference_order"],
                "reference_order_match": d["reference_order_match"],
                "hard_pass": d["hard_pass"],
                "boundary_class": d["boundary_class"],
            }
        )
    for row in distinct:
        writer.writerow(
            {
                "kind": "distinctness",
                "g": row["g"],
                "l": ";".join(str(l) for l in row["l_values"]),
                "distinct_unoriented": row["distinct_unoriented"],
                "distinct_oriented": row["distinct_oriented"],
                "all_nontrivial": row["all_nontrivial"],
            }
        )
    return buf.getvalue()


def _reports_table(reports: list[VerificationReport], distinct: list[dict]) -> str:
    header = (
        f"{'g':>3} {'l':>3} {'inj':>4} {'rank':>5} {'closed':>7} "
        f"{'ident':>6} {'block':>6} {'quotient':>9} {'ref':>5} {'match':>6} {'pass':>5}"
    )
    lines = [header, "-" * len(header)]

    def yn(b: bool) -> str:
        return "yes" if b else "NO"

    for r in reports:
        q = "INF" if not r.quotient_finite else str(r.quotient_order)
        lines.append(
            f"{r.params.g:>3} {r.params.l:>3} {yn(r.injective):>4} "
            f"{r.image_rank:>5} {yn(r.closed_form_ok):>7} "
            f"{yn(r.shuffle_identities_ok):>6} {yn(r.block_letter_ok):>6} "
            f"{q:>9} {r.reference_order:>5} {yn(r.reference_order_match):>6} "
            f"{yn(r.hard_pass):>5}"
        )
    for row in distinct:
        ls = ",".join(str(l) for l in row["l_values"])
        lines.append(
            f"distinctness g={row['g']} over l={ls}: "
            f"unoriented={yn(row['distinct_unoriented'])} "
            f"oriented={yn(row['distinct_oriented'])} "
            f"nontrivial={yn(row['all_nontrivial'])}"
        )
    return "\n".join(lines) + "\n"


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
