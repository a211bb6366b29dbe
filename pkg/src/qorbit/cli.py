"""Command-line front end; one subcommand per library operation.

Exit codes: 0 on success, 1 on domain errors (the error case is named on
stderr), 2 on usage errors.  --json emits a single document, --csv emits
rows; identical invocations produce byte-identical output once timing is
excluded with --no-timing.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys

from ._version import __version__
from .census import primes_in_range, run_census, scaling_table
from .charsum import (
    ORBIT_INDEX_OFFSET,
    SubsetSpec,
    triple_charsum,
    triple_domain_size,
    tset_size,
    verify_tf_bound,
    weil_sum,
    wset_size,
)
from .dynamics import QuadPoly, orbit_shape
from .errors import QOrbitError
from .ff import new_field
from .stability import stability_oracle, stability_test

PER_TRIPLE_HEADER = "p,a,b,c,verdict,witness_index,mu,lambda,s,t_f,orbit_size"


def _parse_primes(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return primes_in_range(int(lo), int(hi))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse prime list {text!r}") from exc


def _parse_subset(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse index list {text!r}") from exc


def _add_output_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=("human", "json", "csv"), default="human",
                    help="output format (default human)")
    sp.add_argument("--json", dest="format", action="store_const", const="json",
                    help="shorthand for --format json")
    sp.add_argument("--csv", dest="format", action="store_const", const="csv",
                    help="shorthand for --format csv")
    sp.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    sp.add_argument("--no-timing", action="store_true", help="omit timing fields from output")


def _add_poly_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int, required=True, help="odd prime modulus")
    sp.add_argument("--a", type=int, required=True, help="leading coefficient (nonzero mod p)")
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)


def _poly(args: argparse.Namespace) -> QuadPoly:
    return QuadPoly(new_field(args.p), args.a, args.b, args.c)


def _write_text(args: argparse.Namespace, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _record_csv(record: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(record.keys())
    w.writerow([_csv_cell(v) for v in record.values()])
    return buf.getvalue()


def _emit(args: argparse.Namespace, record: dict, human_lines: list[str]) -> None:
    if args.format == "json":
        text = json.dumps(record, indent=2) + "\n"
    elif args.format == "csv":
        text = _record_csv(record)
    else:
        text = "\n".join(human_lines) + "\n"
    _write_text(args, text)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_orbit(args) -> int:
    f = _poly(args)
    shape = orbit_shape(f)
    record = {
        "p": args.p, "a": f.a, "b": f.b, "c": f.c, "gamma": f.gamma,
        "mu": shape.mu, "lambda": shape.lam, "s": shape.s,
        "t_f": shape.t_f, "orbit_size": shape.orbit_size,
    }
    human = [
        f"f = {f}, gamma = {f.gamma}",
        f"mu = {shape.mu}, lambda = {shape.lam}, s = {shape.s}, "
        f"t_f = {shape.t_f}, orbit_size = {shape.orbit_size}",
    ]
    _emit(args, record, human)
    return 0


def _cmd_stab(args) -> int:
    f = _poly(args)
    v = stability_test(f)
    record = {
        "p": args.p, "a": f.a, "b": f.b, "c": f.c,
        "status": v.status.value, "witness_index": v.witness_index,
        "witness_value": v.witness_value, "scanned": v.scanned,
    }
    line = v.status.value
    if v.witness_index is not None:
        what = "-f(gamma)" if v.witness_index == 1 else f"f^({v.witness_index})(gamma)"
        line += f" (witness: {what} = {v.witness_value})"
    human = [line, f"scanned {v.scanned} adjusted-orbit elements"]
    _emit(args, record, human)
    return 0


def _cmd_oracle(args) -> int:
    f = _poly(args)
    rep = stability_oracle(f, args.depth)
    record = {
        "p": args.p, "a": f.a, "b": f.b, "c": f.c, "depth": rep.depth,
        "reducible_at": rep.reducible_at, "all_irreducible": rep.all_irreducible,
    }
    human = [
        f"AllIrreducibleUpToDepth({rep.depth})" if rep.all_irreducible
        else f"ReducibleAt({rep.reducible_at})"
    ]
    _emit(args, record, human)
    return 0


def _cmd_tset(args) -> int:
    f = _poly(args)
    rep = tset_size(f, args.k, workers=args.threads)
    record = {"p": args.p, "a": f.a, "b": f.b, "c": f.c, **rep.to_record()}
    human = [
        f"#T_{args.p}({args.k}) = {rep.direct_count} (direct scan)",
        f"identity: numerator {rep.identity_numerator} / 2^{args.k} = {rep.identity_count}"
        + (f" with {rep.zero_terms} zero terms" if rep.zero_terms else ""),
        f"q/2^K = {rep.q_over_2k}, Weil error budget {rep.weil_error_budget:.3f}, "
        f"within budget: {rep.within_weil_budget}",
    ]
    _emit(args, record, human)
    return 0


def _cmd_weil(args) -> int:
    f = _poly(args)
    rep = weil_sum(f, SubsetSpec(tuple(args.ks)), workers=args.threads)
    record = {"p": args.p, "a": f.a, "b": f.b, "c": f.c, **rep.to_record()}
    human = [
        f"sum_x chi(prod f^(k)(x)) over k in {list(rep.indices)} = {rep.sum}",
        f"degree {rep.degree}, Weil budget {rep.weil_budget:.3f}, holds: {rep.bound_holds}",
    ]
    _emit(args, record, human)
    return 0


def _cmd_bound(args) -> int:
    f = _poly(args)
    rep = verify_tf_bound(f, workers=args.threads)
    record = rep.to_record()
    human = [
        f"t_f = {rep.t_f}, K* = {rep.k_star}, #T_{rep.p}(K*) = {rep.tset_count}",
        f"t_f - 1 <= #T: {rep.inequality_holds}",
        f"all critical values f^(n)(gamma), n < t_f, lie in T: {rep.membership_ok}",
    ]
    _emit(args, record, human)
    return 0


def _cmd_wset(args) -> int:
    ctx = new_field(args.p)
    count = wset_size(ctx, args.k, offset=args.offset, workers=args.threads)
    record = {
        "p": args.p, "K": args.k, "offset": args.offset,
        "direct_count": count, "domain_size": triple_domain_size(ctx),
    }
    human = [f"#W_{args.p}({args.k}) = {count} of {triple_domain_size(ctx)} triples"]
    _emit(args, record, human)
    return 0


def _cmd_wsum(args) -> int:
    ctx = new_field(args.p)
    rep = triple_charsum(ctx, SubsetSpec(tuple(args.ks)), offset=args.offset, workers=args.threads)
    record = {**rep.to_record(), "offset": args.offset, "trivial_sum": triple_domain_size(ctx)}
    human = [
        f"triple sum over subset {list(rep.indices)} = {rep.sum}",
        f"|sum| / p^(5/2) = {rep.ratio_q52:.6f} (recorded, not asserted)",
        f"trivial (empty-subset) sum = {triple_domain_size(ctx)}",
    ]
    _emit(args, record, human)
    return 0


def _census_row_writer(fh, p: int):
    def sink(rows):
        parts = []
        for a, b, c, verdict, witness, mu, lam, s, t_f, osz in rows:
            parts.append(
                f"{p},{a},{b},{c},{verdict},"
                f"{'' if witness is None else witness},"
                f"{'' if mu is None else mu},{'' if lam is None else lam},"
                f"{'' if s is None else s},{'' if t_f is None else t_f},"
                f"{'' if osz is None else osz}\n"
            )
        fh.write("".join(parts))

    return sink


def _cmd_census(args) -> int:
    ctx = new_field(args.p)
    mode = "sample" if args.sample else "exhaustive"
    sinks = []
    with contextlib.ExitStack() as stack:
        if args.format == "csv":
            fh = stack.enter_context(open(args.out, "w")) if args.out else sys.stdout
            fh.write(PER_TRIPLE_HEADER + "\n")
            sinks.append(_census_row_writer(fh, ctx.p))
        if args.per_triple and args.per_triple != args.out:
            fh = stack.enter_context(open(args.per_triple, "w"))
            fh.write(PER_TRIPLE_HEADER + "\n")
            sinks.append(_census_row_writer(fh, ctx.p))
        sink = None
        if sinks:
            def sink(rows):
                for write in sinks:
                    write(rows)

        report = run_census(
            ctx,
            mode=mode,
            sample_size=args.sample,
            seed=args.seed,
            workers=args.threads,
            row_sink=sink,
        )
    if args.plot:
        from . import viz

        viz.save_tf_histogram(report, args.plot)
    if args.format == "csv":
        return 0
    record = report.to_json_dict(include_timing=not args.no_timing)
    human = [
        f"census p={report.p} {report.mode}: total={report.total}",
        f"stable={report.stable_count} not_stable={report.not_stable_count} "
        f"indeterminate={report.indeterminate_count}",
        f"max t_f = {report.max_tf}"
        + (f" at (a,b,c) = {report.argmax_f}" if report.argmax_f else ""),
        f"ratio_34 = {report.ratio_34:.4f}, ratio_12 = {report.ratio_12:.4f}",
        "t_f histogram: " + " ".join(f"{k}:{v}" for k, v in sorted(report.tf_histogram.items())),
    ]
    if report.indeterminate_triples:
        human.append("indeterminate triples: " + " ".join(str(t) for t in report.indeterminate_triples))
    if not args.no_timing:
        human.append(f"elapsed {report.elapsed:.3f}s")
    _emit(args, record, human)
    return 0


def _cmd_scaling(args) -> int:
    table = scaling_table(args.primes, workers=args.threads, ratio_34_bound=args.bound)
    if args.plot:
        from . import viz

        viz.save_scaling_figure(table, args.plot)
    if args.format == "csv":
        _write_text(args, table.csv_text())
        return 0
    if args.format == "json":
        record = {
            "version": __version__,
            "ratio_34_bound": table.ratio_34_bound,
            "max_ratio_12": table.max_ratio_12,
            "violations": table.violations,
            "rows": [
                {"p": r.p, "stable_count": r.stable_count, "max_tf": r.max_tf,
                 "ratio_34": r.ratio_34, "ratio_12": r.ratio_12}
                for r in table.rows
            ],
        }
        _write_text(args, json.dumps(record, indent=2) + "\n")
        return 0
    lines = [f"{'p':>6} {'S_p':>10} {'max_tf':>7} {'ratio_34':>9} {'ratio_12':>9}"]
    for r in table.rows:
        lines.append(f"{r.p:>6} {r.stable_count:>10} {r.max_tf:>7} {r.ratio_34:>9.4f} {r.ratio_12:>9.4f}")
    lines.append(f"max ratio_12 = {table.max_ratio_12:.4f}")
    lines.append(
        f"violations of max_tf <= {table.ratio_34_bound:g} p^(3/4): "
        + (", ".join(map(str, table.violations)) if table.violations else "none")
    )
    _write_text(args, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qorbit",
        description="Critical orbits, stability, and character sums of quadratic maps over F_p.",
        allow_abbrev=False,
    )
    parser.add_argument("--version", action="version", version=f"qorbit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, func, poly: bool = False, threads: bool = False):
        sp = sub.add_parser(name, help=help_, allow_abbrev=False)
        if poly:
            _add_poly_flags(sp)
        if threads:
            sp.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
        _add_output_flags(sp)
        sp.set_defaults(func=func)
        return sp

    add("orbit", "rho-shape of the critical sequence", _cmd_orbit, poly=True)
    add("stab", "square-scan stability verdict", _cmd_stab, poly=True)

    sp = add("oracle", "irreducibility of the first iterates", _cmd_oracle, poly=True)
    sp.add_argument("--depth", type=int, default=5, help="iterates to test (default 5)")

    sp = add("tset", "size of T_p(K) by scan and by product identity", _cmd_tset,
             poly=True, threads=True)
    sp.add_argument("--k", type=int, required=True, help="window length K")

    sp = add("weil", "character sum over a subset of iterate indices", _cmd_weil,
             poly=True, threads=True)
    sp.add_argument("--ks", type=_parse_subset, required=True,
                    help="comma list of window indices, e.g. 1,3,4")

    add("bound", "check t_f - 1 <= #T_p(K*) for a stable polynomial", _cmd_bound,
        poly=True, threads=True)

    sp = add("census", "classify all triples (a,b,c) over F_p", _cmd_census, threads=True)
    sp.add_argument("--p", type=int, required=True, help="odd prime modulus")
    sp.add_argument("--sample", type=int, metavar="N", help="sample N triples instead of scanning all")
    sp.add_argument("--seed", type=int, default=1, help="sample-mode PRNG seed (default 1)")
    sp.add_argument("--per-triple", metavar="FILE", help="also write one CSV row per triple to FILE")
    sp.add_argument("--plot", metavar="FILE", help="render the t_f histogram to FILE (PNG)")

    sp = add("scaling", "census summary rows across primes", _cmd_scaling, threads=True)
    sp.add_argument("--primes", type=_parse_primes, required=True,
                    help="comma list (3,5,7) or range (3..199) of odd primes")
    sp.add_argument("--bound", type=float, default=10.0,
                    help="ratio_34 violation threshold (default 10)")
    sp.add_argument("--plot", metavar="FILE", help="render the scaling figure to FILE (PNG)")

    sp = add("wset", "size of W_p(K) over coefficient triples", _cmd_wset, threads=True)
    sp.add_argument("--p", type=int, required=True, help="odd prime modulus")
    sp.add_argument("--k", type=int, required=True, help="window length K")
    sp.add_argument("--offset", type=int, default=ORBIT_INDEX_OFFSET,
                    help="orbit index offset in F_k = f^(k+offset)(gamma)")

    sp = add("wsum", "character sum over coefficient triples", _cmd_wsum, threads=True)
    sp.add_argument("--p", type=int, required=True, help="odd prime modulus")
    sp.add_argument("--ks", type=_parse_subset, required=True,
                    help="comma list of orbit indices, e.g. 1,2")
    sp.add_argument("--offset", type=int, default=ORBIT_INDEX_OFFSET,
                    help="orbit index offset in F_k = f^(k+offset)(gamma)")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QOrbitError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
