"""Command-line surface for batch construction, verification, and sweeps.

Subcommands
    construct   build a Bose-Chowla set and dump it with its tuple
    verify      full-range sweep + B_h + Parseval + character-sum cross-check
    compose     binary-expansion composition with its certified bound
    pipeline    prime-gap + subset-trimming construction
    baseline    roots-of-unity or seeded random reference tuples
    sweep       sweep a tuple file over a nu range

All machine output is deterministic: identical arguments (including
--seed, default 0) produce byte-identical JSON, with no timestamps.
Exit codes: 0 success, 1 verification/assertion failure, 2 usage error,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from . import __version__
from .assemble import binary_compose, next_prime_gap, prime_gap_construct
from .bounds import (BoundReport, erdos_renyi_bound, katz_bound,
                     montgomery_reference, random_unimodular_baseline,
                     roots_of_unity_tuple, turan_lower)
from .errors import BudgetError
from .sidon import bose_chowla, character_sum_direct, field_context, \
    unimodular_tuple, verify_bh
from .sweeps import (AngleTuple, abs_power_sum, eval_power_sum,
                     parseval_residual, per_nu_csv_rows, range_max_uniform,
                     sweep_dft, sweep_naive)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

#: Character-sum cross-checks enumerate every nu up to this period length
#: and fall back to a deterministic sample beyond it.
_EQ_IDENTITY_FULL_LIMIT = 10 ** 4
_EQ_IDENTITY_SAMPLES = 1000


@dataclass
class RunConfig:
    """Echo of the effective run parameters, embedded in every JSON dump."""

    command: str
    q: Optional[int] = None
    h: Optional[int] = None
    n: Optional[int] = None
    m: Optional[int] = None
    range: Optional[str] = None
    kind: Optional[str] = None
    seed: int = 0
    trials: Optional[int] = None
    engine: Optional[str] = None
    threads: int = 1
    budget_table: Optional[int] = None
    budget_ops: Optional[int] = None
    format: str = "json"


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise ValueError(f"range must look like a:b, got {text!r}") from None
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(config: RunConfig, result: dict, out: Optional[str]):
    payload = {"config": asdict(config), "result": result}
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


def _dump_csv_rows(rows, out: Optional[str]):
    _emit("\n".join(rows) + "\n", out)


def _load_tuple(path: str) -> AngleTuple:
    with open(path) as fh:
        return AngleTuple.from_dict(json.load(fh))


# ----------------------------------------------------------------------
# Subcommand bodies (each returns a process exit code)
# ----------------------------------------------------------------------

def cmd_construct(args) -> int:
    config = RunConfig(command="construct", q=args.q, h=args.h,
                       budget_table=args.budget_table, format=args.format)
    s = bose_chowla(args.q, args.h, budget=args.budget_table)
    result = {"sidon": s.as_dict(),
              "tuple": unimodular_tuple(s).as_dict(),
              "field_context": field_context(s).as_dict()}
    _dump_json(config, result, args.out)
    return EXIT_OK


def _character_identity_gap(s, tup) -> tuple[float, int]:
    """Largest |character sum - power sum| over the checked nu values and
    how many nu were checked."""
    ctx = field_context(s)
    m = s.modulus
    if m - 1 <= _EQ_IDENTITY_FULL_LIMIT:
        nus = range(1, m)
    else:
        step = (m - 1) // _EQ_IDENTITY_SAMPLES
        nus = range(1, m, max(step, 1))
    worst = 0.0
    count = 0
    for nu in nus:
        gap = abs(character_sum_direct(ctx, s.q, nu) - eval_power_sum(tup, nu))
        worst = max(worst, gap)
        count += 1
    return worst, count


def cmd_verify(args) -> int:
    config = RunConfig(command="verify", q=args.q, h=args.h,
                       engine=args.engine, threads=args.threads,
                       budget_table=args.budget_table,
                       budget_ops=args.budget_ops, format=args.format)
    s = bose_chowla(args.q, args.h, budget=args.budget_table)
    tup = unimodular_tuple(s)
    m = s.modulus
    bound = katz_bound(args.q, args.h)

    engines = {}
    if args.engine in ("dft", "both"):
        engines["dft"] = sweep_dft(tup)
    if args.engine in ("naive", "both"):
        engines["naive"] = sweep_naive(tup, 1, m - 2,
                                       op_budget=args.budget_ops)
    sweep = engines.get("dft") or engines["naive"]
    engines_agree = True
    if len(engines) == 2:
        engines_agree = (
            abs(engines["dft"].max_abs - engines["naive"].max_abs) <= 1e-8
            and engines["dft"].argmax_nu == engines["naive"].argmax_nu
        )

    bh = verify_bh(s)
    residual = parseval_residual(tup)
    identity_gap, identity_count = _character_identity_gap(s, tup)

    checks = {
        "bound": sweep.max_abs <= bound + 1e-6,
        "bh": bh.ok,
        "parseval": residual <= 1e-9,
        "character_identity": identity_gap <= 1e-9,
        "engines_agree": engines_agree,
    }
    result = {
        "q": args.q, "h": args.h, "M": m,
        "sweeps": {name: r.as_dict() for name, r in engines.items()},
        "max_abs": sweep.max_abs,
        "argmax_nu": sweep.argmax_nu,
        "bound": bound,
        "bh": bh.as_dict(),
        "parseval_residual": residual,
        "character_identity_gap": identity_gap,
        "character_identity_checked": identity_count,
        "checks": checks,
        "pass": all(checks.values()),
    }
    _dump_json(config, result, args.out)
    return EXIT_OK if result["pass"] else EXIT_FAIL


def cmd_compose(args) -> int:
    config = RunConfig(command="compose", n=args.n, h=args.h,
                       budget_table=args.budget_table,
                       budget_ops=args.budget_ops, format=args.format)
    tup, plan = binary_compose(args.n, args.h, budget=args.budget_table)
    nu_end = args.n ** args.h
    sweep = sweep_naive(tup, 1, nu_end, op_budget=args.budget_ops)
    ok = sweep.max_abs <= plan.certified_bound
    report = BoundReport(
        n=args.n, m_or_range=f"1:{nu_end}", construction="compose",
        measured_max=sweep.max_abs, katz=None,
        turan_lower=turan_lower(args.n, 1),
        er_bound=erdos_renyi_bound(args.n, nu_end),
        mont_ref=montgomery_reference(args.n, args.h),
    )
    if args.format == "csv":
        _dump_csv_rows([BoundReport.CSV_HEADER, report.csv_row()], args.out)
    else:
        result = {"plan": plan.as_dict(), "tuple": tup.as_dict(),
                  "sweep": sweep.as_dict(),
                  "certified_bound": plan.certified_bound,
                  "bound_report": report.as_dict(), "pass": ok}
        _dump_json(config, result, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_pipeline(args) -> int:
    config = RunConfig(command="pipeline", n=args.n, h=args.h, seed=args.seed,
                       budget_table=args.budget_table, format=args.format)
    tup, report = prime_gap_construct(args.n, args.h, seed=args.seed,
                                      table_budget=args.budget_table)
    ok = report.final_max <= report.katz + report.achieved_trim_max + 1e-9
    row = BoundReport(
        n=args.n, m_or_range=f"1:{report.nu_max}", construction="pipeline",
        measured_max=report.final_max, katz=report.katz,
        turan_lower=turan_lower(args.n, 1),
        er_bound=erdos_renyi_bound(args.n, report.nu_max),
        mont_ref=montgomery_reference(args.n, args.h),
    )
    if args.format == "csv":
        _dump_csv_rows([BoundReport.CSV_HEADER, row.csv_row()], args.out)
    else:
        result = {"report": report.as_dict(), "tuple": tup.as_dict(),
                  "bound_report": row.as_dict(), "pass": ok}
        _dump_json(config, result, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_baseline(args) -> int:
    config = RunConfig(command="baseline", kind=args.kind, n=args.n,
                       m=args.m, range=args.range, seed=args.seed,
                       trials=args.trials, format=args.format)
    if args.kind == "roots-of-unity":
        tup = roots_of_unity_tuple(args.n)
        lo, hi = _parse_range(args.range) if args.range else (1, max(args.n - 1, 1))
        sweep = sweep_naive(tup, lo, hi, op_budget=args.budget_ops)
        row = BoundReport(
            n=args.n, m_or_range=f"{lo}:{hi}", construction="roots-of-unity",
            measured_max=sweep.max_abs, katz=None, turan_lower=None,
            er_bound=erdos_renyi_bound(args.n, hi), mont_ref=None,
        )
        result = {"tuple": tup.as_dict(), "sweep": sweep.as_dict(),
                  "bound_report": row.as_dict()}
    elif args.kind == "random":
        if args.m is None:
            raise ValueError("baseline --kind random requires --m")
        stats = random_unimodular_baseline(args.n, args.m, seed=args.seed,
                                           trials=args.trials)
        b = max(math.log(args.m) / math.log(args.n), 1.0) if args.n > 1 else 1.0
        row = BoundReport(
            n=args.n, m_or_range=f"1:{args.m}", construction="random",
            measured_max=max(stats.per_trial_max), katz=None,
            turan_lower=turan_lower(args.n, 1), er_bound=stats.bound,
            mont_ref=montgomery_reference(args.n, b),
        )
        result = {"stats": stats.as_dict(), "bound_report": row.as_dict()}
    else:
        raise ValueError(f"unknown baseline kind {args.kind!r}")

    if args.format == "csv":
        _dump_csv_rows([BoundReport.CSV_HEADER, row.csv_row()], args.out)
    else:
        _dump_json(config, result, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = RunConfig(command="sweep", range=args.range, engine=args.engine,
                       threads=args.threads, budget_ops=args.budget_ops,
                       format=args.format)
    tup = _load_tuple(args.input)
    lo, hi = _parse_range(args.range)
    keep = args.format == "csv"

    if args.engine in ("dft", "both"):
        m = tup.uniform_denominator
        if m is None:
            raise ValueError("dft engine requires a uniform denominator; "
                             "use --engine naive")
        if hi > m - 1:
            raise ValueError(f"range end {hi} exceeds one period (M = {m}); "
                             "use --engine naive")

    if args.engine == "dft":
        sweep = sweep_dft(tup, keep_per_nu=keep)
        if (lo, hi) != (sweep.nu_start, sweep.nu_end):
            max_abs, argmax = range_max_uniform(tup, lo, hi)
            sweep.nu_start, sweep.nu_end = lo, hi
            sweep.max_abs, sweep.argmax_nu = max_abs, argmax
            if keep:
                sweep.per_nu = sweep.per_nu[lo:hi + 1]
        result = {"sweep": sweep.as_dict()}
    else:
        sweep = sweep_naive(tup, lo, hi, keep_per_nu=keep,
                            op_budget=args.budget_ops)
        result = {"sweep": sweep.as_dict()}
        if args.engine == "both":
            max_abs, argmax = range_max_uniform(tup, lo, hi)
            agree = (abs(max_abs - sweep.max_abs) <= 1e-8
                     and argmax == sweep.argmax_nu)
            result["dft"] = {"max_abs": max_abs, "argmax_nu": argmax}
            result["engines_agree"] = agree
            if not agree:
                _dump_json(config, result, args.out)
                return EXIT_FAIL

    if keep:
        rows = ["nu,abs"] + list(per_nu_csv_rows(sweep))
        _dump_csv_rows(rows, args.out)
    else:
        _dump_json(config, result, args.out)
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def _add_common(sp, *, budgets=True, threads=False, seed=False):
    sp.add_argument("--out", help="write output to this path instead of stdout")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    if budgets:
        sp.add_argument("--budget-table", type=int, default=None,
                        help="cap on field table size (group order); the "
                        "POWERSUM_BUDGET_MB environment variable also caps "
                        "table memory")
        sp.add_argument("--budget-ops", type=int, default=10 ** 9,
                        help="cap on (range length) x (tuple size) for "
                        "naive sweeps")
    if threads:
        sp.add_argument("--threads", type=int, default=1,
                        help="worker cap; results never depend on it")
    if seed:
        sp.add_argument("--seed", type=int, default=0,
                        help="RNG seed (default 0 for reproducibility)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powersum",
        description="Constructions and sweeps for unimodular power sums.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", help="build a Bose-Chowla set")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="verify a construction end to end")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--engine", choices=("naive", "dft", "both"),
                    default="dft")
    _add_common(sp, threads=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("compose", help="binary-expansion composition")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("pipeline", help="prime-gap + trimming pipeline")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    _add_common(sp, seed=True)
    sp.set_defaults(func=cmd_pipeline)

    sp = sub.add_parser("baseline", help="reference tuples")
    sp.add_argument("--kind", choices=("roots-of-unity", "random"),
                    required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=None)
    sp.add_argument("--range", default=None, help="inclusive a:b")
    sp.add_argument("--trials", type=int, default=1)
    _add_common(sp, seed=True)
    sp.set_defaults(func=cmd_baseline)

    sp = sub.add_parser("sweep", help="sweep a tuple file")
    sp.add_argument("--in", dest="input", required=True,
                    help='tuple file: {"entries": [[num, den], ...]}')
    sp.add_argument("--range", required=True, help="inclusive a:b")
    sp.add_argument("--engine", choices=("naive", "dft", "both"),
                    default="naive")
    _add_common(sp, threads=True)
    sp.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
