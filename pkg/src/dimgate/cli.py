"""Command-line front end.

Subcommands: ``id`` (dimensionality gate for a table), ``optimize`` (one
budgeted search run), ``bench`` (multi-dataset comparison rig), ``stats``
(rank table from a results CSV), ``metrics`` (regression scores from an
actual/predicted CSV), and ``gen rf-pool`` (synthetic benchmark pool).

Exit codes: 0 success, 1 usage error, 2 data/input error.
"""
import argparse
import csv
import sys
from pathlib import Path
from statistics import median

from .intrinsic import recommend
from .metrics import mae, mre, pred40, sa
from .optim import dehb_lite, lite, random_search
from .rig import (ExperimentPlan, Treatment, default_treatments, emit_report,
                  rf_grid_size, run_experiment, write_rf_pool)
from .stats import Sample, scott_knott
from .table import DataError, ParseError, format_cell, load_table


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _verdict(simple: bool) -> str:
    return "simple" if simple else "hard"


def _cmd_id(args) -> int:
    t = load_table(args.file)
    gate = recommend(t, radii_count=args.radii, sample_cap=args.sample, seed=args.seed)
    name = Path(args.file).stem
    print(f"{name} R={gate.R} I={gate.I:.3f} DRR={gate.drr:.3f} "
          f"drr={_verdict(gate.simple_by_drr)} "
          f"agrawal={_verdict(gate.simple_by_agrawal)}")
    return 0


def _cmd_optimize(args) -> int:
    t = load_table(args.file)
    if args.algo == "lite":
        res = lite(t, args.budget, q_mode=args.q, seed=args.seed)
    elif args.algo == "random":
        res = random_search(t, args.budget, seed=args.seed)
    else:
        res = dehb_lite(t, args.budget, seed=args.seed)
    name = Path(args.file).stem
    print(f"{name} algo={res.algo} budget={args.budget} seed={res.seed} "
          f"labels={res.labels_spent} d2h={res.d2h:.5f} ms={res.wall_ms:.1f}")
    print(",".join(c.name for c in t.columns))
    print(",".join(format_cell(v) for v in t.rows[res.best_row].cells))
    return 0


def _cmd_bench(args) -> int:
    plan = ExperimentPlan(
        datasets=list(args.files),
        treatments=default_treatments(),
        repeats=args.repeats,
        base_seed=args.seed,
        pooled=args.pooled,
        first_goal_only=args.first_goal_only,
    )
    results = run_experiment(plan)
    if not results.records:
        print("error: no dataset produced any records", file=sys.stderr)
        for name, msg in sorted(results.failures.items()):
            print(f"error: {name}: {msg}", file=sys.stderr)
        return 2
    paths = emit_report(results, args.out)
    for key in ("results", "summary", "id"):
        print(f"wrote {paths[key]}")
    for name, msg in sorted(results.failures.items()):
        print(f"failed {name}: {msg}", file=sys.stderr)
    return 0


def _cmd_stats(args) -> int:
    by_dataset: dict[str, dict[str, list[float]]] = {}
    with open(args.results, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:6]] != \
                ["dataset", "treatment", "seed", "labels", "d2h", "ms"]:
            raise ParseError("expected header dataset,treatment,seed,labels,d2h,ms")
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) < 6:
                raise ParseError(f"line {lineno}: expected 6 cells, got {len(rec)}")
            try:
                score = float(rec[4])
            except ValueError:
                raise ParseError(f"line {lineno}: non-numeric d2h '{rec[4]}'") from None
            by_dataset.setdefault(rec[0], {}).setdefault(rec[1], []).append(score)
    for name in sorted(by_dataset):
        print(name)
        samples = [Sample(label, vals)
                   for label, vals in sorted(by_dataset[name].items())]
        ranked = scott_knott(samples, larger_better=args.larger_better)
        for s in sorted(ranked, key=lambda s: (s.rank, s.median, s.label)):
            print(f"  rank={s.rank} treatment={s.label} "
                  f"median={s.median:.5f} iqr={s.iqr:.5f}")
    return 0


def _cmd_metrics(args) -> int:
    actuals: list[float] = []
    predictions: list[float] = []
    with open(args.predictions, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["actual", "predicted"]:
            raise ParseError("expected header actual,predicted")
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) < 2:
                raise ParseError(f"line {lineno}: expected 2 cells, got {len(rec)}")
            try:
                actuals.append(float(rec[0]))
                predictions.append(float(rec[1]))
            except ValueError:
                raise ParseError(f"line {lineno}: non-numeric value") from None
    if not actuals:
        raise DataError("no prediction pairs")
    print(f"MAE={mae(actuals, predictions):.5f}")
    print(f"SA={sa(actuals, predictions):.2f}")
    nz = [(a, p) for a, p in zip(actuals, predictions) if a != 0]
    skipped = len(actuals) - len(nz)
    if not nz:
        raise DataError("undefined MRE: every actual value is zero")
    nza = [a for a, _ in nz]
    nzp = [p for _, p in nz]
    errors = sorted(mre(a, p) for a, p in nz)
    print(f"PRED{int(round(args.pred_threshold * 100))}="
          f"{pred40(nza, nzp, threshold=args.pred_threshold):.5f}")
    print(f"MRE min={errors[0]:.5f} median={median(errors):.5f} max={errors[-1]:.5f}")
    if skipped:
        print(f"note: skipped {skipped} pair(s) with actual=0 for relative metrics")
    return 0


def _cmd_gen(args) -> int:
    if args.kind == "rf-pool":
        t = write_rf_pool(args.rows, seed=args.seed, out_path=args.out,
                          goals=args.goals)
        print(f"wrote {args.out} rows={len(t.rows)} grid={rf_grid_size()}")
        return 0
    raise DataError(f"unknown generator '{args.kind}'")  # unreachable via argparse


def build_parser() -> _Parser:
    parser = _Parser(prog="dimgate",
                     description="Dimensionality gating and budgeted optimization "
                                 "over pre-evaluated tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("id", parents=[], help="estimate intrinsic dimensionality "
                       "and print the redundancy gate")
    p.add_argument("file")
    p.add_argument("--radii", type=int, default=40)
    p.add_argument("--sample", type=int, default=512)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=_cmd_id)

    p = sub.add_parser("optimize", help="run one budgeted search on a table")
    p.add_argument("file")
    p.add_argument("--algo", required=True, choices=["lite", "random", "dehb"])
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--q", default="explore", choices=["explore", "exploit", "adapt"])
    p.set_defaults(fn=_cmd_optimize)

    p = sub.add_parser("bench", help="benchmark the stock treatments over datasets")
    p.add_argument("files", nargs="+")
    p.add_argument("--repeats", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--pooled", action="store_true",
                   help="score each run within the union of rows any treatment "
                        "evaluated for that seed")
    p.add_argument("--first-goal-only", action="store_true",
                   help="rank by the first goal column only")
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("stats", help="rank treatments from a results CSV")
    p.add_argument("results")
    p.add_argument("--larger-better", action="store_true")
    p.set_defaults(fn=_cmd_stats)

    p = sub.add_parser("metrics", help="regression scores from an "
                       "actual,predicted CSV")
    p.add_argument("predictions")
    p.add_argument("--pred-threshold", type=float, default=0.4)
    p.set_defaults(fn=_cmd_metrics)

    p = sub.add_parser("gen", help="generate synthetic benchmark tables")
    gen_sub = p.add_subparsers(dest="kind", required=True)
    g = gen_sub.add_parser("rf-pool", help="random-forest configuration pool "
                           "with distance goals")
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--out", required=True)
    g.add_argument("--goals", type=int, default=1)
    g.set_defaults(fn=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (DataError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
