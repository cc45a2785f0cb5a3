"""Benchmark rig: paired-seed optimizer comparisons over table files.

A plan names dataset files and treatments (algorithm + budget).  Each
treatment runs ``repeats`` times per dataset with paired seeds, every run
is scored by the rank position of its best find, and the report step
writes ``results.csv``, a Scott-Knott ``summary.md``, and an ``id.csv``
of per-dataset dimensionality gates.
"""
import math
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .intrinsic import GateDecision, recommend
from .optim import DeParams, Oracle, dehb_core, lite_core, random_core
from .rank import GlobalRanking, GoalView, d2h, rank_rows
from .stats import Sample, scott_knott
from .table import DataError, Row, Table, column_from_name, emit_table, load_table, xdist

ALGORITHMS = ("baseline", "random", "lite", "dehb")


@dataclass(frozen=True)
class Treatment:
    """One benchmark arm: an algorithm and its label budget."""

    algo: str
    budget: int = 0
    q_mode: str = "explore"

    def __post_init__(self):
        if self.algo not in ALGORITHMS:
            raise DataError(f"unknown algorithm '{self.algo}'")
        if self.algo == "baseline" and self.budget != 0:
            raise DataError("baseline takes no budget")
        if self.algo != "baseline" and self.budget <= 0:
            raise DataError(f"{self.algo} needs a positive budget")

    @property
    def label(self) -> str:
        if self.algo == "baseline":
            return "baseline"
        return f"{self.algo}:{self.budget}"


def default_treatments() -> list[Treatment]:
    """The stock comparison: untouched baseline vs. the three searchers."""
    return [
        Treatment("baseline"),
        Treatment("random", 30),
        Treatment("lite", 30, q_mode="explore"),
        Treatment("dehb", 3000),
    ]


@dataclass
class ExperimentPlan:
    datasets: list[str]
    treatments: list[Treatment] = field(default_factory=default_treatments)
    repeats: int = 20
    base_seed: int = 1
    pooled: bool = False
    first_goal_only: bool = False


@dataclass
class Record:
    dataset: str
    treatment: str
    seed: int
    labels: int
    d2h: float
    ms: float


@dataclass
class Results:
    records: list[Record]
    gates: dict[str, GateDecision]
    failures: dict[str, str]
    plan: ExperimentPlan


def _min_budget(tr: Treatment) -> int:
    if tr.algo == "lite":
        return 5
    if tr.algo == "dehb":
        return 2 * DeParams().np
    return 1 if tr.algo == "random" else 0


def _run_treatment(t: Table, g: GoalView, tr: Treatment, seed: int):
    """Run one arm; returns (best_row, evaluated_rows, labels_spent, ms)."""
    rng = np.random.default_rng(seed)
    if tr.algo == "baseline":
        t0 = time.perf_counter()
        pick = int(rng.integers(len(t.rows)))
        ms = (time.perf_counter() - t0) * 1000.0
        return pick, [pick], 0, ms
    oracle = Oracle(t, tr.budget)
    t0 = time.perf_counter()
    if tr.algo == "lite":
        best = lite_core(oracle, g, tr.q_mode, rng)
    elif tr.algo == "random":
        best = random_core(oracle, g, rng)
    else:
        best = dehb_core(oracle, g, DeParams(), rng)
    ms = (time.perf_counter() - t0) * 1000.0
    return best, [int(i) for i in oracle.labeled_indices()], oracle.spent, ms


def _pooled_scores(t: Table, g: GoalView, evaluated: dict[str, list[int]],
                   bests: dict[str, int]) -> dict[str, float]:
    """Score each arm's best within the union of rows any arm evaluated."""
    z = sorted(set().union(*evaluated.values()))
    order = rank_rows([t.rows[i] for i in z], g)
    pos = {id(row): k for k, row in enumerate(order)}
    return {label: d2h(pos[id(t.rows[best])], len(z)) for label, best in bests.items()}


def run_experiment(plan: ExperimentPlan) -> Results:
    """Run every (dataset, treatment, seed) cell of the plan.

    Seeds are paired: repeat k uses ``base_seed + k`` for every treatment.
    A treatment whose budget exceeds a dataset's row count is skipped for
    that dataset with a warning; a dataset that cannot be loaded or run is
    recorded as a failure and the rest of the plan continues.
    """
    records: list[Record] = []
    gates: dict[str, GateDecision] = {}
    failures: dict[str, str] = {}
    for path in plan.datasets:
        name = Path(path).stem
        ds_records: list[Record] = []
        try:
            t = load_table(path)
            if plan.first_goal_only:
                t.y = t.y[:1]
            g = GoalView(t)
            ranking = GlobalRanking(t, g)
            gate = recommend(t)
            arms = []
            for tr in plan.treatments:
                if tr.budget > len(t.rows):
                    warnings.warn(f"{name}: skipping {tr.label}: budget exceeds table")
                    continue
                if tr.algo != "baseline" and tr.budget < _min_budget(tr):
                    raise DataError(
                        f"{tr.label}: budget below minimum {_min_budget(tr)}")
                arms.append(tr)
            for k in range(plan.repeats):
                seed = plan.base_seed + k
                evaluated: dict[str, list[int]] = {}
                bests: dict[str, int] = {}
                partial: dict[str, Record] = {}
                for tr in arms:
                    best, rows_seen, labels, ms = _run_treatment(t, g, tr, seed)
                    evaluated[tr.label] = rows_seen
                    bests[tr.label] = best
                    partial[tr.label] = Record(
                        dataset=name, treatment=tr.label, seed=seed,
                        labels=labels, d2h=ranking.d2h_of(t.rows[best]), ms=ms)
                if plan.pooled and bests:
                    for label, score in _pooled_scores(t, g, evaluated, bests).items():
                        partial[label].d2h = score
                ds_records.extend(partial.values())
        except (DataError, OSError) as e:
            failures[name] = str(e)
            warnings.warn(f"{name}: {e}")
            continue
        gates[name] = gate
        records.extend(ds_records)
    records.sort(key=lambda r: (r.dataset, r.treatment, r.seed))
    return Results(records=records, gates=gates, failures=failures, plan=plan)


def results_csv(results: Results) -> str:
    lines = ["dataset,treatment,seed,labels,d2h,ms"]
    for r in results.records:
        lines.append(
            f"{r.dataset},{r.treatment},{r.seed},{r.labels},{r.d2h:.5f},{r.ms:.3f}")
    return "\n".join(lines) + "\n"


def _verdict(simple: bool) -> str:
    return "simple" if simple else "hard"


def id_csv(results: Results) -> str:
    lines = ["dataset,R,I,DRR,drr_verdict,agrawal_verdict"]
    for name in sorted(results.gates):
        gt = results.gates[name]
        lines.append(f"{name},{gt.R},{gt.I:.3f},{gt.drr:.3f},"
                     f"{_verdict(gt.simple_by_drr)},{_verdict(gt.simple_by_agrawal)}")
    return "\n".join(lines) + "\n"


def summary_md(results: Results) -> str:
    """Per-dataset Scott-Knott tables over the recorded scores."""
    out = ["# Benchmark summary", ""]
    by_dataset: dict[str, dict[str, list[Record]]] = {}
    for r in results.records:
        by_dataset.setdefault(r.dataset, {}).setdefault(r.treatment, []).append(r)
    for name in sorted(by_dataset):
        out.append(f"## {name}")
        out.append("")
        out.append("| rank | treatment | median d2h | IQR | mean ms |")
        out.append("|---:|:---|---:|---:|---:|")
        samples = [Sample(label, [rec.d2h for rec in recs])
                   for label, recs in sorted(by_dataset[name].items())]
        ranked = sorted(scott_knott(samples), key=lambda s: (s.rank, s.median, s.label))
        for s in ranked:
            mean_ms = sum(rec.ms for rec in by_dataset[name][s.label]) / \
                len(by_dataset[name][s.label])
            out.append(f"| {s.rank} | {s.label} | {s.median:.5f} "
                       f"| {s.iqr:.5f} | {mean_ms:.1f} |")
        out.append("")
    if results.failures:
        out.append("## Failures")
        out.append("")
        for name in sorted(results.failures):
            out.append(f"- `{name}`: {results.failures[name]}")
        out.append("")
    return "\n".join(out)


def emit_report(results: Results, out_dir) -> dict[str, Path]:
    """Write results.csv, summary.md, and id.csv under ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "results": out / "results.csv",
        "summary": out / "summary.md",
        "id": out / "id.csv",
    }
    paths["results"].write_text(results_csv(results), encoding="utf-8")
    paths["summary"].write_text(summary_md(results), encoding="utf-8")
    paths["id"].write_text(id_csv(results), encoding="utf-8")
    return paths


# --- synthetic benchmark pool ------------------------------------------------

RF_AXES = [
    ("N_estimators", [float(v) for v in range(1, 200, 10)]),
    ("criterion", ["squared_error", "absolute_error", "friedman_mse", "poisson"]),
    ("Min_samples_leaf", [float(v) for v in range(1, 21)]),
    ("Min_impurity_decrease", [1.0 + 0.25 * k for k in range(37)]),
    ("Max_depth", [float(v) for v in range(1, 21)]),
]


def rf_grid_size() -> int:
    return math.prod(len(vals) for _, vals in RF_AXES)


def gen_rf_pool(rows: int, seed: int = 1, goals: int = 1) -> Table:
    """A random-forest-style configuration pool with distance goals.

    ``rows`` distinct configurations are drawn uniformly (without
    replacement) from the full cartesian grid.  For each goal a hidden
    target configuration is drawn from the sampled rows, and the goal
    column ``Dist<k>-`` holds each row's distance to that target —
    smaller is better, and the target row itself scores 0.
    """
    if rows < 2:
        raise DataError("pool needs at least two rows")
    if goals < 1:
        raise DataError("pool needs at least one goal")
    grid = rf_grid_size()
    if rows > grid:
        raise DataError(f"rows exceed grid size {grid}")
    rng = np.random.default_rng(seed)
    picks = rng.choice(grid, size=rows, replace=False)
    sizes = [len(vals) for _, vals in RF_AXES]
    names = [name for name, _ in RF_AXES] + [f"Dist{k + 1}-" for k in range(goals)]
    columns = [column_from_name(n) for n in names]
    table_rows = []
    for idx in picks:
        digits = []
        i = int(idx)
        for size in reversed(sizes):
            digits.append(i % size)
            i //= size
        digits.reverse()
        cells = [vals[d] for (_, vals), d in zip(RF_AXES, digits)]
        table_rows.append(Row(cells=cells + [None] * goals))
    t = Table(columns, table_rows)
    n_x = len(RF_AXES)
    for k in range(goals):
        target = table_rows[int(rng.integers(rows))]
        for row in table_rows:
            row.cells[n_x + k] = xdist(row, target, t)
    t._refresh_ranges()
    return t


def write_rf_pool(rows: int, seed: int, out_path, goals: int = 1) -> Table:
    t = gen_rf_pool(rows, seed=seed, goals=goals)
    Path(out_path).write_text(emit_table(t), encoding="utf-8")
    return t
