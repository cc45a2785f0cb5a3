"""Dimensionality gating and budgeted optimization over pre-evaluated tables.

The library answers two questions about a tabular optimization problem:
how many effective dimensions it really has (``correlation_curve``,
``intrinsic_dimension``, ``recommend``), and whether a cheap budgeted
search suffices to optimize it (``lite``, ``random_search``,
``dehb_lite``, benchmarked by ``run_experiment``).
"""
from .bayes import ClassStats, acquire, likelihood_pair, loglike, train
from .intrinsic import (CorrelationCurve, DegenerateTable, GateDecision,
                        correlation_curve, gate_decision, intrinsic_dimension,
                        recommend)
from .kernels import BACKEND
from .metrics import (ClassificationScores, classification_scores, mae, mre,
                      pred40, sa)
from .optim import (BudgetExhausted, DeParams, Oracle, RunResult, baseline_draw,
                    dehb_core, dehb_lite, lite, lite_core, random_core,
                    random_search)
from .rank import GlobalRanking, GoalView, better, d2h, rank_rows, zitzler_loss
from .rig import (ExperimentPlan, Record, Results, Treatment, default_treatments,
                  emit_report, gen_rf_pool, run_experiment, write_rf_pool)
from .stats import RankedSample, Sample, cliffs_delta, scott_knott
from .table import (Column, DataError, ParseError, Row, Table, emit_table,
                    load_table, norm, xdist)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BudgetExhausted", "ClassStats", "ClassificationScores",
    "Column", "CorrelationCurve", "DataError", "DeParams", "DegenerateTable",
    "ExperimentPlan", "GateDecision", "GlobalRanking", "GoalView", "Oracle",
    "ParseError", "RankedSample", "Record", "Results", "Row", "RunResult",
    "Sample", "Table", "Treatment", "acquire", "baseline_draw", "better",
    "classification_scores", "cliffs_delta", "correlation_curve", "d2h",
    "default_treatments", "dehb_core", "dehb_lite", "emit_report", "emit_table",
    "gate_decision", "gen_rf_pool", "intrinsic_dimension", "likelihood_pair",
    "lite", "lite_core", "load_table", "loglike", "mae", "mre", "norm",
    "pred40", "random_core", "random_search", "rank_rows", "recommend",
    "run_experiment", "sa", "scott_knott", "train", "write_rf_pool",
    "xdist", "zitzler_loss", "__version__",
]
