"""Budgeted optimizers over a label oracle.

Three search strategies work against a pre-evaluated table through an
oracle that charges one unit of budget to reveal a row's goal cells:

* ``lite`` — an active learner: rank the labeled rows, split them into
  roughly sqrt(M) "best" vs "rest", train the two-class model, and label
  the unlabeled candidate the acquisition function likes most.
* ``random_search`` — label B rows uniformly at random.
* ``dehb_lite`` — differential evolution under a successive-halving
  bracket schedule: populations of labeled rows are repeatedly ranked,
  halved, and evolved; mutants are snapped to the nearest unlabeled row.

The optimizers only ever read goal cells of rows the oracle has labeled;
scoring against the full table happens afterwards, outside the run.
"""
import math
import time
from dataclasses import dataclass
from functools import cmp_to_key

import numpy as np

from .bayes import acquire, likelihood_pair, train
from .rank import GlobalRanking, GoalView, better
from .table import DataError, Table

WARMUP_LABELS = 4
CANDIDATE_SAMPLE = 64
Q_MODES = ("explore", "exploit", "adapt")


class BudgetExhausted(Exception):
    """Raised by the oracle when a label is requested past the budget."""


class Oracle:
    """Label-budget accountant over a table.

    Keeps its own ledger of which rows are labeled, so concurrent runs on
    the same table never share label state.  Labeling an already-labeled
    row costs nothing.
    """

    def __init__(self, t: Table, budget: int):
        if budget < 0:
            raise ValueError("budget must be >= 0")
        self.table = t
        self.budget = budget
        self.spent = 0
        self.labeled = np.array([bool(r.labeled) for r in t.rows], dtype=bool)

    def label(self, i: int):
        """Reveal row ``i``'s goal cells, charging one unit if new."""
        if self.labeled[i]:
            return self.table.rows[i]
        if self.spent >= self.budget:
            raise BudgetExhausted(f"label budget {self.budget} exhausted")
        self.spent += 1
        self.labeled[i] = True
        return self.table.rows[i]

    def labeled_indices(self) -> np.ndarray:
        return np.flatnonzero(self.labeled)

    def unlabeled_indices(self) -> np.ndarray:
        return np.flatnonzero(~self.labeled)

    def has_unlabeled(self) -> bool:
        return bool((~self.labeled).any())


@dataclass
class DeParams:
    """Differential-evolution and halving constants."""

    np: int = 20  # population size
    F: float = 0.5  # mutation factor
    CR: float = 0.9  # crossover rate
    eta: int = 2  # halving factor

    def __post_init__(self):
        if not (0 < self.F <= 2):
            raise ValueError("F must be in (0, 2]")
        if not (0 <= self.CR <= 1):
            raise ValueError("CR must be in [0, 1]")
        if self.eta < 2:
            raise ValueError("eta must be >= 2")
        if self.np < 4:
            raise ValueError("population size must be >= 4")


@dataclass
class RunResult:
    """One optimizer run: the row found, its score, and the cost."""

    best_row: int
    d2h: float
    labels_spent: int
    wall_ms: float
    seed: int
    algo: str


def _rank_indices(indices, t: Table, g: GoalView) -> list[int]:
    """Row indices sorted best-first; ties keep their input order."""
    rows = t.rows

    def cmp(i: int, j: int) -> int:
        if better(rows[i], rows[j], g):
            return -1
        if better(rows[j], rows[i], g):
            return 1
        return 0

    return sorted(indices, key=cmp_to_key(cmp))


def _q_value(q_mode: str, M: int, budget: int) -> float:
    if q_mode == "explore":
        return 1.0
    if q_mode == "exploit":
        return 0.0
    if q_mode == "adapt":
        return 1.0 - M / budget
    raise ValueError(f"unknown q mode '{q_mode}'")


def lite_core(oracle: Oracle, g: GoalView, q_mode: str, rng) -> int:
    """Active-learning loop; returns the best labeled row's index."""
    if q_mode not in Q_MODES:
        raise ValueError(f"unknown q mode '{q_mode}'")
    t = oracle.table
    unl = oracle.unlabeled_indices()
    warm = rng.choice(unl, size=min(WARMUP_LABELS, unl.size), replace=False)
    for i in warm:
        oracle.label(int(i))
    while oracle.spent < oracle.budget:
        labeled = list(oracle.labeled_indices())
        M = len(labeled)
        ranked = _rank_indices(labeled, t, g)
        n_best = math.ceil(math.sqrt(M))
        best_rows = [t.rows[i] for i in ranked[:n_best]]
        rest_rows = [t.rows[i] for i in ranked[n_best:]]
        stats = train(best_rows, rest_rows, t)
        unl = oracle.unlabeled_indices()
        if unl.size == 0:
            break
        cand = rng.choice(unl, size=min(CANDIDATE_SAMPLE, unl.size), replace=False)
        q = _q_value(q_mode, M, oracle.budget)
        scores = [
            acquire(*likelihood_pair(stats, t.rows[int(i)], M), q) for i in cand
        ]
        oracle.label(int(cand[int(np.argmax(scores))]))
    ranked = _rank_indices(list(oracle.labeled_indices()), t, g)
    return ranked[0]


def random_core(oracle: Oracle, g: GoalView, rng) -> int:
    """Uniformly label ``budget`` distinct rows; return the best one."""
    n = len(oracle.table.rows)
    for i in rng.choice(n, size=oracle.budget, replace=False):
        oracle.label(int(i))
    ranked = _rank_indices(list(oracle.labeled_indices()), oracle.table, g)
    return ranked[0]


def _trial_vector(num, sym, a: int, b: int, c: int, x: int, F: float, CR: float, rng):
    """A mutant of rows a/b/c crossed binomially against parent ``x``.

    Produced in encoded space: numeric cells are ``a + F*(b - c)`` clamped
    to [0, 1] (a's cell when any parent cell is missing); symbolic cells
    take a's symbol with probability CR, else x's.  The crossover walks
    numeric columns first, then symbolic, and always keeps at least one
    mutant column.
    """
    kn = num.shape[1]
    ks = sym.shape[1]
    vnum = np.empty(kn, dtype=np.float64)
    for j in range(kn):
        na, nb, nc = num[a, j], num[b, j], num[c, j]
        if math.isnan(na) or math.isnan(nb) or math.isnan(nc):
            vnum[j] = na
        else:
            v = na + F * (nb - nc)
            vnum[j] = 0.0 if v < 0.0 else (1.0 if v > 1.0 else v)
    vsym = np.empty(ks, dtype=np.int32)
    for j in range(ks):
        vsym[j] = sym[a, j] if rng.random() < CR else sym[x, j]
    k_total = kn + ks
    j_rand = int(rng.integers(k_total)) if k_total else 0
    for j in range(k_total):
        if rng.random() < CR or j == j_rand:
            continue  # keep the mutant cell
        if j < kn:
            vnum[j] = num[x, j]
        else:
            vsym[j - kn] = sym[x, j - kn]
    return vnum, vsym


def dehb_core(oracle: Oracle, g: GoalView, p: DeParams, rng) -> int:
    """Bracketed DE over labeled populations; returns the best row index.

    Each bracket refills the population to ``p.np`` with random unlabeled
    rows (reusing the previous bracket's survivors), then runs a halving
    ladder: rank, keep the top 1/eta, and evolve each survivor through a
    snapped DE trial that replaces its parent only when it wins.  Brackets
    repeat until the budget or the unlabeled pool runs out.
    """
    t = oracle.table
    num, sym, _ = t.encoded()

    def snap(vnum, vsym):
        d = t.x_dists_from(vnum, vsym)
        d = np.where(oracle.labeled, np.inf, d)
        j = int(np.argmin(d))
        return j if np.isfinite(d[j]) else None

    survivors: list[int] = []
    out_of_moves = False
    while not out_of_moves and oracle.spent < oracle.budget and oracle.has_unlabeled():
        pop = list(survivors)
        need = p.np - len(pop)
        if need > 0:
            unl = oracle.unlabeled_indices()
            picks = rng.choice(unl, size=min(need, unl.size), replace=False)
            try:
                for i in picks:
                    oracle.label(int(i))
                    pop.append(int(i))
            except BudgetExhausted:
                out_of_moves = True
        if not pop:
            break
        while not out_of_moves:
            pop = _rank_indices(pop, t, g)
            pop = pop[: math.ceil(len(pop) / p.eta)]
            if len(pop) < 4:
                break
            for pos in range(len(pop)):
                x = pop[pos]
                others = [i for i in pop if i != x]
                picks = rng.choice(len(others), size=3, replace=False)
                a, b, c = (others[int(k)] for k in picks)
                vnum, vsym = _trial_vector(num, sym, a, b, c, x, p.F, p.CR, rng)
                target = snap(vnum, vsym)
                if target is None:
                    out_of_moves = True
                    break
                try:
                    oracle.label(target)
                except BudgetExhausted:
                    out_of_moves = True
                    break
                if better(t.rows[target], t.rows[x], g):
                    pop[pos] = target
        survivors = pop
    ranked = _rank_indices(list(oracle.labeled_indices()), t, g)
    return ranked[0]


def _check_budget(t: Table, budget: int, minimum: int, what: str):
    if budget < minimum:
        raise DataError(f"budget must be at least {minimum} for {what}")
    if budget > len(t.rows):
        raise DataError("budget exceeds table")


def lite(t: Table, budget: int, q_mode: str = "explore", seed: int = 1,
         ranking: GlobalRanking | None = None) -> RunResult:
    """Run the active learner and score its find against the full table."""
    _check_budget(t, budget, 5, "the active learner")
    g = ranking.goal_view if ranking else GoalView(t)
    ranking = ranking or GlobalRanking(t, g)
    oracle = Oracle(t, budget)
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    best = lite_core(oracle, g, q_mode, rng)
    ms = (time.perf_counter() - t0) * 1000.0
    return RunResult(best_row=best, d2h=ranking.d2h_of(t.rows[best]),
                     labels_spent=oracle.spent, wall_ms=ms, seed=seed, algo="lite")


def random_search(t: Table, budget: int, seed: int = 1,
                  ranking: GlobalRanking | None = None) -> RunResult:
    """Label ``budget`` uniform rows and score the best of them."""
    _check_budget(t, budget, 1, "random search")
    g = ranking.goal_view if ranking else GoalView(t)
    ranking = ranking or GlobalRanking(t, g)
    oracle = Oracle(t, budget)
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    best = random_core(oracle, g, rng)
    ms = (time.perf_counter() - t0) * 1000.0
    return RunResult(best_row=best, d2h=ranking.d2h_of(t.rows[best]),
                     labels_spent=oracle.spent, wall_ms=ms, seed=seed, algo="random")


def dehb_lite(t: Table, budget: int, params: DeParams | None = None, seed: int = 1,
              ranking: GlobalRanking | None = None) -> RunResult:
    """Run the bracketed DE search and score its find."""
    p = params or DeParams()
    if budget < 2 * p.np:
        raise DataError("budget too small for population")
    if budget > len(t.rows):
        raise DataError("budget exceeds table")
    g = ranking.goal_view if ranking else GoalView(t)
    ranking = ranking or GlobalRanking(t, g)
    oracle = Oracle(t, budget)
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    best = dehb_core(oracle, g, p, rng)
    ms = (time.perf_counter() - t0) * 1000.0
    return RunResult(best_row=best, d2h=ranking.d2h_of(t.rows[best]),
                     labels_spent=oracle.spent, wall_ms=ms, seed=seed, algo="dehb")


def baseline_draw(t: Table, seed: int = 1,
                  ranking: GlobalRanking | None = None) -> RunResult:
    """Score one uniformly drawn row: the untreated-table reference point."""
    g = ranking.goal_view if ranking else GoalView(t)
    ranking = ranking or GlobalRanking(t, g)
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    pick = int(rng.integers(len(t.rows)))
    ms = (time.perf_counter() - t0) * 1000.0
    return RunResult(best_row=pick, d2h=ranking.d2h_of(t.rows[pick]),
                     labels_spent=0, wall_ms=ms, seed=seed, algo="baseline")
