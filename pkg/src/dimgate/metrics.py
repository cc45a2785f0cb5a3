"""Prediction-quality metrics for regression and classification runs."""
from dataclasses import dataclass, field
from statistics import fmean

from .table import DataError


def mre(actual: float, predicted: float) -> float:
    """Magnitude of relative error |actual - predicted| / |actual|."""
    if actual == 0:
        raise DataError("undefined MRE: actual value is zero")
    return abs(actual - predicted) / abs(actual)


def mae(actuals, predictions) -> float:
    """Mean absolute error over paired values."""
    pairs = _paired(actuals, predictions)
    if not pairs:
        raise DataError("mae needs at least one pair")
    return fmean(abs(a - p) for a, p in pairs)


def pred40(actuals, predictions, threshold: float = 0.40) -> float:
    """Fraction of predictions with relative error at or under ``threshold``."""
    pairs = _paired(actuals, predictions)
    if not pairs:
        raise DataError("pred40 needs at least one pair")
    hits = sum(1 for a, p in pairs if mre(a, p) <= threshold)
    return hits / len(pairs)


def sa(actuals, predictions) -> float:
    """Standardized accuracy: improvement over guessing the actuals' mean.

    100 means perfect predictions, 0 matches the mean-guess baseline, and
    negative values do worse than it.
    """
    pairs = _paired(actuals, predictions)
    if len(pairs) < 2:
        raise DataError("sa needs at least two pairs")
    mean_actual = fmean(a for a, _ in pairs)
    mae_dumb = fmean(abs(a - mean_actual) for a, _ in pairs)
    if mae_dumb == 0:
        raise DataError("degenerate baseline: all actual values are equal")
    mae_model = fmean(abs(a - p) for a, p in pairs)
    return (1.0 - mae_model / mae_dumb) * 100.0


def _paired(actuals, predictions) -> list[tuple[float, float]]:
    actuals = list(actuals)
    predictions = list(predictions)
    if len(actuals) != len(predictions):
        raise DataError("actuals and predictions differ in length")
    return list(zip(actuals, predictions))


@dataclass
class ClassificationScores:
    """Confusion-matrix summary; ``flagged`` names any zero-denominator scores."""

    accuracy: float
    recall: float
    precision: float
    f1: float
    flagged: frozenset = field(default_factory=frozenset)


def classification_scores(actuals, predictions, positive) -> ClassificationScores:
    """Accuracy, recall, precision, and F1 for a designated positive class.

    A score whose denominator is empty (e.g. recall with no actual
    positives) comes back as 0 with its name in ``flagged`` rather than
    raising.
    """
    pairs = _paired(actuals, predictions)
    if not pairs:
        raise DataError("classification needs at least one pair")
    tn = fn = fp = tp = 0
    for a, p in pairs:
        if a == positive:
            if p == positive:
                tp += 1
            else:
                fn += 1
        else:
            if p == positive:
                fp += 1
            else:
                tn += 1
    flagged = set()

    def ratio(num: int, den: int, name: str) -> float:
        if den == 0:
            flagged.add(name)
            return 0.0
        return num / den

    accuracy = (tn + tp) / len(pairs)
    recall = ratio(tp, fn + tp, "recall")
    precision = ratio(tp, fp + tp, "precision")
    if recall + precision == 0:
        flagged.add("f1")
        f1 = 0.0
    else:
        f1 = 2 * recall * precision / (recall + precision)
    return ClassificationScores(accuracy=accuracy, recall=recall,
                                precision=precision, f1=f1,
                                flagged=frozenset(flagged))
