"""Binary classification metrics: confusion counts, accuracy/P/R/F1, AUC."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def confusion(labels, predictions) -> ConfusionMatrix:
    """Count tp/fp/fn/tn from boolean is-positive labels and predictions."""
    y = np.asarray(labels, dtype=bool)
    p = np.asarray(predictions, dtype=bool)
    if y.shape != p.shape or y.ndim != 1 or len(y) == 0:
        raise ValidationError("labels and predictions must be equal-length, non-empty 1-d")
    return ConfusionMatrix(
        tp=int(np.sum(y & p)),
        fp=int(np.sum(~y & p)),
        fn=int(np.sum(y & ~p)),
        tn=int(np.sum(~y & ~p)),
    )


def scores(cm: ConfusionMatrix) -> dict[str, float]:
    """Accuracy, precision, recall, F1 with the 0/0 -> 0 convention."""
    if cm.total <= 0:
        raise DomainError("confusion matrix is empty")
    accuracy = (cm.tp + cm.tn) / cm.total
    precision = cm.tp / (cm.tp + cm.fp) if (cm.tp + cm.fp) else 0.0
    recall = cm.tp / (cm.tp + cm.fn) if (cm.tp + cm.fn) else 0.0
    f1 = (
        2 * precision * recall / (precision + recall)
        if (precision + recall) > 0
        else 0.0
    )
    return {"accuracy": accuracy, "precision": precision, "recall": recall, "f1": f1}


def average_ranks(values: np.ndarray) -> np.ndarray:
    """1-based ranks of ``values`` in ascending order; ties share the mean rank."""
    values = np.asarray(values, dtype=float)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2 + 1  # mean of ranks i+1 .. j+1
        i = j + 1
    return ranks


def auc(labels, positive_scores) -> float:
    """Mann-Whitney AUC via average ranks; ties count one half."""
    y = np.asarray(labels, dtype=bool)
    s = np.asarray(positive_scores, dtype=float)
    if y.shape != s.shape or y.ndim != 1:
        raise ValidationError("labels and scores must be equal-length 1-d")
    n_pos = int(y.sum())
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DomainError("AUC undefined: both classes must be present")
    ranks = average_ranks(s)
    return float((ranks[y].sum() - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg))
