"""Seed-fixed synthetic benchmark: a noisy linear rule with decoy features.

Five informative numeric features drive the label through a weighted sum
plus Gaussian noise, thresholded for an 80/20 class imbalance; the remaining
features are pure noise (numeric and categorical). The clean scores are
returned so callers can compute the Bayes-optimal accuracy bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tabular import DataTable, categorical_column, numeric_column

INFORMATIVE_WEIGHTS = (2.0, 1.6, 1.2, 0.9, 0.7)
NOISE_SIGMA = 0.4


@dataclass(frozen=True)
class SyntheticInfo:
    informative: tuple[str, ...]
    clean_score: np.ndarray
    threshold: float

    def bayes_predictions(self) -> np.ndarray:
        """Best possible predictions given the features (noise is symmetric)."""
        return self.clean_score > self.threshold


def make_synthetic_table(
    n: int = 2000,
    seed: int = 7,
    n_noise_numeric: int = 10,
    n_noise_categorical: int = 5,
    positive_rate: float = 0.2,
) -> tuple[DataTable, SyntheticInfo]:
    rng = np.random.default_rng(seed)
    k = len(INFORMATIVE_WEIGHTS)
    informative = rng.standard_normal((n, k))
    clean = informative @ np.array(INFORMATIVE_WEIGHTS)
    noisy = clean + NOISE_SIGMA * rng.standard_normal(n)
    threshold = float(np.quantile(noisy, 1.0 - positive_rate))
    labels = np.where(noisy > threshold, "special", "typical")

    columns = [
        numeric_column(f"signal_{i + 1}", informative[:, i]) for i in range(k)
    ]
    for i in range(n_noise_numeric):
        columns.append(numeric_column(f"noise_num_{i + 1}", rng.standard_normal(n)))
    cats = np.array(["a", "b"], dtype=object)
    for i in range(n_noise_categorical):
        columns.append(
            categorical_column(f"noise_cat_{i + 1}", cats[rng.integers(0, len(cats), size=n)])
        )
    columns.append(categorical_column("outcome", labels))
    table = DataTable(tuple(columns), target="outcome", positive_label="special")
    info = SyntheticInfo(
        informative=tuple(f"signal_{i + 1}" for i in range(k)),
        clean_score=clean,
        threshold=threshold,
    )
    return table, info
