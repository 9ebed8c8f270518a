import os
from pathlib import Path

import numpy as np
import pytest

from provclass import DataTable, categorical_column, numeric_column

DATASET_ENV = "PROVCLASS_DATASET"


def make_table(features: dict, labels, positive: str = "yes", target: str = "label") -> DataTable:
    """Build a DataTable from {name: values}; float lists become numeric columns,
    str lists categorical. None entries are missing."""
    columns = []
    for name, values in features.items():
        sample = next((v for v in values if v is not None), None)
        if isinstance(sample, str):
            columns.append(categorical_column(name, values))
        else:
            columns.append(numeric_column(name, values))
    columns.append(categorical_column(target, list(labels)))
    return DataTable(tuple(columns), target=target, positive_label=positive)


def random_mixed_table(
    rng: np.random.Generator,
    n_rows: int,
    n_numeric: int,
    n_categorical: int,
    positive_rate: float = 0.4,
) -> DataTable:
    """Random table with both classes guaranteed at least 2 rows each."""
    features = {}
    for i in range(n_numeric):
        features[f"num_{i}"] = list(rng.random(n_rows) * rng.integers(1, 10))
    cats = ["red", "green", "blue"]
    for i in range(n_categorical):
        features[f"cat_{i}"] = [cats[j] for j in rng.integers(0, len(cats), size=n_rows)]
    labels = np.where(rng.random(n_rows) < positive_rate, "yes", "no")
    labels[:2] = "yes"
    labels[2:4] = "no"
    return make_table(features, labels.tolist(), positive="yes")


@pytest.fixture(scope="session")
def dental_dataset_path():
    """Path to the provider CSV; tests depending on it skip when absent."""
    candidate = os.environ.get(DATASET_ENV, "")
    if candidate and Path(candidate).exists():
        return Path(candidate)
    default = Path(__file__).parent / "data" / "dental2018.csv"
    if default.exists():
        return default
    pytest.skip(f"provider dataset not available (set ${DATASET_ENV})")
