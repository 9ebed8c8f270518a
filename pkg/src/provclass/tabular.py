"""Column-oriented data model and numeric encoding.

A :class:`DataTable` is an immutable bundle of typed columns with per-cell
missingness plus a designated binary target column. Model-facing code turns
tables into dense matrices with :func:`encode_for_model` (full one-hot for
categorical columns, optional standardization for numeric ones).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BoundsError,
    KindMismatchError,
    MissingValuesError,
    ValidationError,
)


class ColumnKind(str, Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"


@dataclass(frozen=True)
class Column:
    """One named column: values plus an aligned boolean missing mask."""

    name: str
    kind: ColumnKind
    values: np.ndarray
    missing: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values)
        missing = np.asarray(self.missing, dtype=bool)
        if values.shape != missing.shape or values.ndim != 1:
            raise ValidationError(
                f"column {self.name!r}: values and missing mask must be 1-d and equal length"
            )
        if self.kind is ColumnKind.NUMERIC:
            values = values.astype(np.float64, copy=True)
            if not np.all(np.isfinite(values[~missing])):
                raise ValidationError(
                    f"column {self.name!r}: non-missing numeric cells must be finite"
                )
        else:
            values = np.array(
                [None if m else str(v) for v, m in zip(values, missing)], dtype=object
            )
        values.setflags(write=False)
        missing = missing.copy()
        missing.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "missing", missing)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def n_missing(self) -> int:
        return int(self.missing.sum())

    def present_values(self) -> np.ndarray:
        return self.values[~self.missing]

    def take(self, rows: np.ndarray) -> "Column":
        return Column(self.name, self.kind, self.values[rows], self.missing[rows])


def _check_mask(name: str, raw: list, missing: Sequence | None) -> list[bool]:
    if missing is None:
        return [v is None or (isinstance(v, float) and np.isnan(v)) for v in raw]
    mask = list(missing)
    if len(mask) != len(raw):
        raise ValidationError(f"column {name!r}: missing mask length differs from values")
    return [bool(m) for m in mask]


def numeric_column(name: str, values: Sequence, missing: Sequence | None = None) -> Column:
    """Build a numeric column; None/NaN entries are treated as missing."""
    raw = list(values)
    mask = _check_mask(name, raw, missing)
    filled = [0.0 if m else float(v) for v, m in zip(raw, mask)]
    return Column(name, ColumnKind.NUMERIC, np.array(filled), np.array(mask, dtype=bool))


def categorical_column(name: str, values: Sequence, missing: Sequence | None = None) -> Column:
    """Build a categorical column; None entries are treated as missing."""
    raw = list(values)
    mask = _check_mask(name, raw, missing)
    filled = ["" if m else str(v) for v, m in zip(raw, mask)]
    return Column(name, ColumnKind.CATEGORICAL, np.array(filled, dtype=object), np.array(mask, dtype=bool))


@dataclass(frozen=True)
class DataTable:
    """Immutable table of aligned columns with a binary categorical target."""

    columns: tuple[Column, ...]
    target: str
    positive_label: str

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValidationError("column names must be unique")
        lengths = {len(c) for c in self.columns}
        if len(lengths) > 1:
            raise ValidationError("all columns must share the same row count")
        if self.target not in names:
            raise ValidationError(f"target column {self.target!r} not present")
        tcol = self.column(self.target)
        if tcol.kind is not ColumnKind.CATEGORICAL:
            raise ValidationError("target column must be categorical")
        if tcol.n_missing:
            raise ValidationError("target column must have no missing cells")
        labels = set(tcol.values.tolist())
        if len(labels) > 2:
            raise ValidationError(f"target must be binary, got labels {sorted(labels)}")

    @property
    def row_count(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    @property
    def feature_names(self) -> list[str]:
        return [c.name for c in self.columns if c.name != self.target]

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def target_column(self) -> Column:
        return self.column(self.target)

    def positive_mask(self) -> np.ndarray:
        return np.array([v == self.positive_label for v in self.target_column.values], dtype=bool)

    def take(self, rows: Sequence[int] | np.ndarray) -> "DataTable":
        rows = np.asarray(rows)
        return DataTable(tuple(c.take(rows) for c in self.columns), self.target, self.positive_label)

    def has_missing_features(self) -> bool:
        return any(c.n_missing for c in self.columns if c.name != self.target)

    def replace_columns(self, new: dict[str, Column]) -> "DataTable":
        cols = tuple(new.get(c.name, c) for c in self.columns)
        return DataTable(cols, self.target, self.positive_label)


@dataclass(frozen=True)
class Schema:
    """Declarative column description used to load and validate CSV files."""

    column_specs: tuple[tuple[str, ColumnKind], ...]
    target_name: str
    positive_label: str
    missing_tokens: frozenset[str] = frozenset({"", "NA"})
    target_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "column_specs", tuple((n, ColumnKind(k)) for n, k in self.column_specs))
        object.__setattr__(self, "missing_tokens", frozenset(self.missing_tokens))
        kinds = dict(self.column_specs)
        if self.target_name not in kinds:
            raise ValidationError(f"target {self.target_name!r} missing from column specs")
        if kinds[self.target_name] is not ColumnKind.CATEGORICAL:
            raise ValidationError("target column must be declared categorical")
        if self.target_labels is not None:
            labels = tuple(self.target_labels)
            if self.positive_label not in labels:
                raise ValidationError(
                    f"positive label {self.positive_label!r} not among declared target labels {labels}"
                )
            object.__setattr__(self, "target_labels", labels)

    @property
    def feature_specs(self) -> list[tuple[str, ColumnKind]]:
        return [(n, k) for n, k in self.column_specs if n != self.target_name]

    def kind_of(self, name: str) -> ColumnKind:
        for n, k in self.column_specs:
            if n == name:
                return k
        raise KeyError(name)


def value_counts(column: Column) -> dict[str, int]:
    """Counts of the non-missing categories of a categorical column."""
    if column.kind is not ColumnKind.CATEGORICAL:
        raise KindMismatchError(
            f"value_counts requires a categorical column, got numeric {column.name!r}"
        )
    counts: dict[str, int] = {}
    for v, m in zip(column.values, column.missing):
        if not m:
            counts[v] = counts.get(v, 0) + 1
    return counts


def select_top_features(table: DataTable, order: Sequence[str], r: int) -> DataTable:
    """Keep the first ``r`` features of ``order`` plus the target column."""
    features = table.feature_names
    if sorted(order) != sorted(features):
        raise ValidationError("order must be a permutation of the non-target feature names")
    if not 1 <= r <= len(features):
        raise BoundsError(f"r={r} outside [1, {len(features)}]")
    kept = list(order[:r]) + [table.target]
    return DataTable(tuple(table.column(n) for n in kept), table.target, table.positive_label)


@dataclass(frozen=True)
class EncodingRecipe:
    """Per-column encoding state learned from a training table.

    Categorical columns record their observed category list (one-hot order);
    numeric columns record the training mean/std used for standardization.
    """

    entries: tuple[tuple, ...]  # ("cat", name, categories) | ("num", name, mean, std)
    standardize: bool

    def to_dict(self) -> dict:
        out = []
        for e in self.entries:
            if e[0] == "cat":
                out.append({"kind": "cat", "name": e[1], "categories": list(e[2])})
            else:
                out.append({"kind": "num", "name": e[1], "mean": e[2], "std": e[3]})
        return {"standardize": self.standardize, "entries": out}

    @classmethod
    def from_dict(cls, d: dict) -> "EncodingRecipe":
        entries = []
        for e in d["entries"]:
            if e["kind"] == "cat":
                entries.append(("cat", e["name"], tuple(e["categories"])))
            else:
                entries.append(("num", e["name"], float(e["mean"]), float(e["std"])))
        return cls(tuple(entries), bool(d["standardize"]))

    @property
    def feature_names(self) -> list[str]:
        return [e[1] for e in self.entries]


@dataclass(frozen=True)
class EncodedMatrix:
    """Dense design matrix plus the origin of every encoded column."""

    data: np.ndarray
    feature_origin: tuple[tuple[str, str], ...]  # (source column, category or "numeric")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]


def _require_imputed(table: DataTable) -> None:
    bad = [c.name for c in table.columns if c.name != table.target and c.n_missing]
    if bad:
        raise MissingValuesError(f"columns still contain missing cells: {bad}")


def fit_encoder(table: DataTable, standardize: bool) -> EncodingRecipe:
    """Learn one-hot categories and standardization statistics from ``table``."""
    _require_imputed(table)
    entries = []
    for col in table.columns:
        if col.name == table.target:
            continue
        if col.kind is ColumnKind.CATEGORICAL:
            cats = tuple(sorted(set(col.values.tolist())))
            entries.append(("cat", col.name, cats))
        else:
            vals = col.values.astype(float)
            mean = float(vals.mean()) if len(vals) else 0.0
            std = float(vals.std(ddof=1)) if len(vals) > 1 else 0.0
            entries.append(("num", col.name, mean, std))
    return EncodingRecipe(tuple(entries), standardize)


def apply_encoder(recipe: EncodingRecipe, table: DataTable) -> EncodedMatrix:
    """Encode ``table`` with a previously fitted recipe (train statistics)."""
    _require_imputed(table)
    n = table.row_count
    blocks: list[np.ndarray] = []
    origin: list[tuple[str, str]] = []
    for entry in recipe.entries:
        col = table.column(entry[1])
        if entry[0] == "cat":
            cats = entry[2]
            index = {c: i for i, c in enumerate(cats)}
            block = np.zeros((n, len(cats)))
            for i, v in enumerate(col.values):
                j = index.get(v)
                if j is not None:  # categories unseen in training encode as all-zero
                    block[i, j] = 1.0
            blocks.append(block)
            origin.extend((entry[1], c) for c in cats)
        else:
            _, name, mean, std = entry
            vals = col.values.astype(float)
            if recipe.standardize:
                vals = np.zeros(n) if std == 0.0 else (vals - mean) / std
            blocks.append(vals.reshape(-1, 1))
            origin.append((name, "numeric"))
    data = np.hstack(blocks) if blocks else np.zeros((n, 0))
    return EncodedMatrix(data, tuple(origin))


def encode_for_model(table: DataTable, standardize: bool) -> EncodedMatrix:
    """One-hot + (optionally) standardize using this table's own statistics."""
    return apply_encoder(fit_encoder(table, standardize), table)
