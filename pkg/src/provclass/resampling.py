"""Minority-class oversampling (mixed-type SMOTE) and stratified k-fold plans."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BoundsError, ResampleError
from .tabular import Column, ColumnKind, DataTable, encode_for_model

_EPS = 1e-9


@dataclass(frozen=True)
class FoldPlan:
    """Per-row fold assignment; folds partition the rows."""

    k: int
    assignments: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.assignments, dtype=int)
        a.setflags(write=False)
        object.__setattr__(self, "assignments", a)

    def test_rows(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments == fold)

    def train_rows(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments != fold)


def stratified_kfold(labels, k: int, seed: int) -> FoldPlan:
    """Seeded shuffle within each class followed by round-robin assignment."""
    labels = np.asarray(list(labels), dtype=object)
    n = len(labels)
    if k < 2 or k > n:
        raise BoundsError(f"k={k} outside [2, {n}]")
    rng = np.random.default_rng(seed)
    assignments = np.empty(n, dtype=int)
    for cls in sorted(set(labels.tolist())):
        idx = np.flatnonzero(labels == cls)
        if len(idx) < k:
            warnings.warn(
                f"class {cls!r} has {len(idx)} rows < k={k}; some folds will lack it",
                stacklevel=2,
            )
        shuffled = idx[rng.permutation(len(idx))]
        assignments[shuffled] = np.arange(len(shuffled)) % k
    return FoldPlan(k, assignments)


def _class_split(table: DataTable) -> tuple[str, np.ndarray, str, np.ndarray]:
    labels = table.target_column.values
    counts: dict[str, int] = {}
    for v in labels:
        counts[v] = counts.get(v, 0) + 1
    if len(counts) < 2:
        raise ResampleError("oversampling needs both target classes present")
    minority = min(counts, key=lambda c: (counts[c], c))
    majority = max(counts, key=lambda c: (counts[c], c))
    min_idx = np.flatnonzero(np.array([v == minority for v in labels]))
    maj_idx = np.flatnonzero(np.array([v == majority for v in labels]))
    return minority, min_idx, majority, maj_idx


def _minority_neighbors(table: DataTable, min_idx: np.ndarray, k: int) -> np.ndarray:
    """k nearest minority rows per minority row (Euclidean in encoded space)."""
    enc = encode_for_model(table, standardize=True)
    xm = enc.data[min_idx]
    sq = np.einsum("ij,ij->i", xm, xm)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (xm @ xm.T)
    np.fill_diagonal(d2, np.inf)
    order = np.argsort(d2, axis=1, kind="stable")  # distance ties break by row index
    return order[:, :k]


def smote_with_provenance(
    table: DataTable,
    k_neighbors: int = 5,
    target_ratio: float = 1.0,
    seed: int = 0,
) -> tuple[DataTable, list[tuple[int, int]]]:
    """SMOTE returning (resampled table, per-synthetic-row (seed, neighbor) indices).

    Numeric cells interpolate between a random minority row and one of its k
    nearest minority neighbours; categorical cells take the neighbourhood's
    majority category (ties to the seed row's own category).
    """
    if table.has_missing_features():
        raise ResampleError("table must be imputed before oversampling")
    if not 0.0 < target_ratio <= 1.0:
        raise BoundsError(f"target_ratio={target_ratio} outside (0, 1]")
    minority, min_idx, _, maj_idx = _class_split(table)
    if len(min_idx) < 2:
        raise ResampleError("minority class needs at least 2 rows")
    wanted = math.ceil(target_ratio * len(maj_idx) - _EPS)
    n_synth = max(0, wanted - len(min_idx))
    if n_synth == 0:
        return table, []

    k = min(k_neighbors, len(min_idx) - 1)
    neighbors = _minority_neighbors(table, min_idx, k)

    rng = np.random.default_rng(seed)
    provenance: list[tuple[int, int]] = []
    pairs = []  # (seed row within minority, neighbor row within minority, u)
    for _ in range(n_synth):
        s = int(rng.integers(len(min_idx)))
        j = int(neighbors[s, int(rng.integers(k))])
        u = float(rng.random())
        pairs.append((s, j, u))
        provenance.append((int(min_idx[s]), int(min_idx[j])))

    new_cols: dict[str, Column] = {}
    for col in table.columns:
        if col.name == table.target:
            appended = np.array(list(col.values) + [minority] * n_synth, dtype=object)
            new_cols[col.name] = Column(
                col.name, col.kind, appended, np.zeros(len(appended), dtype=bool)
            )
        elif col.kind is ColumnKind.NUMERIC:
            vals = col.values[min_idx].astype(float)
            synth = np.array([vals[s] + u * (vals[j] - vals[s]) for s, j, u in pairs])
            appended = np.concatenate([col.values.astype(float), synth])
            new_cols[col.name] = Column(
                col.name, col.kind, appended, np.zeros(len(appended), dtype=bool)
            )
        else:
            vals = col.values[min_idx]
            synth_vals = []
            for s, j, u in pairs:
                cats = [vals[neighbors[s, t]] for t in range(k)]
                counts: dict[str, int] = {}
                for c in cats:
                    counts[c] = counts.get(c, 0) + 1
                top = max(counts.values())
                tied = sorted(c for c, n in counts.items() if n == top)
                own = vals[s]
                synth_vals.append(own if own in tied else tied[0])
            appended = np.array(list(col.values) + synth_vals, dtype=object)
            new_cols[col.name] = Column(
                col.name, col.kind, appended, np.zeros(len(appended), dtype=bool)
            )
    out = DataTable(
        tuple(new_cols[c.name] for c in table.columns), table.target, table.positive_label
    )
    return out, provenance


def smote(
    table: DataTable,
    k_neighbors: int = 5,
    target_ratio: float = 1.0,
    seed: int = 0,
) -> DataTable:
    """Append synthetic minority rows until minority >= ratio * majority."""
    out, _ = smote_with_provenance(table, k_neighbors, target_ratio, seed)
    return out
