"""Cross-validation, grid search, and the incremental feature-subset sweep.

All randomness flows from ``PipelineOptions.seed`` through deterministic
per-task seed derivation keyed by (r, model index, fold index), so sweep
output is identical regardless of worker count or scheduling.
"""

from __future__ import annotations

import dataclasses
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundsError, ConfigError, ProvclassError
from .ingest import apply_imputer, fit_imputer
from .metrics import auc, confusion, scores
from .models import ClassifierSpec, predict_proba, train
from .resampling import FoldPlan, smote, stratified_kfold
from .seeding import derive_seed
from .tabular import DataTable, select_top_features

METRIC_NAMES = ("accuracy", "precision", "recall", "f1", "auc")


@dataclass(frozen=True)
class PipelineOptions:
    """Knobs shared by cross-validation and sweeps."""

    folds: int = 10
    seed: int = 42
    smote_enabled: bool = False
    smote_ratio: float = 1.0
    smote_neighbors: int = 5
    smote_global: bool = False
    global_impute: bool = False
    metrics: tuple[str, ...] = ("accuracy",)
    workers: int = 1

    def __post_init__(self):
        if self.folds < 2:
            raise BoundsError(f"folds={self.folds} must be >= 2")
        unknown = [m for m in self.metrics if m not in METRIC_NAMES]
        if unknown:
            raise ConfigError(f"unknown metrics {unknown}; valid: {list(METRIC_NAMES)}")
        if "accuracy" not in self.metrics:
            object.__setattr__(self, "metrics", ("accuracy", *self.metrics))
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")


@dataclass(frozen=True)
class CVResult:
    means: dict[str, float]
    per_fold: dict[str, list[float]]
    fold_sizes: tuple[int, ...]


def prepare_table(table: DataTable, opts: PipelineOptions) -> DataTable:
    """Apply the global (pre-CV) preprocessing modes, if any.

    Global SMOTE implies global imputation because synthesis needs a complete
    table before folds exist.
    """
    if opts.global_impute or opts.smote_global:
        table = apply_imputer(fit_imputer(table), table)
    if opts.smote_global:
        table = smote(
            table,
            k_neighbors=opts.smote_neighbors,
            target_ratio=opts.smote_ratio,
            seed=derive_seed(opts.seed, "smote-global"),
        )
    return table


def make_fold_plan(table: DataTable, opts: PipelineOptions) -> FoldPlan:
    return stratified_kfold(
        table.target_column.values, opts.folds, derive_seed(opts.seed, "folds")
    )


def _evaluate_fold(
    table: DataTable,
    spec: ClassifierSpec,
    opts: PipelineOptions,
    plan: FoldPlan,
    fold: int,
    context: tuple[int, int],
) -> dict[str, float] | None:
    r, spec_index = context
    test_idx = plan.test_rows(fold)
    if len(test_idx) == 0:
        warnings.warn(f"fold {fold} has no test rows; skipped", stacklevel=2)
        return None
    train_t = table.take(plan.train_rows(fold))
    test_t = table.take(test_idx)
    if not (opts.global_impute or opts.smote_global):
        imputer = fit_imputer(train_t)
        train_t = apply_imputer(imputer, train_t)
        test_t = apply_imputer(imputer, test_t)
    if opts.smote_enabled and not opts.smote_global:
        train_labels = set(train_t.target_column.values.tolist())
        if len(train_labels) == 2:
            train_t = smote(
                train_t,
                k_neighbors=opts.smote_neighbors,
                target_ratio=opts.smote_ratio,
                seed=derive_seed(opts.seed, "smote", r, spec_index, fold),
            )
        else:
            warnings.warn(f"fold {fold}: single-class training data, SMOTE skipped", stacklevel=2)

    seeded = dataclasses.replace(spec, seed=derive_seed(opts.seed, "train", r, spec_index, fold))
    model = train(seeded, train_t)
    p = predict_proba(model, test_t)
    y_true = test_t.positive_mask()
    y_pred = p >= 0.5
    out = dict(scores(confusion(y_true, y_pred)))
    if "auc" in opts.metrics:
        if 0 < y_true.sum() < len(y_true):
            out["auc"] = auc(y_true, p)
        else:
            warnings.warn(f"fold {fold}: single-class test fold, AUC undefined", stacklevel=2)
            out["auc"] = float("nan")
    return {m: out[m] for m in opts.metrics}


def _cross_validate_prepared(
    table: DataTable,
    spec: ClassifierSpec,
    opts: PipelineOptions,
    plan: FoldPlan,
    context: tuple[int, int],
) -> CVResult:
    per_fold: dict[str, list[float]] = {m: [] for m in opts.metrics}
    sizes: list[int] = []
    for fold in range(plan.k):
        res = _evaluate_fold(table, spec, opts, plan, fold, context)
        if res is None:
            continue
        sizes.append(len(plan.test_rows(fold)))
        for m in opts.metrics:
            per_fold[m].append(res[m])
    means: dict[str, float] = {}
    weights = np.array(sizes, dtype=float)
    for m in opts.metrics:
        vals = np.array(per_fold[m], dtype=float)
        ok = ~np.isnan(vals)
        means[m] = float((vals[ok] * weights[ok]).sum() / weights[ok].sum()) if ok.any() else float("nan")
    return CVResult(means, per_fold, tuple(sizes))


def cross_validate(
    table: DataTable,
    spec: ClassifierSpec,
    opts: PipelineOptions | None = None,
    spec_index: int = 0,
) -> CVResult:
    """Stratified k-fold evaluation with fold-safe imputation/oversampling."""
    opts = opts or PipelineOptions()
    prepared = prepare_table(table, opts)
    plan = make_fold_plan(prepared, opts)
    context = (len(prepared.feature_names), spec_index)
    return _cross_validate_prepared(prepared, spec, opts, plan, context)


@dataclass(frozen=True)
class AccuracyMatrix:
    """(subset size) x (model) grid of cross-validated metric means."""

    subset_sizes: tuple[int, ...]
    model_names: tuple[str, ...]
    metrics: tuple[str, ...]
    means: dict[str, np.ndarray]  # metric -> (len(sizes), len(models)), NaN = missing
    per_fold: dict = field(default_factory=dict)  # (r, model name) -> metric -> [fold values]
    diagnostics: tuple[str, ...] = ()

    def cell(self, r: int, model: str, metric: str = "accuracy") -> float:
        i = self.subset_sizes.index(r)
        j = self.model_names.index(model)
        return float(self.means[metric][i, j])


def _unique_names(specs: list[ClassifierSpec]) -> list[str]:
    seen: dict[str, int] = {}
    names = []
    for s in specs:
        base = s.display_name
        seen[base] = seen.get(base, 0) + 1
        names.append(base if seen[base] == 1 else f"{base} #{seen[base]}")
    return names


def sweep(
    table: DataTable,
    order: list[str],
    specs: list[ClassifierSpec],
    opts: PipelineOptions | None = None,
) -> AccuracyMatrix:
    """Cross-validate every spec on every top-r prefix of ``order``.

    One fold plan is computed on the prepared table and shared by all cells
    so columns are comparable. Cell failures become NaN cells plus a
    diagnostic line instead of aborting the sweep.
    """
    opts = opts or PipelineOptions()
    if not specs:
        raise ConfigError("sweep needs at least one model spec")
    prepared = prepare_table(table, opts)
    plan = make_fold_plan(prepared, opts)
    n_features = len(prepared.feature_names)
    sizes = tuple(range(1, n_features + 1))
    names = _unique_names(specs)

    tasks = [(r, j) for r in sizes for j in range(len(specs))]

    def run_cell(task: tuple[int, int]):
        r, j = task
        sub = select_top_features(prepared, order, r)
        try:
            return task, _cross_validate_prepared(sub, specs[j], opts, plan, (r, j)), None
        except ProvclassError as exc:
            return task, None, f"r={r} model={names[j]}: {type(exc).__name__}: {exc}"

    if opts.workers > 1:
        with ThreadPoolExecutor(max_workers=opts.workers) as pool:
            outcomes = list(pool.map(run_cell, tasks))
    else:
        outcomes = [run_cell(t) for t in tasks]

    means = {m: np.full((len(sizes), len(specs)), np.nan) for m in opts.metrics}
    per_fold: dict = {}
    diagnostics: list[str] = []
    for (r, j), result, error in outcomes:
        if result is None:
            diagnostics.append(error)
            continue
        i = sizes.index(r)
        for m in opts.metrics:
            means[m][i, j] = result.means[m]
        per_fold[(r, names[j])] = result.per_fold
    return AccuracyMatrix(
        subset_sizes=sizes,
        model_names=tuple(names),
        metrics=opts.metrics,
        means=means,
        per_fold=per_fold,
        diagnostics=tuple(sorted(d for d in diagnostics if d)),
    )


@dataclass(frozen=True)
class GridSearchResult:
    best_params: dict
    best_score: float
    scores: tuple[tuple[dict, float], ...]


def grid_search(
    table: DataTable,
    family: str,
    grid: list[dict],
    opts: PipelineOptions | None = None,
) -> GridSearchResult:
    """Pick the lattice point with the best CV accuracy (ties: first declared)."""
    if not grid:
        raise ConfigError("grid search needs a nonempty grid")
    opts = opts or PipelineOptions()
    prepared = prepare_table(table, opts)
    plan = make_fold_plan(prepared, opts)
    context_r = len(prepared.feature_names)
    best: tuple[dict, float] | None = None
    all_scores = []
    for i, params in enumerate(grid):
        spec = ClassifierSpec(family, params, seed=opts.seed)
        result = _cross_validate_prepared(prepared, spec, opts, plan, (context_r, i))
        score = result.means["accuracy"]
        all_scores.append((params, score))
        if best is None or score > best[1]:
            best = (params, score)
    return GridSearchResult(best[0], best[1], tuple(all_scores))
