"""Filter-based feature scorers and the consensus ranking table.

Seven scorers are provided: information gain, gain ratio, Gini gain, one-way
ANOVA F, chi-square, ReliefF, and a fast correlation-based filter built on
symmetric uncertainty. Entropy-family scorers see numeric features through
equal-frequency discretization.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BoundsError,
    ConfigError,
    DomainError,
    KindMismatchError,
    MissingValuesError,
)
from .metrics import average_ranks
from .tabular import Column, ColumnKind, DataTable, value_counts

SCORER_NAMES = ("info_gain", "gain_ratio", "gini", "anova", "chi2", "relieff", "fcbf")


@dataclass(frozen=True)
class ScorerConfig:
    """Free parameters of the scorers (discretization, ReliefF, FCBF)."""

    bins: int = 4
    relieff_neighbors: int = 10
    relieff_samples: int | None = None  # None = use every row
    fcbf_threshold: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.bins < 2:
            raise ConfigError(f"bins={self.bins} must be >= 2")
        if self.relieff_neighbors < 1:
            raise ConfigError("relieff_neighbors must be >= 1")
        if self.fcbf_threshold < 0:
            raise ConfigError("fcbf_threshold must be >= 0")


@dataclass(frozen=True)
class ContingencyTable:
    """Feature-value x class count matrix."""

    counts: np.ndarray
    row_labels: tuple
    col_labels: tuple

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=float)
        if c.ndim != 2 or (c < 0).any():
            raise DomainError("contingency counts must be a nonnegative 2-d matrix")
        if c.sum() <= 0:
            raise DomainError("contingency table is empty")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)


def contingency(feature: Column, target: Column) -> ContingencyTable:
    """Cross-tabulate a categorical feature against the target labels."""
    if feature.kind is not ColumnKind.CATEGORICAL:
        raise KindMismatchError(f"contingency needs a categorical feature, got {feature.name!r}")
    rows = sorted(value_counts(feature))
    cols = sorted(value_counts(target))
    r_index = {v: i for i, v in enumerate(rows)}
    c_index = {v: i for i, v in enumerate(cols)}
    counts = np.zeros((len(rows), len(cols)))
    for fv, fm, tv in zip(feature.values, feature.missing, target.values):
        if not fm:
            counts[r_index[fv], c_index[tv]] += 1
    return ContingencyTable(counts, tuple(rows), tuple(cols))


def entropy(counts) -> float:
    """Shannon entropy in bits of a count vector."""
    c = np.asarray(counts, dtype=float)
    total = c.sum()
    if total <= 0:
        raise DomainError("entropy of an all-zero count vector is undefined")
    p = c[c > 0] / total
    return float(-(p * np.log2(p)).sum())


def information_gain(ct: ContingencyTable) -> float:
    """H(class) minus the feature-conditional class entropy."""
    counts = ct.counts
    n = counts.sum()
    h_class = entropy(counts.sum(axis=0))
    cond = 0.0
    for row in counts:
        nv = row.sum()
        if nv > 0:
            cond += (nv / n) * entropy(row)
    return h_class - cond


def gain_ratio(ct: ContingencyTable) -> float:
    """Information gain normalized by the feature's own entropy."""
    split_info = entropy(ct.counts.sum(axis=1))
    if split_info == 0.0:
        return 0.0
    return information_gain(ct) / split_info


def _gini(counts: np.ndarray) -> float:
    total = counts.sum()
    if total <= 0:
        return 0.0
    p = counts / total
    return float(1.0 - (p * p).sum())


def gini_gain(ct: ContingencyTable) -> float:
    """Decrease in Gini impurity from conditioning on the feature."""
    counts = ct.counts
    n = counts.sum()
    parent = _gini(counts.sum(axis=0))
    child = 0.0
    for row in counts:
        nv = row.sum()
        if nv > 0:
            child += (nv / n) * _gini(row)
    return parent - child


def chi_square(ct: ContingencyTable) -> float | None:
    """Pearson chi-square statistic; None when degenerate after pruning."""
    counts = ct.counts
    counts = counts[counts.sum(axis=1) > 0][:, counts.sum(axis=0) > 0]
    if counts.shape[0] < 2 or counts.shape[1] < 2:
        return None
    n = counts.sum()
    expected = np.outer(counts.sum(axis=1), counts.sum(axis=0)) / n
    return float(((counts - expected) ** 2 / expected).sum())


def anova_f(column: Column, labels) -> float:
    """One-way F statistic of a numeric feature across the target classes."""
    if column.kind is not ColumnKind.NUMERIC:
        raise KindMismatchError(f"ANOVA needs a numeric column, got {column.name!r}")
    labels = np.asarray(list(labels), dtype=object)
    classes = sorted(set(labels.tolist()))
    if len(classes) < 2:
        raise DomainError("ANOVA needs at least two classes")
    present = ~column.missing
    groups = []
    for cls in classes:
        vals = column.values[present & (labels == cls)].astype(float)
        if len(vals) == 0:
            raise DomainError(f"class {cls!r} has no non-missing values for {column.name!r}")
        groups.append(vals)
    n = sum(len(g) for g in groups)
    c = len(groups)
    if n <= c:
        raise DomainError("ANOVA needs more observations than classes")
    grand = sum(g.sum() for g in groups) / n
    ssb = sum(len(g) * (g.mean() - grand) ** 2 for g in groups)
    ssw = sum(((g - g.mean()) ** 2).sum() for g in groups)
    if ssb == 0.0:
        return 0.0
    if ssw == 0.0:
        return math.inf
    return float((ssb / (c - 1)) / (ssw / (n - c)))


def discretize(column: Column, bins: int) -> Column:
    """Equal-frequency binning with quantile boundaries; missing cells stay missing."""
    if column.kind is not ColumnKind.NUMERIC:
        raise KindMismatchError(f"discretize needs a numeric column, got {column.name!r}")
    if bins < 2:
        raise BoundsError(f"bins={bins} must be >= 2")
    present = column.present_values().astype(float)
    if len(present) == 0:
        boundaries = np.array([])
    else:
        qs = np.quantile(present, [j / bins for j in range(1, bins)])
        boundaries = np.unique(qs)  # duplicate boundaries merge into fewer bins
    labels = np.empty(len(column), dtype=object)
    for i, (v, m) in enumerate(zip(column.values, column.missing)):
        if m:
            labels[i] = None
        else:
            # values equal to a boundary fall in the lower bin
            labels[i] = f"bin{int(np.searchsorted(boundaries, float(v), side='left'))}"
    return Column(column.name, ColumnKind.CATEGORICAL, labels, column.missing.copy())


def _feature_diffs(table: DataTable) -> list[tuple[str, np.ndarray, float]]:
    """Per-feature representations for ReliefF's diff metric.

    Numeric diff is |a - b| / range (range 0 means diff 0); categorical diff
    is a 0/1 mismatch of integer codes.
    """
    reps = []
    for col in table.columns:
        if col.name == table.target:
            continue
        if col.kind is ColumnKind.NUMERIC:
            vals = col.values.astype(float)
            span = float(vals.max() - vals.min()) if len(vals) else 0.0
            reps.append(("num", vals, span))
        else:
            cats = {v: i for i, v in enumerate(sorted(set(col.values.tolist())))}
            reps.append(("cat", np.array([cats[v] for v in col.values], dtype=float), 0.0))
    return reps


def relieff(table: DataTable, cfg: ScorerConfig) -> dict[str, float]:
    """Neighbourhood-based feature weights in [-1, 1].

    For each sampled row, the k nearest same-class rows (hits) pull a
    feature's weight down by its diff and the k nearest rows of the other
    class (misses) push it up, prior-weighted; all contributions are
    averaged over m * k.
    """
    if table.has_missing_features():
        raise MissingValuesError("ReliefF requires an imputed table")
    labels = np.asarray(table.target_column.values.tolist(), dtype=object)
    n = len(labels)
    classes = sorted(set(labels.tolist()))
    counts = {c: int((labels == c).sum()) for c in classes}
    if min(counts.values()) < 2:
        raise DomainError("ReliefF needs at least 2 rows in every class")
    k = min(cfg.relieff_neighbors, min(counts.values()) - 1)
    if k < cfg.relieff_neighbors:
        warnings.warn(f"ReliefF neighbor count clamped to {k}", stacklevel=2)

    reps = _feature_diffs(table)
    features = table.feature_names
    priors = {c: counts[c] / n for c in classes}

    if cfg.relieff_samples is None or cfg.relieff_samples >= n:
        instances = np.arange(n)
    else:
        rng = np.random.default_rng(cfg.seed)
        instances = rng.choice(n, size=cfg.relieff_samples, replace=False)
    m = len(instances)

    class_rows = {c: np.flatnonzero(labels == c) for c in classes}
    weights = np.zeros(len(features))
    for i in instances:
        dist = np.zeros(n)
        diffs = []
        for kind, rep, span in reps:
            if kind == "num":
                d = np.zeros(n) if span == 0.0 else np.abs(rep - rep[i]) / span
            else:
                d = (rep != rep[i]).astype(float)
            diffs.append(d)
            dist = dist + d
        dist[i] = np.inf
        for cls in classes:
            cand = class_rows[cls]
            order = cand[np.argsort(dist[cand], kind="stable")]
            chosen = order[: k + 1] if cls == labels[i] else order[:k]
            chosen = chosen[chosen != i][:k]
            if cls == labels[i]:
                factor = -1.0 / (m * k)
            else:
                factor = priors[cls] / (1.0 - priors[labels[i]]) / (m * k)
            for f_idx, d in enumerate(diffs):
                weights[f_idx] += factor * d[chosen].sum()
    return {name: float(w) for name, w in zip(features, weights)}


def symmetric_uncertainty(a: Column, b: Column) -> float:
    """2 * IG(a; b) / (H(a) + H(b)); 0 when both entropies vanish."""
    ct = contingency(a, b)
    h_a = entropy(ct.counts.sum(axis=1))
    h_b = entropy(ct.counts.sum(axis=0))
    denom = h_a + h_b
    if denom == 0.0:
        return 0.0
    return 2.0 * information_gain(ct) / denom


def fcbf(table: DataTable, cfg: ScorerConfig) -> tuple[dict[str, float], list[str]]:
    """Relevance-then-redundancy filter on symmetric uncertainty.

    Returns (per-feature reported score, selected subset). Removed or
    below-threshold features report 0; retained ones report their SU with
    the class.
    """
    if table.has_missing_features():
        raise MissingValuesError("FCBF requires an imputed table")
    target = table.target_column
    cat_cols: dict[str, Column] = {}
    for name in table.feature_names:
        col = table.column(name)
        cat_cols[name] = discretize(col, cfg.bins) if col.kind is ColumnKind.NUMERIC else col

    su_class = {name: symmetric_uncertainty(col, target) for name, col in cat_cols.items()}
    schema_pos = {name: i for i, name in enumerate(table.feature_names)}
    candidates = [n for n in table.feature_names if su_class[n] > cfg.fcbf_threshold]
    candidates.sort(key=lambda n: (-su_class[n], schema_pos[n]))

    selected: list[str] = []
    for name in candidates:
        redundant = any(
            symmetric_uncertainty(cat_cols[kept], cat_cols[name]) >= su_class[name]
            for kept in selected
        )
        if not redundant:
            selected.append(name)
    scores = {n: (su_class[n] if n in selected else 0.0) for n in table.feature_names}
    return scores, selected


@dataclass(frozen=True)
class FeatureScores:
    name: str
    value_count: int
    scores: dict[str, float | None] = field(default_factory=dict)


@dataclass(frozen=True)
class RankingTable:
    """Per-feature scorer values plus the consensus feature order."""

    features: tuple[FeatureScores, ...]
    consensus_order: tuple[str, ...]

    def consensus_rank(self, name: str) -> int:
        return self.consensus_order.index(name) + 1

    def feature(self, name: str) -> FeatureScores:
        for f in self.features:
            if f.name == name:
                return f
        raise KeyError(name)

    def order_by(self, scorer: str) -> list[str]:
        """Feature order under a single scorer, best first; NA scores last."""
        names = [f.name for f in self.features]
        pos = {n: i for i, n in enumerate(names)}

        def key(f: FeatureScores):
            s = f.scores.get(scorer)
            return (s is None, -(s if s is not None else 0.0), pos[f.name])

        return [f.name for f in sorted(self.features, key=key)]


def build_ranking(
    table: DataTable,
    cfg: ScorerConfig | None = None,
    scorers: tuple[str, ...] = SCORER_NAMES,
) -> RankingTable:
    """Score every feature with the enabled scorers and derive a consensus order.

    Consensus is the ascending mean of per-scorer average ranks (best score =
    rank 1), ties broken by schema column order.
    """
    cfg = cfg or ScorerConfig()
    if not scorers:
        raise ConfigError("at least one scorer must be enabled")
    unknown = [s for s in scorers if s not in SCORER_NAMES]
    if unknown:
        raise ConfigError(f"unknown scorers: {unknown}; valid: {list(SCORER_NAMES)}")
    if table.has_missing_features():
        raise MissingValuesError("ranking requires an imputed table")

    target = table.target_column
    names = table.feature_names
    binned: dict[str, Column] = {}
    for name in names:
        col = table.column(name)
        binned[name] = discretize(col, cfg.bins) if col.kind is ColumnKind.NUMERIC else col

    relieff_scores = relieff(table, cfg) if "relieff" in scorers else {}
    fcbf_scores = fcbf(table, cfg)[0] if "fcbf" in scorers else {}

    feats = []
    for name in names:
        col = table.column(name)
        ct = contingency(binned[name], target)
        entry: dict[str, float | None] = {}
        for scorer in scorers:
            if scorer == "info_gain":
                entry[scorer] = information_gain(ct)
            elif scorer == "gain_ratio":
                entry[scorer] = gain_ratio(ct)
            elif scorer == "gini":
                entry[scorer] = gini_gain(ct)
            elif scorer == "chi2":
                entry[scorer] = chi_square(ct)
            elif scorer == "anova":
                entry[scorer] = (
                    anova_f(col, target.values) if col.kind is ColumnKind.NUMERIC else None
                )
            elif scorer == "relieff":
                entry[scorer] = relieff_scores[name]
            elif scorer == "fcbf":
                entry[scorer] = fcbf_scores[name]
        feats.append(FeatureScores(name, len(value_counts(binned[name])), entry))

    mean_ranks = _consensus_mean_ranks(feats, scorers)
    schema_pos = {n: i for i, n in enumerate(names)}
    order = sorted(names, key=lambda n: (mean_ranks[n], schema_pos[n]))
    return RankingTable(tuple(feats), tuple(order))


def _consensus_mean_ranks(
    feats: list[FeatureScores], scorers: tuple[str, ...]
) -> dict[str, float]:
    sums = {f.name: 0.0 for f in feats}
    counts = {f.name: 0 for f in feats}
    for scorer in scorers:
        applicable = [f for f in feats if f.scores.get(scorer) is not None]
        if not applicable:
            continue
        vals = np.array([-f.scores[scorer] for f in applicable])  # descending score
        ranks = average_ranks(vals)
        for f, r in zip(applicable, ranks):
            sums[f.name] += float(r)
            counts[f.name] += 1
    return {
        name: (sums[name] / counts[name] if counts[name] else math.inf) for name in sums
    }
