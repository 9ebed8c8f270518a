"""Independent direct-from-definition reference implementations.

Everything here is deliberately naive pure Python (loops, math.log2, full
enumerations) so the package's vectorized paths are checked against a
different computation route.
"""

from __future__ import annotations

import math

from provclass.tabular import ColumnKind, DataTable


def entropy_bits(counts) -> float:
    total = sum(counts)
    h = 0.0
    for c in counts:
        if c > 0:
            p = c / total
            h -= p * math.log2(p)
    return h


def info_gain(matrix) -> float:
    n = sum(sum(row) for row in matrix)
    class_totals = [sum(row[j] for row in matrix) for j in range(len(matrix[0]))]
    h = entropy_bits(class_totals)
    cond = 0.0
    for row in matrix:
        nv = sum(row)
        if nv > 0:
            cond += (nv / n) * entropy_bits(row)
    return h - cond


def gain_ratio(matrix) -> float:
    split = entropy_bits([sum(row) for row in matrix])
    if split == 0.0:
        return 0.0
    return info_gain(matrix) / split


def _gini(counts) -> float:
    total = sum(counts)
    if total == 0:
        return 0.0
    return 1.0 - sum((c / total) ** 2 for c in counts)


def gini_gain(matrix) -> float:
    n = sum(sum(row) for row in matrix)
    class_totals = [sum(row[j] for row in matrix) for j in range(len(matrix[0]))]
    parent = _gini(class_totals)
    child = 0.0
    for row in matrix:
        nv = sum(row)
        if nv > 0:
            child += (nv / n) * _gini(row)
    return parent - child


def chi_square(matrix) -> float | None:
    rows = [row for row in matrix if sum(row) > 0]
    if not rows:
        return None
    keep_cols = [j for j in range(len(rows[0])) if sum(row[j] for row in rows) > 0]
    pruned = [[row[j] for j in keep_cols] for row in rows]
    if len(pruned) < 2 or len(keep_cols) < 2:
        return None
    n = sum(sum(row) for row in pruned)
    row_sums = [sum(row) for row in pruned]
    col_sums = [sum(row[j] for row in pruned) for j in range(len(keep_cols))]
    stat = 0.0
    for i, row in enumerate(pruned):
        for j, obs in enumerate(row):
            expected = row_sums[i] * col_sums[j] / n
            stat += (obs - expected) ** 2 / expected
    return stat


def auc_pairwise(labels, scores) -> float:
    pos = [s for y, s in zip(labels, scores) if y]
    neg = [s for y, s in zip(labels, scores) if not y]
    wins = 0.0
    for sp in pos:
        for sn in neg:
            if sp > sn:
                wins += 1.0
            elif sp == sn:
                wins += 0.5
    return wins / (len(pos) * len(neg))


def relieff_bruteforce(table: DataTable, k: int) -> dict[str, float]:
    """Exhaustive ReliefF: every neighbour set found by full sorting."""
    labels = list(table.target_column.values)
    n = len(labels)
    feats = []
    for name in table.feature_names:
        col = table.column(name)
        if col.kind is ColumnKind.NUMERIC:
            vals = [float(v) for v in col.values]
            span = max(vals) - min(vals)
            feats.append(("num", vals, span))
        else:
            feats.append(("cat", list(col.values), 0.0))

    def diff(f: int, i: int, j: int) -> float:
        kind, vals, span = feats[f]
        if kind == "num":
            return 0.0 if span == 0.0 else abs(vals[i] - vals[j]) / span
        return 0.0 if vals[i] == vals[j] else 1.0

    def dist(i: int, j: int) -> float:
        total = 0.0
        for f in range(len(feats)):
            total = total + diff(f, i, j)
        return total

    classes = sorted(set(labels))
    counts = {c: labels.count(c) for c in classes}
    k_eff = min(k, min(counts.values()) - 1)
    priors = {c: counts[c] / n for c in classes}
    m = n
    weights = [0.0] * len(feats)
    for i in range(n):
        for cls in classes:
            cands = [j for j in range(n) if labels[j] == cls and j != i]
            cands.sort(key=lambda j: (dist(i, j), j))
            chosen = cands[:k_eff]
            if cls == labels[i]:
                factor = -1.0 / (m * k_eff)
            else:
                factor = priors[cls] / (1.0 - priors[labels[i]]) / (m * k_eff)
            for f in range(len(feats)):
                acc = 0.0
                for j in chosen:
                    acc += diff(f, i, j)
                weights[f] += factor * acc
    return {name: w for name, w in zip(table.feature_names, weights)}
