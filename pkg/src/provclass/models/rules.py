"""Beam-search rule induction (unordered rule list with a prior fallback).

Rules are conjunctions of selectors: equality on categorical columns,
threshold tests on numeric ones (candidate thresholds are midpoints, capped
at 31 quantile-derived cut points per column). Rule quality is Laplace
accuracy; per class, rules are learned greedily and covered examples of that
class are removed until no rule beats the base rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..tabular import ColumnKind, DataTable

_MAX_THRESHOLDS = 31


@dataclass(frozen=True)
class Selector:
    op: str  # "eq" | "le" | "gt"
    column: str
    value: object

    def matches(self, table: DataTable) -> np.ndarray:
        col = table.column(self.column)
        if self.op == "eq":
            return np.array([v == self.value for v in col.values], dtype=bool)
        vals = col.values.astype(float)
        return vals <= self.value if self.op == "le" else vals > self.value

    def to_dict(self) -> dict:
        return {"op": self.op, "column": self.column, "value": self.value}

    @classmethod
    def from_dict(cls, d: dict) -> "Selector":
        return cls(d["op"], d["column"], d["value"])


@dataclass(frozen=True)
class Rule:
    selectors: tuple[Selector, ...]
    label: str
    p_positive: float  # positive-class share of the training rows it covers

    def matches(self, table: DataTable) -> np.ndarray:
        mask = np.ones(table.row_count, dtype=bool)
        for sel in self.selectors:
            mask &= sel.matches(table)
        return mask

    def to_dict(self) -> dict:
        return {
            "selectors": [s.to_dict() for s in self.selectors],
            "label": self.label,
            "p_positive": self.p_positive,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Rule":
        return cls(
            tuple(Selector.from_dict(s) for s in d["selectors"]),
            d["label"],
            float(d["p_positive"]),
        )


def _candidate_selectors(table: DataTable) -> list[Selector]:
    selectors = []
    for name in table.feature_names:
        col = table.column(name)
        if col.kind is ColumnKind.CATEGORICAL:
            for v in sorted(set(col.values.tolist())):
                selectors.append(Selector("eq", name, v))
        else:
            vals = np.sort(np.unique(col.values.astype(float)))
            if len(vals) < 2:
                continue
            mids = (vals[:-1] + vals[1:]) / 2.0
            if len(mids) > _MAX_THRESHOLDS:
                qs = np.quantile(mids, [j / (_MAX_THRESHOLDS + 1) for j in range(1, _MAX_THRESHOLDS + 1)])
                mids = np.unique(qs)
            for t in mids:
                selectors.append(Selector("le", name, float(t)))
                selectors.append(Selector("gt", name, float(t)))
    return selectors


def _laplace(covered: np.ndarray, cls_mask: np.ndarray) -> float:
    total = int(covered.sum())
    hits = int(cls_mask[covered].sum())
    return (hits + 1.0) / (total + 2.0)


def _find_best_rule(
    sel_masks: list[np.ndarray],
    selectors: list[Selector],
    alive: np.ndarray,
    is_cls: np.ndarray,
    beam_width: int,
    min_coverage: int,
    max_conditions: int,
):
    """Beam search for one rule; returns (selector indices, mask) or None."""
    n = len(alive)
    cls_alive = is_cls & alive
    base_quality = _laplace(alive, cls_alive)
    beam = [(np.ones(n, dtype=bool), ())]
    best = None  # (quality, selector index tuple, mask)
    for _ in range(max_conditions):
        candidates = []  # (quality, used tuple, parent index); masks rebuilt for winners
        for parent_idx, (mask, used) in enumerate(beam):
            parent_cov = int((mask & alive).sum())
            for si, smask in enumerate(sel_masks):
                if si in used:
                    continue
                child_alive = mask & smask & alive
                cov = int(child_alive.sum())
                if cov < min_coverage or cov == parent_cov:
                    continue
                quality = _laplace(child_alive, cls_alive)
                candidates.append((quality, used + (si,), parent_idx))
        if not candidates:
            break
        candidates.sort(key=lambda c: (-c[0], len(c[1]), c[1]))
        top_q, top_used, top_parent = candidates[0]
        if top_q > base_quality and (best is None or top_q > best[0]):
            best = (top_q, top_used, beam[top_parent][0] & sel_masks[top_used[-1]])
        beam = [
            (beam[parent][0] & sel_masks[used[-1]], used)
            for _, used, parent in candidates[:beam_width]
        ]
    if best is None:
        return None
    return [selectors[i] for i in best[1]], best[2]


@dataclass(frozen=True)
class CN2State:
    rules: list
    prior_positive: float
    positive_label: str

    def predict_positive(self, table: DataTable) -> np.ndarray:
        out = np.full(table.row_count, self.prior_positive)
        unassigned = np.ones(table.row_count, dtype=bool)
        for rule in self.rules:
            mask = rule.matches(table) & unassigned
            out[mask] = rule.p_positive
            unassigned &= ~mask
            if not unassigned.any():
                break
        return out

    def to_dict(self) -> dict:
        return {
            "rules": [r.to_dict() for r in self.rules],
            "prior_positive": self.prior_positive,
            "positive_label": self.positive_label,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CN2State":
        return cls(
            [Rule.from_dict(r) for r in d["rules"]],
            float(d["prior_positive"]),
            d["positive_label"],
        )


def fit_cn2(table: DataTable, params: dict) -> CN2State:
    y_pos = table.positive_mask()
    labels = table.target_column.values
    classes = [table.positive_label] + sorted(set(labels.tolist()) - {table.positive_label})
    selectors = _candidate_selectors(table)
    sel_masks = [s.matches(table) for s in selectors]

    rules: list[Rule] = []
    for cls in classes:
        is_cls = np.array([v == cls for v in labels], dtype=bool)
        alive = np.ones(table.row_count, dtype=bool)
        while (is_cls & alive).any() and len(rules) < 200:
            found = _find_best_rule(
                sel_masks,
                selectors,
                alive,
                is_cls,
                params["beam_width"],
                params["min_coverage"],
                params["max_conditions"],
            )
            if found is None:
                break
            sels, mask = found
            covered_pos = int(y_pos[mask].sum())
            rules.append(Rule(tuple(sels), cls, covered_pos / int(mask.sum())))
            alive &= ~(mask & is_cls)
    return CN2State(rules, float(y_pos.mean()), table.positive_label)
