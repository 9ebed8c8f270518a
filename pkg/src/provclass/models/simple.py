"""Constant, k-nearest-neighbour, and mixed-type naive Bayes classifiers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..tabular import ColumnKind, DataTable


@dataclass(frozen=True)
class ConstantState:
    """Majority-class predictor; probability is the training positive share."""

    p_positive: float

    def predict_positive(self, X) -> np.ndarray:
        n = len(X.columns[0]) if isinstance(X, DataTable) else len(X)
        return np.full(n, self.p_positive)

    def to_dict(self) -> dict:
        return {"p_positive": self.p_positive}

    @classmethod
    def from_dict(cls, d: dict) -> "ConstantState":
        return cls(float(d["p_positive"]))


def fit_constant(y01: np.ndarray) -> ConstantState:
    return ConstantState(float(y01.mean()))


@dataclass(frozen=True)
class KNNState:
    """Vote fraction among the k nearest training rows (ties by row index)."""

    k: int
    train_x: np.ndarray
    train_y: np.ndarray

    def predict_positive(self, X: np.ndarray) -> np.ndarray:
        k = min(self.k, len(self.train_x))
        sq_train = np.einsum("ij,ij->i", self.train_x, self.train_x)
        out = np.empty(len(X))
        for start in range(0, len(X), 256):
            chunk = X[start : start + 256]
            d2 = (
                np.einsum("ij,ij->i", chunk, chunk)[:, None]
                + sq_train[None, :]
                - 2.0 * chunk @ self.train_x.T
            )
            order = np.argsort(d2, axis=1, kind="stable")[:, :k]
            out[start : start + 256] = self.train_y[order].mean(axis=1)
        return out

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "train_x": self.train_x.tolist(),
            "train_y": self.train_y.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "KNNState":
        return cls(int(d["k"]), np.array(d["train_x"], dtype=float), np.array(d["train_y"], dtype=float))


def fit_knn(X: np.ndarray, y01: np.ndarray, params: dict) -> KNNState:
    return KNNState(params["k"], X.copy(), y01.astype(float))


@dataclass(frozen=True)
class NaiveBayesState:
    """Gaussian numeric likelihoods, Laplace-smoothed categorical likelihoods."""

    log_prior_pos: float
    log_prior_neg: float
    numeric: dict  # name -> {"pos": (mean, var), "neg": (mean, var)}
    categorical: dict  # name -> {"n_cats": K, "pos": {v: count}, "neg": ..., "pos_n": n, "neg_n": n}
    alpha: float

    def predict_positive(self, table: DataTable) -> np.ndarray:
        n = table.row_count
        log_pos = np.full(n, self.log_prior_pos)
        log_neg = np.full(n, self.log_prior_neg)
        for name, stat in self.numeric.items():
            x = table.column(name).values.astype(float)
            for side, acc in (("pos", log_pos), ("neg", log_neg)):
                mean, var = stat[side]
                acc += -0.5 * np.log(2.0 * np.pi * var) - (x - mean) ** 2 / (2.0 * var)
        for name, stat in self.categorical.items():
            vals = table.column(name).values
            k_cats = stat["n_cats"]
            for side, acc in (("pos", log_pos), ("neg", log_neg)):
                counts, total = stat[side], stat[f"{side}_n"]
                denom = total + self.alpha * k_cats
                ll = np.array(
                    [np.log((counts.get(v, 0) + self.alpha) / denom) for v in vals]
                )
                acc += ll
        # softmax over the two classes
        m = np.maximum(log_pos, log_neg)
        ep = np.exp(log_pos - m)
        en = np.exp(log_neg - m)
        return ep / (ep + en)

    def to_dict(self) -> dict:
        return {
            "log_prior_pos": self.log_prior_pos,
            "log_prior_neg": self.log_prior_neg,
            "numeric": self.numeric,
            "categorical": self.categorical,
            "alpha": self.alpha,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NaiveBayesState":
        num = {k: {"pos": tuple(v["pos"]), "neg": tuple(v["neg"])} for k, v in d["numeric"].items()}
        return cls(
            float(d["log_prior_pos"]),
            float(d["log_prior_neg"]),
            num,
            d["categorical"],
            float(d["alpha"]),
        )


def fit_naive_bayes(table: DataTable, params: dict) -> NaiveBayesState:
    pos_mask = table.positive_mask()
    n = table.row_count
    n_pos, n_neg = int(pos_mask.sum()), int((~pos_mask).sum())
    floor = params["var_floor"]
    numeric: dict = {}
    categorical: dict = {}
    for name in table.feature_names:
        col = table.column(name)
        if col.kind is ColumnKind.NUMERIC:
            x = col.values.astype(float)
            stat = {}
            for side, mask in (("pos", pos_mask), ("neg", ~pos_mask)):
                vals = x[mask]
                mean = float(vals.mean()) if len(vals) else 0.0
                var = float(max(vals.var(), floor)) if len(vals) else floor
                stat[side] = (mean, var)
            numeric[name] = stat
        else:
            cats = sorted(set(col.values.tolist()))
            stat = {"n_cats": len(cats)}
            for side, mask in (("pos", pos_mask), ("neg", ~pos_mask)):
                counts: dict[str, int] = {}
                for v in col.values[mask]:
                    counts[v] = counts.get(v, 0) + 1
                stat[side] = counts
                stat[f"{side}_n"] = int(mask.sum())
            categorical[name] = stat
    return NaiveBayesState(
        log_prior_pos=float(np.log(n_pos / n)),
        log_prior_neg=float(np.log(n_neg / n)),
        numeric=numeric,
        categorical=categorical,
        alpha=params["alpha"],
    )
