"""Tree ensembles: bootstrap random forest, log-loss gradient boosting, and
discrete AdaBoost over depth-1 stumps."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..seeding import derive_seed
from .linear import sigmoid
from .tree import Tree, build_tree, predict_tree


@dataclass(frozen=True)
class RandomForestState:
    trees: list

    def predict_positive(self, X: np.ndarray) -> np.ndarray:
        acc = np.zeros(len(X))
        for tree in self.trees:
            acc += predict_tree(tree, X)
        return acc / len(self.trees)

    def to_dict(self) -> dict:
        return {"trees": [t.to_dict() for t in self.trees]}

    @classmethod
    def from_dict(cls, d: dict) -> "RandomForestState":
        return cls([Tree.from_dict(t) for t in d["trees"]])


def fit_random_forest(
    X: np.ndarray, y01: np.ndarray, params: dict, seed: int
) -> RandomForestState:
    n, p = X.shape
    fps = params["features_per_split"]
    if fps == "sqrt":
        fps = max(1, int(math.isqrt(p)))
    trees = []
    for t in range(params["n_trees"]):
        rng = np.random.default_rng(derive_seed(seed, "rf-tree", t))
        if params["bootstrap"]:
            idx = rng.integers(0, n, size=n)
            xt, yt = X[idx], y01[idx]
        else:
            xt, yt = X, y01
        trees.append(
            build_tree(
                xt,
                yt,
                task="gini",
                max_depth=params["max_depth"],
                min_leaf=params["min_leaf"],
                features_per_split=fps,
                rng=rng,
            )
        )
    return RandomForestState(trees)


@dataclass(frozen=True)
class GradientBoostingState:
    base_logit: float
    learning_rate: float
    trees: list

    def predict_positive(self, X: np.ndarray) -> np.ndarray:
        score = np.full(len(X), self.base_logit)
        for tree in self.trees:
            score += self.learning_rate * predict_tree(tree, X)
        return sigmoid(score)

    def to_dict(self) -> dict:
        return {
            "base_logit": self.base_logit,
            "learning_rate": self.learning_rate,
            "trees": [t.to_dict() for t in self.trees],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GradientBoostingState":
        return cls(
            float(d["base_logit"]),
            float(d["learning_rate"]),
            [Tree.from_dict(t) for t in d["trees"]],
        )


def fit_gradient_boosting(X: np.ndarray, y01: np.ndarray, params: dict) -> GradientBoostingState:
    """Binary log-loss boosting; leaf values are one Newton step."""
    prior = float(np.clip(y01.mean(), 1e-12, 1 - 1e-12))
    base = math.log(prior / (1.0 - prior))
    score = np.full(len(y01), base)
    lr = params["learning_rate"]
    trees = []
    for _ in range(params["n_rounds"]):
        p = sigmoid(score)
        residual = y01 - p
        tree = build_tree(
            X, residual, task="mse", max_depth=params["max_depth"], min_leaf=params["min_leaf"]
        )
        leaf_of = tree.leaf_ids(X)
        hessian = p * (1.0 - p)
        for node in np.unique(leaf_of):
            members = leaf_of == node
            denom = float(hessian[members].sum())
            num = float(residual[members].sum())
            tree.value[node] = num / denom if denom > 1e-12 else 0.0
        score = score + lr * tree.value[leaf_of]
        trees.append(tree)
    return GradientBoostingState(base, lr, trees)


@dataclass(frozen=True)
class Stump:
    """Depth-1 threshold rule predicting +/-1; feature -1 means constant."""

    feature: int
    threshold: float
    left_sign: float  # prediction where x <= threshold; right is its negation
    constant_sign: float = 0.0  # used when feature == -1

    def predict(self, X: np.ndarray) -> np.ndarray:
        if self.feature < 0:
            return np.full(len(X), self.constant_sign)
        left = X[:, self.feature] <= self.threshold
        return np.where(left, self.left_sign, -self.left_sign)

    def to_dict(self) -> dict:
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left_sign": self.left_sign,
            "constant_sign": self.constant_sign,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Stump":
        return cls(
            int(d["feature"]), float(d["threshold"]), float(d["left_sign"]), float(d["constant_sign"])
        )


def _presort(X: np.ndarray) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Per-feature (sort order, sorted values, valid-split mask), computed once."""
    pres = []
    for f in range(X.shape[1]):
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        pres.append((order, xs, xs[:-1] < xs[1:]))
    return pres


def fit_stump(X: np.ndarray, ypm: np.ndarray, weights: np.ndarray, presorted=None) -> Stump:
    """Weighted-error-minimizing stump; ties keep the earliest candidate."""
    if presorted is None:
        presorted = _presort(X)
    is_pos = ypm > 0
    wpos = weights * is_pos
    wneg = weights * ~is_pos
    w_pos = float(wpos.sum())
    w_neg = float(wneg.sum())
    # constant candidates first: all +1 (err = negative weight) then all -1
    best_err, best = w_neg, Stump(-1, 0.0, 0.0, 1.0)
    if w_pos < best_err:
        best_err, best = w_pos, Stump(-1, 0.0, 0.0, -1.0)
    for f in range(X.shape[1]):
        order, xs, valid = presorted[f]
        if not valid.any():
            continue
        left_pos = np.cumsum(wpos[order])[:-1]
        left_neg = np.cumsum(wneg[order])[:-1]
        # left predicted +1: errors are left negatives + right positives
        err_a = np.where(valid, left_neg + (w_pos - left_pos), np.inf)
        err_b = np.where(valid, left_pos + (w_neg - left_neg), np.inf)
        ia, ib = int(np.argmin(err_a)), int(np.argmin(err_b))
        if err_a[ia] < best_err:
            best_err = float(err_a[ia])
            best = Stump(f, float((xs[ia] + xs[ia + 1]) / 2.0), 1.0)
        if err_b[ib] < best_err:
            best_err = float(err_b[ib])
            best = Stump(f, float((xs[ib] + xs[ib + 1]) / 2.0), -1.0)
    return best


@dataclass(frozen=True)
class AdaBoostState:
    stumps: list
    alphas: list

    def predict_positive(self, X: np.ndarray) -> np.ndarray:
        score = np.zeros(len(X))
        for stump, alpha in zip(self.stumps, self.alphas):
            score += alpha * stump.predict(X)
        return sigmoid(score)

    def to_dict(self) -> dict:
        return {"stumps": [s.to_dict() for s in self.stumps], "alphas": list(self.alphas)}

    @classmethod
    def from_dict(cls, d: dict) -> "AdaBoostState":
        return cls([Stump.from_dict(s) for s in d["stumps"]], [float(a) for a in d["alphas"]])


def fit_adaboost(X: np.ndarray, y01: np.ndarray, params: dict) -> AdaBoostState:
    n = len(y01)
    ypm = 2.0 * y01 - 1.0
    weights = np.full(n, 1.0 / n)
    presorted = _presort(X)
    stumps, alphas = [], []
    for _ in range(params["n_rounds"]):
        stump = fit_stump(X, ypm, weights, presorted)
        pred = stump.predict(X)
        miss = pred != ypm
        err = float(np.clip(weights[miss].sum(), 1e-10, 1.0 - 1e-10))
        alpha = math.log((1.0 - err) / err)
        if alpha <= 0.0:
            if not stumps:  # keep one stump so the model is defined
                stumps.append(stump)
                alphas.append(0.0)
            break
        stumps.append(stump)
        alphas.append(alpha)
        if not miss.any():  # perfect stump: no reweighting can improve
            break
        weights = weights * np.exp(alpha * miss)
        weights /= weights.sum()
    return AdaBoostState(stumps, alphas)
