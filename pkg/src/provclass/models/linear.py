"""Linear classifiers: full-batch logistic regression, per-sample SGD with
logistic loss, and a Pegasos-style linear SVM with Platt-scaled scores.

All operate on the standardized one-hot encoding; the bias term is never
regularized.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ..errors import ConvergenceWarning


def sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _sigmoid_scalar(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def logistic_loss_grad(w: np.ndarray, b: float, X: np.ndarray, y01: np.ndarray, l2: float):
    """Mean log-loss + (l2/2)||w||^2 and its gradient in (w, b)."""
    n = len(y01)
    z = X @ w + b
    loss = float(np.logaddexp(0.0, z).mean() - (y01 * z).mean() + 0.5 * l2 * (w @ w))
    p = sigmoid(z)
    resid = (p - y01) / n
    gw = X.T @ resid + l2 * w
    gb = float(resid.sum())
    return loss, gw, gb


@dataclass(frozen=True)
class LinearState:
    """Shared predictor for the linear families: sigmoid(a * (x.w + b) + c)."""

    w: np.ndarray
    b: float
    scale: float = 1.0  # Platt slope for SVM scores; 1 for the logistic families
    offset: float = 0.0

    def predict_positive(self, X: np.ndarray) -> np.ndarray:
        return sigmoid(self.scale * (X @ self.w + self.b) + self.offset)

    def to_dict(self) -> dict:
        return {"w": self.w.tolist(), "b": self.b, "scale": self.scale, "offset": self.offset}

    @classmethod
    def from_dict(cls, d: dict) -> "LinearState":
        return cls(np.array(d["w"], dtype=float), float(d["b"]), float(d["scale"]), float(d["offset"]))


def fit_logistic_regression(X: np.ndarray, y01: np.ndarray, params: dict) -> LinearState:
    """Full-batch gradient descent with Armijo backtracking line search."""
    l2, tol = params["l2"], params["tol"]
    w = np.zeros(X.shape[1])
    b = 0.0
    loss, gw, gb = logistic_loss_grad(w, b, X, y01, l2)
    converged = False
    for _ in range(params["max_epochs"]):
        gnorm2 = float(gw @ gw + gb * gb)
        if gnorm2 == 0.0:
            converged = True
            break
        step = 1.0
        while step > 1e-12:
            w2 = w - step * gw
            b2 = b - step * gb
            new_loss, gw2, gb2 = logistic_loss_grad(w2, b2, X, y01, l2)
            if new_loss <= loss - 1e-4 * step * gnorm2:
                break
            step *= 0.5
        w, b, gw, gb = w2, b2, gw2, gb2
        if abs(loss - new_loss) < tol:
            loss = new_loss
            converged = True
            break
        loss = new_loss
    if not converged:
        warnings.warn("logistic regression stopped at max_epochs", ConvergenceWarning, stacklevel=2)
    return LinearState(w, float(b))


def fit_sgd_linear(
    X: np.ndarray, y01: np.ndarray, params: dict, rng: np.random.Generator
) -> LinearState:
    """Per-sample SGD on logistic loss, learning rate decaying as 1/(1+epoch)."""
    l2, lr0 = params["l2"], params["learning_rate"]
    n = len(y01)
    w = np.zeros(X.shape[1])
    b = 0.0
    for epoch in range(params["epochs"]):
        lr = lr0 / (1.0 + epoch)
        for i in rng.permutation(n):
            p = _sigmoid_scalar(float(X[i] @ w) + b)
            resid = p - y01[i]
            w *= 1.0 - lr * l2
            w -= (lr * resid) * X[i]
            b -= lr * resid
    return LinearState(w, float(b))


def fit_linear_svm(
    X: np.ndarray, y01: np.ndarray, params: dict, rng: np.random.Generator
) -> LinearState:
    """Pegasos sub-gradient hinge training + Platt sigmoid on training scores."""
    lam = params["l2"]
    n = len(y01)
    ypm = 2.0 * y01 - 1.0
    w = np.zeros(X.shape[1])
    b = 0.0
    t = 0
    for _ in range(params["epochs"]):
        for i in rng.permutation(n):
            t += 1
            eta = 1.0 / (lam * t)
            margin = ypm[i] * (float(X[i] @ w) + b)
            w *= 1.0 - eta * lam
            if margin < 1.0:
                w += eta * ypm[i] * X[i]
                b += eta * ypm[i]
    scores = X @ w + b
    scale, offset = _platt(scores, y01)
    return LinearState(w, float(b), scale, offset)


def _platt(scores: np.ndarray, y01: np.ndarray) -> tuple[float, float]:
    """Fit p = sigmoid(a*s + c) by unregularized logistic loss on the scores."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        state = fit_logistic_regression(
            scores.reshape(-1, 1), y01, {"l2": 0.0, "tol": 1e-9, "max_epochs": 200}
        )
    return float(state.w[0]), float(state.b)
