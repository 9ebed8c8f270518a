"""Feed-forward ReLU network with a sigmoid output, trained by Adam.

Weights use He initialization; the loss is mean binary cross-entropy.
``loss_and_gradient`` exposes the full-batch analytic gradient over a flat
parameter vector for finite-difference verification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linear import sigmoid


def layer_dims(n_inputs: int, hidden: tuple[int, ...]) -> list[tuple[int, int]]:
    sizes = [n_inputs, *hidden, 1]
    return list(zip(sizes[:-1], sizes[1:]))


def init_params(
    n_inputs: int, hidden: tuple[int, ...], rng: np.random.Generator
) -> list[tuple[np.ndarray, np.ndarray]]:
    params = []
    for fan_in, fan_out in layer_dims(n_inputs, hidden):
        w = rng.standard_normal((fan_in, fan_out)) * np.sqrt(2.0 / fan_in)
        params.append((w, np.zeros(fan_out)))
    return params


def flatten_params(params) -> np.ndarray:
    return np.concatenate([np.concatenate([w.ravel(), b]) for w, b in params])


def unflatten_params(flat: np.ndarray, dims: list[tuple[int, int]]):
    params = []
    pos = 0
    for fan_in, fan_out in dims:
        w = flat[pos : pos + fan_in * fan_out].reshape(fan_in, fan_out)
        pos += fan_in * fan_out
        b = flat[pos : pos + fan_out]
        pos += fan_out
        params.append((w, b))
    return params


def _forward(params, X):
    """Return pre-activations z per layer and activations a (a[0] = X)."""
    zs, acts = [], [X]
    a = X
    for i, (w, b) in enumerate(params):
        z = a @ w + b
        zs.append(z)
        a = np.maximum(z, 0.0) if i < len(params) - 1 else z
        acts.append(a)
    return zs, acts


def loss_and_gradient(params, X: np.ndarray, y01: np.ndarray):
    """Mean BCE loss and its gradient with the same (W, b) structure."""
    n = len(y01)
    zs, acts = _forward(params, X)
    logits = zs[-1][:, 0]
    loss = float((np.logaddexp(0.0, logits) - y01 * logits).mean())
    p = sigmoid(logits)
    delta = ((p - y01) / n)[:, None]
    grads = [None] * len(params)
    for i in range(len(params) - 1, -1, -1):
        a_prev = acts[i]
        grads[i] = (a_prev.T @ delta, delta.sum(axis=0))
        if i > 0:
            delta = (delta @ params[i][0].T) * (zs[i - 1] > 0.0)
    return loss, grads


@dataclass(frozen=True)
class NeuralNetState:
    hidden: tuple[int, ...]
    params: list

    def predict_positive(self, X: np.ndarray) -> np.ndarray:
        _, acts = _forward(self.params, X)
        return sigmoid(acts[-1][:, 0])

    def to_dict(self) -> dict:
        return {
            "hidden": list(self.hidden),
            "params": [{"w": w.tolist(), "b": b.tolist()} for w, b in self.params],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NeuralNetState":
        params = [
            (np.array(e["w"], dtype=float), np.array(e["b"], dtype=float)) for e in d["params"]
        ]
        return cls(tuple(d["hidden"]), params)


def fit_neural_net(
    X: np.ndarray, y01: np.ndarray, params_cfg: dict, rng: np.random.Generator
) -> NeuralNetState:
    hidden = tuple(params_cfg["hidden"])
    lr = params_cfg["learning_rate"]
    beta1, beta2, eps = params_cfg["beta1"], params_cfg["beta2"], params_cfg["adam_eps"]
    batch = params_cfg["batch_size"]
    n = len(y01)

    params = init_params(X.shape[1], hidden, rng)
    m = [(np.zeros_like(w), np.zeros_like(b)) for w, b in params]
    v = [(np.zeros_like(w), np.zeros_like(b)) for w, b in params]
    t = 0
    for _ in range(params_cfg["epochs"]):
        order = rng.permutation(n)
        for start in range(0, n, batch):
            idx = order[start : start + batch]
            _, grads = loss_and_gradient(params, X[idx], y01[idx])
            t += 1
            new_params = []
            for layer in range(len(params)):
                pw, pb = params[layer]
                gw, gb = grads[layer]
                mw = beta1 * m[layer][0] + (1 - beta1) * gw
                mb = beta1 * m[layer][1] + (1 - beta1) * gb
                vw = beta2 * v[layer][0] + (1 - beta2) * gw * gw
                vb = beta2 * v[layer][1] + (1 - beta2) * gb * gb
                m[layer] = (mw, mb)
                v[layer] = (vw, vb)
                mw_hat = mw / (1 - beta1**t)
                mb_hat = mb / (1 - beta1**t)
                vw_hat = vw / (1 - beta2**t)
                vb_hat = vb / (1 - beta2**t)
                new_params.append(
                    (
                        pw - lr * mw_hat / (np.sqrt(vw_hat) + eps),
                        pb - lr * mb_hat / (np.sqrt(vb_hat) + eps),
                    )
                )
            params = new_params
    return NeuralNetState(hidden, params)
