"""Finite-difference verification of the analytic loss gradients.

Checks the differentiable families (logistic regression, SGD with logistic
loss, and the neural net) at random parameter points. For the network,
points are resampled until every hidden pre-activation is safely away from
the ReLU kink, so the central difference never straddles a nondifferentiable
point.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from .linear import logistic_loss_grad
from .neural import flatten_params, init_params, layer_dims, loss_and_gradient, unflatten_params
from .spec import DEFAULT_PARAMS

_STEP = 1e-5
_KINK_MARGIN = 3e-4

DIFFERENTIABLE_FAMILIES = ("logistic_regression", "sgd_linear", "neural_net")


def _max_relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    scale = max(np.abs(analytic).max(), np.abs(numeric).max(), 1e-12)
    return float(np.abs(analytic - numeric).max() / scale)


def _central_difference(loss_fn, theta: np.ndarray) -> np.ndarray:
    grad = np.empty_like(theta)
    for i in range(len(theta)):
        probe = theta.copy()
        probe[i] = theta[i] + _STEP
        up = loss_fn(probe)
        probe[i] = theta[i] - _STEP
        down = loss_fn(probe)
        grad[i] = (up - down) / (2.0 * _STEP)
    return grad


def _linear_point(rng: np.random.Generator, n_features: int) -> np.ndarray:
    return rng.normal(scale=0.5, size=n_features + 1)


def _linear_check(X, y01, l2, theta) -> float:
    w, b = theta[:-1], float(theta[-1])
    _, gw, gb = logistic_loss_grad(w, b, X, y01, l2)
    analytic = np.concatenate([gw, [gb]])

    def loss_fn(t):
        return logistic_loss_grad(t[:-1], float(t[-1]), X, y01, l2)[0]

    return _max_relative_error(analytic, _central_difference(loss_fn, theta))


def _net_point(
    rng: np.random.Generator, X: np.ndarray, hidden: tuple[int, ...]
) -> np.ndarray:
    """Sample parameters whose hidden pre-activations all clear the kink margin."""
    for _ in range(1000):
        params = init_params(X.shape[1], hidden, rng)
        a = X
        clear = True
        for i, (w, b) in enumerate(params):
            z = a @ w + b
            if i < len(params) - 1:
                if np.abs(z).min() <= _KINK_MARGIN:
                    clear = False
                    break
                a = np.maximum(z, 0.0)
        if clear:
            return flatten_params(params)
    raise RuntimeError("could not sample a kink-free parameter point")


def _net_check(X, y01, hidden, theta) -> float:
    dims = layer_dims(X.shape[1], hidden)
    _, grads = loss_and_gradient(unflatten_params(theta, dims), X, y01)
    analytic = flatten_params(grads)

    def loss_fn(t):
        return loss_and_gradient(unflatten_params(t, dims), X, y01)[0]

    return _max_relative_error(analytic, _central_difference(loss_fn, theta))


def numeric_gradient_check(
    family: str,
    X: np.ndarray,
    y01: np.ndarray,
    n_points: int = 20,
    seed: int = 0,
    hidden: tuple[int, ...] | None = None,
) -> float:
    """Max relative error between analytic and central-difference gradients."""
    if family not in DIFFERENTIABLE_FAMILIES:
        raise ConfigError(
            f"gradient check supports {DIFFERENTIABLE_FAMILIES}, got {family!r}"
        )
    if len(X) > 64:
        raise ConfigError("gradient check instances are limited to 64 rows")
    rng = np.random.default_rng(seed)
    worst = 0.0
    if family == "neural_net":
        hidden = hidden or tuple(DEFAULT_PARAMS["neural_net"]["hidden"])
        for _ in range(n_points):
            theta = _net_point(rng, X, hidden)
            worst = max(worst, _net_check(X, y01, hidden, theta))
    else:
        l2 = DEFAULT_PARAMS[family]["l2"]
        for _ in range(n_points):
            theta = _linear_point(rng, X.shape[1])
            worst = max(worst, _linear_check(X, y01, l2, theta))
    return worst
