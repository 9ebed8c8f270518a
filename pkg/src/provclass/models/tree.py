"""CART trees over encoded matrices, shared by the tree-based families.

Splits are binary ``x <= threshold`` with thresholds at midpoints between
consecutive distinct sorted values. Classification uses Gini impurity,
regression uses within-node squared error. Zero-gain splits are allowed
(an impure node keeps splitting while any valid split exists), which lets
an unbounded tree fit XOR-style interactions exactly.

Trees are stored as flat arrays (feature < 0 marks a leaf) and grown by a
numba kernel. Randomized feature subsampling consumes a caller-supplied
buffer of random integers, so growth is deterministic and thread-safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba as nb
import numpy as np

_NO_DEPTH_LIMIT = 1 << 30


@nb.njit(cache=True)
def _scan_feature(xs: np.ndarray, ys: np.ndarray, min_leaf: int, gini: bool):
    """Best (score, threshold) along one sorted feature; inf score if none."""
    m = len(xs)
    best_score = np.inf
    best_thr = 0.0
    total = 0.0
    total_sq = 0.0
    for t in range(m):
        total += ys[t]
        total_sq += ys[t] * ys[t]
    run = 0.0
    run_sq = 0.0
    for i in range(m - 1):
        run += ys[i]
        run_sq += ys[i] * ys[i]
        nl = i + 1
        nr = m - nl
        if xs[i] >= xs[i + 1] or nl < min_leaf or nr < min_leaf:
            continue
        if gini:
            pl = run / nl
            pr = (total - run) / nr
            gl = 1.0 - pl * pl - (1.0 - pl) * (1.0 - pl)
            gr = 1.0 - pr * pr - (1.0 - pr) * (1.0 - pr)
            score = (nl * gl + nr * gr) / m
        else:
            sse_l = run_sq - run * run / nl
            sse_r = (total_sq - run_sq) - (total - run) * (total - run) / nr
            score = sse_l + sse_r
        if score < best_score:
            best_score = score
            best_thr = (xs[i] + xs[i + 1]) / 2.0
    return best_score, best_thr


@nb.njit(cache=True)
def _grow(
    X: np.ndarray,
    y: np.ndarray,
    max_depth: int,
    min_leaf: int,
    gini: bool,
    fps: int,
    rand_buf: np.ndarray,
):
    n, p = X.shape
    max_nodes = 2 * n + 2
    feature = np.full(max_nodes, -1, np.int64)
    threshold = np.zeros(max_nodes)
    left = np.full(max_nodes, -1, np.int64)
    right = np.full(max_nodes, -1, np.int64)
    value = np.zeros(max_nodes)

    idx = np.arange(n)
    st_node = np.empty(max_nodes, np.int64)
    st_lo = np.empty(max_nodes, np.int64)
    st_hi = np.empty(max_nodes, np.int64)
    st_depth = np.empty(max_nodes, np.int64)
    st_node[0], st_lo[0], st_hi[0], st_depth[0] = 0, 0, n, 0
    sp = 1
    n_nodes = 1
    rb_pos = 0
    perm = np.empty(p, np.int64)
    xs = np.empty(n)
    ys = np.empty(n)
    tmp = np.empty(n, np.int64)

    while sp > 0:
        sp -= 1
        node, lo, hi, depth = st_node[sp], st_lo[sp], st_hi[sp], st_depth[sp]
        m = hi - lo
        total = 0.0
        for t in range(lo, hi):
            total += y[idx[t]]
        value[node] = total / m
        pure = True
        y0 = y[idx[lo]]
        for t in range(lo + 1, hi):
            if y[idx[t]] != y0:
                pure = False
                break
        if pure or depth >= max_depth or m < 2 * min_leaf:
            continue

        if fps < p:
            for j in range(p):
                perm[j] = j
            for j in range(fps):  # partial Fisher-Yates off the random buffer
                r = rand_buf[rb_pos % len(rand_buf)]
                rb_pos += 1
                k = j + int(r % np.uint64(p - j))
                perm[j], perm[k] = perm[k], perm[j]
            # ascending candidate order keeps feature tie-breaks deterministic
            cand = np.sort(perm[:fps])
        else:
            for j in range(p):
                perm[j] = j
            cand = perm[:p]

        best_score = np.inf
        best_f = -1
        best_thr = 0.0
        for ci in range(len(cand)):
            f = cand[ci]
            for t in range(m):
                row = idx[lo + t]
                xs[t] = X[row, f]
                ys[t] = y[row]
            order = np.argsort(xs[:m])
            sx = np.empty(m)
            sy = np.empty(m)
            for t in range(m):
                sx[t] = xs[order[t]]
                sy[t] = ys[order[t]]
            score, thr = _scan_feature(sx, sy, min_leaf, gini)
            if score < best_score:
                best_score = score
                best_f = f
                best_thr = thr
        if best_f < 0:
            continue

        n_left = 0
        for t in range(lo, hi):
            if X[idx[t], best_f] <= best_thr:
                tmp[n_left] = idx[t]
                n_left += 1
        n_right = 0
        for t in range(lo, hi):
            if X[idx[t], best_f] > best_thr:
                tmp[n_left + n_right] = idx[t]
                n_right += 1
        for t in range(m):
            idx[lo + t] = tmp[t]

        lc, rc = n_nodes, n_nodes + 1
        n_nodes += 2
        feature[node] = best_f
        threshold[node] = best_thr
        left[node] = lc
        right[node] = rc
        st_node[sp], st_lo[sp], st_hi[sp], st_depth[sp] = rc, lo + n_left, hi, depth + 1
        sp += 1
        st_node[sp], st_lo[sp], st_hi[sp], st_depth[sp] = lc, lo, lo + n_left, depth + 1
        sp += 1

    return feature[:n_nodes], threshold[:n_nodes], left[:n_nodes], right[:n_nodes], value[:n_nodes]


@nb.njit(cache=True)
def _route(
    X: np.ndarray,
    feature: np.ndarray,
    threshold: np.ndarray,
    left: np.ndarray,
    right: np.ndarray,
) -> np.ndarray:
    out = np.empty(len(X), np.int64)
    for i in range(len(X)):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = node
    return out


@dataclass(frozen=True)
class Tree:
    """Flat-array binary tree; node 0 is the root, feature -1 marks leaves."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    @property
    def n_leaves(self) -> int:
        return int((self.feature < 0).sum())

    def depth(self) -> int:
        depths = np.zeros(len(self.feature), dtype=int)
        best = 0
        for node in range(len(self.feature)):
            if self.feature[node] >= 0:
                depths[self.left[node]] = depths[node] + 1
                depths[self.right[node]] = depths[node] + 1
            else:
                best = max(best, depths[node])
        return best

    def leaf_ids(self, X: np.ndarray) -> np.ndarray:
        return _route(np.ascontiguousarray(X, dtype=np.float64),
                      self.feature, self.threshold, self.left, self.right)

    def to_dict(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Tree":
        return cls(
            np.array(d["feature"], dtype=np.int64),
            np.array(d["threshold"], dtype=float),
            np.array(d["left"], dtype=np.int64),
            np.array(d["right"], dtype=np.int64),
            np.array(d["value"], dtype=float),
        )


def build_tree(
    X: np.ndarray,
    y: np.ndarray,
    task: str = "gini",
    max_depth: int | None = None,
    min_leaf: int = 1,
    features_per_split: int | None = None,
    rng: np.random.Generator | None = None,
) -> Tree:
    """Grow a CART tree. ``y`` is 0/1 for gini, arbitrary reals for mse."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    p = X.shape[1]
    fps = p if features_per_split is None else min(features_per_split, p)
    if fps < p:
        # generous buffer: one draw per sampled feature per potential node
        rand_buf = rng.integers(0, 2**63 - 1, size=(2 * len(y) + 2) * fps, dtype=np.uint64)
    else:
        rand_buf = np.zeros(1, dtype=np.uint64)
    depth_cap = _NO_DEPTH_LIMIT if max_depth is None else max_depth
    arrays = _grow(X, y, depth_cap, min_leaf, task == "gini", fps, rand_buf)
    return Tree(*arrays)


def predict_tree(tree: Tree, X: np.ndarray) -> np.ndarray:
    return tree.value[tree.leaf_ids(X)]
