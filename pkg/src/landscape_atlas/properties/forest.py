"""Random-forest classifier: seeded, Gini-split, JSON-serializable trees.

Trees are stored as parallel arrays.  ``feature[i] == -1`` marks a leaf;
leaves carry per-class counts, internal nodes carry a threshold and the
indices of their children.  Test points with ``x[feature] <= threshold``
descend left.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._seeds import NS_FOREST, rng_for


@dataclass(frozen=True)
class Tree:
    feature: tuple[int, ...]
    threshold: tuple[float, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    counts: tuple[tuple[int, ...], ...]

    def leaf_counts(self, x: np.ndarray) -> tuple[int, ...]:
        i = 0
        while self.feature[i] >= 0:
            i = self.left[i] if x[self.feature[i]] <= self.threshold[i] else self.right[i]
        return self.counts[i]

    def to_dict(self) -> dict:
        return {
            "feature": list(self.feature),
            "threshold": list(self.threshold),
            "left": list(self.left),
            "right": list(self.right),
            "counts": [list(c) for c in self.counts],
        }

    @staticmethod
    def from_dict(d: dict) -> "Tree":
        return Tree(
            feature=tuple(d["feature"]),
            threshold=tuple(d["threshold"]),
            left=tuple(d["left"]),
            right=tuple(d["right"]),
            counts=tuple(tuple(c) for c in d["counts"]),
        )


def _best_split(X: np.ndarray, y: np.ndarray, idx: np.ndarray,
                features: np.ndarray, n_classes: int):
    """Lowest weighted-Gini axis split among the candidate features.

    Returns (feature, threshold) or None when every candidate feature is
    constant on the node.  Ties keep the earliest candidate feature and
    the lowest cut position, so the result is deterministic."""
    m = len(idx)
    yn = y[idx]
    best_g = math.inf
    best = None
    for f in features:
        v = X[idx, f]
        order = np.argsort(v, kind="stable")
        vs = v[order]
        if vs[0] == vs[-1]:
            continue
        onehot = np.zeros((m, n_classes))
        onehot[np.arange(m), yn[order]] = 1.0
        left = np.cumsum(onehot, axis=0)[:-1]
        right = left[-1] + onehot[-1] - left
        nl = np.arange(1, m, dtype=float)
        nr = m - nl
        gl = 1.0 - np.sum((left / nl[:, None]) ** 2, axis=1)
        gr = 1.0 - np.sum((right / nr[:, None]) ** 2, axis=1)
        g = (nl * gl + nr * gr) / m
        g[vs[1:] == vs[:-1]] = math.inf
        i = int(np.argmin(g))
        if g[i] < best_g:
            best_g = g[i]
            best = (int(f), float((vs[i] + vs[i + 1]) / 2.0))
    return best


def grow_tree(X: np.ndarray, y: np.ndarray, n_classes: int,
              rng: np.random.Generator) -> Tree:
    """One CART tree on a bootstrap resample of (X, y); no depth limit,
    leaf minimum 1, per-split feature subset of size ceil(sqrt(F))."""
    n, F = X.shape
    k = math.ceil(math.sqrt(F))
    boot = rng.integers(0, n, size=n)

    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    counts: list[tuple[int, ...]] = []

    def new_node() -> int:
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        counts.append(())
        return len(feature) - 1

    root = new_node()
    stack = [(root, boot)]
    while stack:
        node, idx = stack.pop()
        dist = np.bincount(y[idx], minlength=n_classes)
        if len(idx) < 2 or np.count_nonzero(dist) == 1:
            counts[node] = tuple(int(c) for c in dist)
            continue
        sub = rng.permutation(F)[:k]
        split = _best_split(X, y, idx, sub, n_classes)
        if split is None:
            counts[node] = tuple(int(c) for c in dist)
            continue
        f, thr = split
        go_left = X[idx, f] <= thr
        feature[node] = f
        threshold[node] = thr
        nl = new_node()
        nr = new_node()
        left[node] = nl
        right[node] = nr
        # push right first so the left child is processed (and numbered) next
        stack.append((nr, idx[~go_left]))
        stack.append((nl, idx[go_left]))

    return Tree(tuple(feature), tuple(threshold), tuple(left), tuple(right),
                tuple(counts))


def grow_forest(X: np.ndarray, y: np.ndarray, n_classes: int,
                train_seed: int, n_trees: int) -> tuple[Tree, ...]:
    return tuple(
        grow_tree(X, y, n_classes, rng_for(NS_FOREST, train_seed, t))
        for t in range(n_trees)
    )


def forest_votes(trees: tuple[Tree, ...], x: np.ndarray,
                 n_classes: int) -> np.ndarray:
    """Per-class vote shares: each tree votes its leaf's majority class
    (lowest class index on count ties); shares sum to 1."""
    votes = np.zeros(n_classes)
    for t in trees:
        c = t.leaf_counts(x)
        votes[max(range(n_classes), key=lambda j: (c[j], -j))] += 1.0
    return votes / len(trees)
