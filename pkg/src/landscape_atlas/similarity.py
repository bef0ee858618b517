"""Problem-similarity mapping: exact t-SNE over normalized feature rows.

Exact (quadratic-cost) t-SNE, suitable for corpora of a few hundred
rows: per-point Gaussian bandwidths found by bisection to the target
perplexity, early exaggeration, and a momentum + per-coordinate-gain
gradient descent.  Initial coordinates are derived from a seeded hash of
each row's contents, so identical rows start identical and permuting the
input permutes the output.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, PerplexityTooLarge, TraceDisabled

DEFAULT_PERPLEXITY = 30.0
DEFAULT_ITERATIONS = 1000
LEARNING_RATE = 200.0
EXAGGERATION = 12.0
EXAGGERATION_ITERS = 250
MOMENTUM_SWITCH = 250
TRACE_EVERY = 50
_P_FLOOR = 1e-12
_BANDWIDTH_TOL = 1e-4


@dataclass(frozen=True)
class EmbeddingRow:
    suite: str
    problem: str
    instance: int
    u: float
    v: float


@dataclass(frozen=True)
class Embedding:
    rows: tuple[EmbeddingRow, ...]
    final_kl: float
    iterations: int
    perplexity: float
    embed_seed: int
    kl_checkpoints: tuple[tuple[int, float], ...] | None = None

    def __post_init__(self):
        if not (np.isfinite(self.final_kl) and self.final_kl >= 0.0):
            raise ValueError("final KL divergence must be finite and >= 0")

    @property
    def coordinates(self) -> np.ndarray:
        return np.array([[r.u, r.v] for r in self.rows])


def kl_trace(embedding: Embedding) -> tuple[tuple[int, float], ...]:
    """(iteration, KL) checkpoints recorded every 50 iterations."""
    if embedding.kl_checkpoints is None:
        raise TraceDisabled("embedding was run without trace recording")
    return embedding.kl_checkpoints


def _squared_distances(Y: np.ndarray) -> np.ndarray:
    sq = np.einsum("ij,ij->i", Y, Y)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (Y @ Y.T)
    np.maximum(d2, 0.0, out=d2)
    np.fill_diagonal(d2, 0.0)
    return d2


def _conditional_row(d2_row: np.ndarray, beta: float) -> np.ndarray:
    """p_{j|i} for one point at bandwidth beta; d2_row excludes self."""
    shifted = d2_row - d2_row.min()  # nearest neighbour contributes exp(0)
    e = np.exp(-beta * shifted)
    return e / e.sum()


def _row_perplexity(p: np.ndarray) -> float:
    nz = p[p > 0.0]
    h_bits = float(-(nz * (np.log(nz) / np.log(2.0))).sum())
    return 2.0 ** h_bits


def bandwidth_bisection(d2_row: np.ndarray, perplexity: float,
                        tol: float = _BANDWIDTH_TOL,
                        max_iter: int = 200) -> tuple[float, np.ndarray]:
    """Find beta so the conditional distribution's perplexity matches the
    target within tol; returns (beta, conditional probabilities)."""
    beta = 1.0
    lo, hi = 0.0, np.inf
    p = _conditional_row(d2_row, beta)
    for _ in range(max_iter):
        perp = _row_perplexity(p)
        if abs(perp - perplexity) <= tol:
            break
        if perp > perplexity:  # too flat: tighten the kernel
            lo = beta
            beta = beta * 2.0 if np.isinf(hi) else (lo + hi) / 2.0
        else:
            hi = beta
            beta = beta / 2.0 if lo == 0.0 else (lo + hi) / 2.0
        p = _conditional_row(d2_row, beta)
    return beta, p


def _affinities(X: np.ndarray, perplexity: float) -> np.ndarray:
    n = X.shape[0]
    d2 = _squared_distances(X)
    P = np.zeros((n, n))
    mask = ~np.eye(n, dtype=bool)
    for i in range(n):
        _, p = bandwidth_bisection(d2[i][mask[i]], perplexity)
        P[i][mask[i]] = p
    P = (P + P.T) / (2.0 * n)
    return np.maximum(P, _P_FLOOR)


def _kl_divergence(P: np.ndarray, Q: np.ndarray) -> float:
    mask = ~np.eye(P.shape[0], dtype=bool)
    p, q = P[mask], Q[mask]
    return float(np.sum(p * np.log(p / q)))


def _low_dim_q(Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    num = 1.0 / (1.0 + _squared_distances(Y))
    np.fill_diagonal(num, 0.0)
    Q = np.maximum(num / num.sum(), _P_FLOOR)
    return Q, num


def _hash_init(X: np.ndarray, embed_seed: int) -> np.ndarray:
    """Per-row N(0, 1e-4) coordinates seeded by the row's contents, so
    initialization is invariant to row order."""
    Y = np.empty((X.shape[0], 2))
    for i, row in enumerate(X):
        digest = hashlib.sha256(
            embed_seed.to_bytes(8, "little", signed=True)
            + np.ascontiguousarray(row, dtype=np.float64).tobytes()
        ).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:16], "little"))
        Y[i] = rng.standard_normal(2) * 1e-2
    return Y


def tsne_embed(matrix: np.ndarray,
               ids: list[tuple[str, str, int]] | None = None,
               perplexity: float = DEFAULT_PERPLEXITY,
               embed_seed: int = 0,
               iterations: int = DEFAULT_ITERATIONS,
               trace: bool = True) -> Embedding:
    X = np.asarray(matrix, dtype=float)
    if X.ndim != 2 or X.shape[0] < 4:
        raise ValueError("need a 2-D matrix with at least 4 rows")
    n = X.shape[0]
    if not perplexity < (n - 1) / 3.0:
        raise PerplexityTooLarge(
            f"perplexity {perplexity} must be < (rows - 1)/3 = {(n - 1) / 3:.2f}")
    if np.all(X == X[0]):
        raise DegenerateInput("all feature rows are identical")
    if ids is None:
        ids = [("", str(i), 0) for i in range(n)]
    if len(ids) != n:
        raise ValueError("need one id triple per matrix row")

    P = _affinities(X, perplexity)
    P_run = P * EXAGGERATION
    Y = _hash_init(X, embed_seed)
    velocity = np.zeros_like(Y)
    gains = np.ones_like(Y)
    checkpoints: list[tuple[int, float]] = []

    for it in range(1, iterations + 1):
        if it == EXAGGERATION_ITERS + 1:
            P_run = P
        Q, num = _low_dim_q(Y)
        W = (P_run - Q) * num
        grad = 4.0 * ((np.diag(W.sum(axis=1)) - W) @ Y)

        same_sign = np.sign(grad) == np.sign(velocity)
        gains = np.where(same_sign, gains * 0.8, gains + 0.2)
        np.maximum(gains, 0.01, out=gains)
        momentum = 0.5 if it <= MOMENTUM_SWITCH else 0.8
        velocity = momentum * velocity - LEARNING_RATE * (gains * grad)
        Y = Y + velocity
        Y = Y - Y.mean(axis=0)

        if trace and it % TRACE_EVERY == 0:
            Q_now, _ = _low_dim_q(Y)
            checkpoints.append((it, _kl_divergence(P, Q_now)))

    Q_final, _ = _low_dim_q(Y)
    rows = tuple(
        EmbeddingRow(suite=s, problem=p, instance=int(k),
                     u=float(Y[i, 0]), v=float(Y[i, 1]))
        for i, (s, p, k) in enumerate(ids)
    )
    return Embedding(
        rows=rows,
        final_kl=_kl_divergence(P, Q_final),
        iterations=iterations,
        perplexity=perplexity,
        embed_seed=embed_seed,
        kl_checkpoints=tuple(checkpoints) if trace else None,
    )
