"""Rank-agreement statistics between centrality score tables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .scores import CentralityScores

__all__ = [
    "RankVector",
    "kendall_tau",
    "spearman_rho",
    "top_k_vector",
    "sweep_k",
]


@dataclass(frozen=True)
class RankVector:
    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        if len(self.labels) != len(self.values):
            raise ValueError("labels and values must have the same length")

    @classmethod
    def from_scores(cls, scores: CentralityScores) -> "RankVector":
        labels = tuple(sorted(scores.scores))
        return cls(labels, np.array([scores[x] for x in labels], dtype=float))


def _aligned(a: RankVector, b: RankVector) -> tuple[np.ndarray, np.ndarray]:
    if set(a.labels) != set(b.labels):
        raise ValueError("rank vectors cover different label sets")
    order = {x: i for i, x in enumerate(a.labels)}
    perm = np.array([order[x] for x in b.labels])
    bv = np.empty_like(b.values)
    bv[perm] = b.values
    return a.values, bv


def kendall_tau(a: RankVector, b: RankVector, variant: str = "a") -> float:
    """Pair-agreement correlation.

    variant "a": (concordant - discordant) / (n(n-1)/2); tied pairs count as
    neither.  variant "b" rescales by the tie-corrected pair counts.
    """
    if variant not in ("a", "b"):
        raise ValueError(f"variant must be 'a' or 'b', got {variant!r}")
    x, y = _aligned(a, b)
    n = len(x)
    if n < 2:
        raise ValueError("need at least 2 labels")
    concordant = discordant = ties_x = ties_y = 0
    block = 2048
    for lo in range(0, n, block):
        dx = np.sign(x[lo : lo + block, None] - x[None, :])
        dy = np.sign(y[lo : lo + block, None] - y[None, :])
        prod = dx * dy
        # restrict to i < j
        cols = np.arange(n)[None, :]
        rows = np.arange(lo, min(lo + block, n))[:, None]
        upper = cols > rows
        concordant += int(np.count_nonzero((prod > 0) & upper))
        discordant += int(np.count_nonzero((prod < 0) & upper))
        ties_x += int(np.count_nonzero((dx == 0) & upper))
        ties_y += int(np.count_nonzero((dy == 0) & upper))
    pairs = n * (n - 1) // 2
    if variant == "a":
        return (concordant - discordant) / pairs
    denom = np.sqrt((pairs - ties_x) * (pairs - ties_y))
    if denom == 0:
        raise ValueError("tau-b undefined: one vector is constant")
    return float((concordant - discordant) / denom)


def spearman_rho(a: RankVector, b: RankVector) -> float:
    """Pearson correlation applied to the supplied value vectors as-is."""
    x, y = _aligned(a, b)
    xc = x - x.mean()
    yc = y - y.mean()
    denom = np.sqrt((xc * xc).sum() * (yc * yc).sum())
    if denom == 0:
        raise ValueError("correlation undefined: zero variance")
    return float((xc * yc).sum() / denom)


def top_k_vector(scores: CentralityScores, k: int) -> RankVector:
    """Binary indicator of the k best-scoring labels (cutoff ties -> label order)."""
    top = set(scores.top_k(k))
    labels = tuple(sorted(scores.scores))
    return RankVector(labels, np.array([1.0 if x in top else 0.0 for x in labels]))


def sweep_k(
    a: CentralityScores, b: CentralityScores, k_max: int
) -> list[tuple[int, float | None]]:
    """spearman_rho of the top-k indicator vectors for k = 1..k_max.

    Undefined points (a constant indicator vector) are reported as None.
    """
    n = len(a.scores)
    if set(a.scores) != set(b.scores):
        raise ValueError("score tables cover different label sets")
    if not 1 <= k_max <= n - 1:
        raise ValueError(f"k_max must be in 1..{n - 1}, got {k_max}")
    out: list[tuple[int, float | None]] = []
    for k in range(1, k_max + 1):
        try:
            out.append((k, spearman_rho(top_k_vector(a, k), top_k_vector(b, k))))
        except ValueError:
            out.append((k, None))
    return out


def sweep_to_csv(series: list[tuple[int, float | None]], stream: TextIO) -> None:
    stream.write("k,rho\n")
    for k, rho in series:
        stream.write(f"{k},{'' if rho is None else f'{rho:.6f}'}\n")
