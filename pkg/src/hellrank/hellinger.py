"""Hellinger distances between same-side nodes and the derived node score.

Two distance conventions are supported:

* ``DistanceMode.RAW``: d(x, y) = sqrt(2) * D_H(L_x || L_y) computed on the
  unnormalized neighbor-degree vectors.  The degree-based lower/upper bounds
  (``distance_bounds``) hold in this mode only.
* ``DistanceMode.NORMALIZED`` (default): d(x, y) = D_H on the vectors rescaled
  to unit mass, so every distance lies in [0, 1].

An isolated node has the all-zero vector in either mode; in normalized mode it
sits at distance 1/sqrt(2) from every non-isolated node.
"""

from __future__ import annotations

import enum
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, TextIO

import numpy as np
import scipy.sparse as sp

from .graph import BipartiteGraph, Side, UnipartiteGraph
from .graph import neighbor_degree_vector, weighted_neighbor_degree_vector
from .scores import CentralityScores, normalize_scores

__all__ = [
    "DistanceMode",
    "DistanceMatrix",
    "hellinger_distance",
    "node_distance",
    "weighted_node_distance",
    "distance_matrix",
    "hellrank",
    "normalize_scores",
    "distance_bounds",
    "threshold_graph",
]

DEFAULT_MATRIX_CAP = 20_000


class DistanceMode(enum.Enum):
    RAW = "raw"
    NORMALIZED = "normalized"


class DegenerateDistancesWarning(UserWarning):
    pass


def hellinger_distance(p, q) -> float:
    """D_H = (1/sqrt(2)) * ||sqrt(p) - sqrt(q)||_2 for nonnegative vectors.

    Accepts equal-length sequences, or sparse mappings which are aligned on
    the union of their keys.
    """
    if isinstance(p, Mapping) or isinstance(q, Mapping):
        if not (isinstance(p, Mapping) and isinstance(q, Mapping)):
            raise TypeError("p and q must both be mappings or both sequences")
        keys = set(p) | set(q)
        pv = np.array([p.get(k, 0.0) for k in keys], dtype=float)
        qv = np.array([q.get(k, 0.0) for k in keys], dtype=float)
    else:
        pv = np.asarray(p, dtype=float)
        qv = np.asarray(q, dtype=float)
        if pv.shape != qv.shape:
            raise ValueError(f"length mismatch: {pv.shape} vs {qv.shape}")
    if (pv < 0).any() or (qv < 0).any():
        raise ValueError("vector entries must be >= 0")
    return float(np.linalg.norm(np.sqrt(pv) - np.sqrt(qv)) / math.sqrt(2))


def _node_vector(graph: BipartiteGraph, node: str, side: Side, weighted: bool):
    fn = weighted_neighbor_degree_vector if weighted else neighbor_degree_vector
    return fn(graph, node, side)


def _pair_distance(vx, vy, mode: DistanceMode) -> float:
    ex, ey = dict(vx.entries), dict(vy.entries)
    if mode is DistanceMode.NORMALIZED:
        sx, sy = sum(ex.values()), sum(ey.values())
        if sx > 0:
            ex = {k: v / sx for k, v in ex.items()}
        if sy > 0:
            ey = {k: v / sy for k, v in ey.items()}
        return hellinger_distance(ex, ey)
    return math.sqrt(2) * hellinger_distance(ex, ey)


def _same_side(graph: BipartiteGraph, x: str, y: str, side: Side | None) -> Side:
    sx = graph._resolve_side(x, side)
    sy = graph._resolve_side(y, side)
    if sx is not sy:
        raise ValueError(f"{x!r} and {y!r} are on different sides")
    return sx


def node_distance(
    graph: BipartiteGraph,
    x: str,
    y: str,
    mode: DistanceMode = DistanceMode.NORMALIZED,
    side: Side | None = None,
) -> float:
    """Hellinger distance between two nodes of the same side."""
    side = _same_side(graph, x, y, side)
    return _pair_distance(
        _node_vector(graph, x, side, False), _node_vector(graph, y, side, False), mode
    )


def weighted_node_distance(
    graph: BipartiteGraph,
    x: str,
    y: str,
    mode: DistanceMode = DistanceMode.NORMALIZED,
    side: Side | None = None,
) -> float:
    """node_distance on the weight-summed neighbor-degree vectors."""
    if not graph.is_weighted:
        raise ValueError("graph has no link weights")
    side = _same_side(graph, x, y, side)
    return _pair_distance(
        _node_vector(graph, x, side, True), _node_vector(graph, y, side, True), mode
    )


def distance_bounds(k1: int, k2: int) -> tuple[float, float]:
    """Degree-based (lower, upper) bounds on the RAW-mode distance."""
    if k1 < 1 or k2 < 1:
        raise ValueError(f"degrees must be >= 1, got ({k1}, {k2})")
    hi, lo = (k1, k2) if k1 >= k2 else (k2, k1)
    return math.sqrt(hi) - math.sqrt(lo), math.sqrt(hi + lo)


# -- vectorized all-pairs machinery -----------------------------------------


def _sqrt_mass_matrix(
    graph: BipartiteGraph, side: Side, mode: DistanceMode, weighted: bool
) -> tuple[list[str], sp.csr_matrix, np.ndarray]:
    """Rows of sqrt(mass) per node, columns indexed by distinct degree values.

    Returns (labels, S, m) with m[i] = ||S_i||^2 (total vector mass: the
    degree in raw mode, 1 or 0 in normalized mode).
    """
    labels = list(graph.nodes(side))
    vectors = [_node_vector(graph, x, side, weighted) for x in labels]
    degrees = sorted({k for v in vectors for k in v.entries})
    col = {d: j for j, d in enumerate(degrees)}
    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    masses = np.zeros(len(labels))
    for i, v in enumerate(vectors):
        total = v.total_mass
        for d in sorted(v.entries):
            w = v.entries[d]
            if mode is DistanceMode.NORMALIZED:
                w = w / total if total > 0 else 0.0
            indices.append(col[d])
            data.append(math.sqrt(w))
        indptr.append(len(indices))
        if mode is DistanceMode.NORMALIZED:
            masses[i] = 1.0 if total > 0 else 0.0
        else:
            masses[i] = total
    S = sp.csr_matrix(
        (np.array(data), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(len(labels), max(len(degrees), 1)),
    )
    return labels, S, masses


def _exact_sq_diff(S: sp.csr_matrix, i: int, j: int) -> float:
    """||S_i - S_j||^2 by explicit subtraction (no cancellation)."""
    ri = slice(S.indptr[i], S.indptr[i + 1])
    rj = slice(S.indptr[j], S.indptr[j + 1])
    di = dict(zip(S.indices[ri].tolist(), S.data[ri].tolist()))
    dj = dict(zip(S.indices[rj].tolist(), S.data[rj].tolist()))
    total = 0.0
    for k in set(di) | set(dj):
        diff = di.get(k, 0.0) - dj.get(k, 0.0)
        total += diff * diff
    return total


def _block_distances(S: sp.csr_matrix, masses: np.ndarray, lo: int, hi: int, coef: float) -> np.ndarray:
    """Dense distance rows lo:hi against all columns."""
    gram = (S[lo:hi] @ S.T).toarray()
    d2 = coef * (masses[lo:hi, None] + masses[None, :] - 2.0 * gram)
    # the gram form cancels catastrophically when two vectors nearly coincide;
    # recompute those few entries by direct subtraction so exact ties give 0
    suspects = np.argwhere(d2 < 1e-9 * (masses[lo:hi, None] + masses[None, :] + 1.0))
    for r, j in suspects:
        i = lo + int(r)
        j = int(j)
        d2[r, j] = 0.0 if i == j else coef * _exact_sq_diff(S, i, j)
    np.maximum(d2, 0.0, out=d2)
    return np.sqrt(d2)


def _blocks(n: int, block: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + block, n)) for lo in range(0, n, block)]


def _run_blocks(fn, spans, threads: int | None):
    if threads is not None and threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda s: fn(*s), spans))
    return [fn(*s) for s in spans]


def distance_matrix(
    graph: BipartiteGraph,
    side: Side,
    mode: DistanceMode = DistanceMode.NORMALIZED,
    weighted: bool = False,
    max_side: int = DEFAULT_MATRIX_CAP,
    force: bool = False,
    threads: int | None = None,
    block: int = 1024,
) -> "DistanceMatrix":
    """Full symmetric pairwise distance matrix for one side.

    Storage is quadratic; sides larger than ``max_side`` are refused unless
    ``force`` is set.
    """
    labels, S, masses = _sqrt_mass_matrix(graph, side, mode, weighted)
    n = len(labels)
    if n == 0:
        raise ValueError(f"side {side.value} is empty")
    if n > max_side and not force:
        raise MemoryError(
            f"side has {n} nodes (> cap {max_side}); pass force=True to override"
        )
    coef = 0.5 if mode is DistanceMode.NORMALIZED else 1.0
    values = np.empty((n, n))
    spans = _blocks(n, block)
    rows = _run_blocks(lambda lo, hi: _block_distances(S, masses, lo, hi, coef), spans, threads)
    for (lo, hi), r in zip(spans, rows):
        values[lo:hi] = r
    np.fill_diagonal(values, 0.0)
    return DistanceMatrix(side=side, labels=labels, values=values, mode=mode)


def hellrank(
    graph: BipartiteGraph,
    side: Side,
    mode: DistanceMode = DistanceMode.NORMALIZED,
    weighted: bool = False,
    threads: int | None = None,
    block: int = 1024,
) -> CentralityScores:
    """Per-node score n / (sum of distances to every node of the side).

    Row sums are streamed block by block, so the quadratic matrix is never
    materialized.  If every pairwise distance is zero (structurally identical
    nodes) all scores are 1.0 and a DegenerateDistancesWarning is emitted.
    """
    labels, S, masses = _sqrt_mass_matrix(graph, side, mode, weighted)
    n = len(labels)
    if n < 2:
        raise ValueError(f"side {side.value} needs >= 2 nodes, has {n}")
    coef = 0.5 if mode is DistanceMode.NORMALIZED else 1.0
    spans = _blocks(n, block)

    def row_sums(lo: int, hi: int) -> np.ndarray:
        d = _block_distances(S, masses, lo, hi, coef)
        d[np.arange(lo, hi) - lo, np.arange(lo, hi)] = 0.0
        return d.sum(axis=1)

    sums = np.concatenate(_run_blocks(row_sums, spans, threads))
    if not sums.any():
        warnings.warn(
            "all pairwise distances are zero; returning uniform scores",
            DegenerateDistancesWarning,
        )
        values = np.ones(n)
    else:
        values = n / sums
    metric = "hellrank-raw" if mode is DistanceMode.RAW else "hellrank"
    return CentralityScores(side=side, metric=metric, scores=dict(zip(labels, values)))


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise node distances for one side."""

    side: Side
    labels: list[str]
    values: np.ndarray
    mode: DistanceMode

    def __getitem__(self, pair: tuple[str, str]) -> float:
        i = self.labels.index(pair[0])
        j = self.labels.index(pair[1])
        return float(self.values[i, j])

    def to_csv(self, stream: TextIO) -> None:
        stream.write("," + ",".join(self.labels) + "\n")
        for label, row in zip(self.labels, self.values):
            stream.write(label + "," + ",".join(f"{v:.6f}" for v in row) + "\n")


def threshold_graph(matrix: DistanceMatrix, threshold: float) -> UnipartiteGraph:
    """Graph on the matrix labels with an edge wherever d(u, v) < threshold."""
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    n = len(matrix.labels)
    ii, jj = np.nonzero(np.triu(matrix.values < threshold, k=1))
    edges = [(matrix.labels[i], matrix.labels[j]) for i, j in zip(ii, jj)]
    return UnipartiteGraph(matrix.labels, edges)
