"""Weighted modularity and Louvain community detection."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import AlignmentError, EmptyGraphError
from .model import Partition, SimilarityMatrix, canonical_labels, require_aligned, validate_similarity, zero_diagonal

log = logging.getLogger(__name__)

GAIN_TOL = 1e-12


@dataclass(frozen=True)
class WeightedGraph:
    adjacency: np.ndarray
    node_ids: tuple[str, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got {a.shape}")
        if np.any(np.diag(a) != 0):
            raise ValueError("adjacency must have a zero diagonal")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if a.size and a.min() < 0:
            raise ValueError("adjacency must be nonnegative")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)
        ids = tuple(str(i) for i in range(a.shape[0])) if self.node_ids is None else tuple(map(str, self.node_ids))
        if len(ids) != a.shape[0]:
            raise AlignmentError(f"{len(ids)} ids for {a.shape[0]} nodes")
        object.__setattr__(self, "node_ids", ids)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def total_weight(self) -> float:
        """m = (1/2) sum_ij A_ij."""
        return float(self.adjacency.sum()) / 2.0

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)


@dataclass
class LouvainTrace:
    """Per-level modularity and move counts recorded by :func:`louvain`."""

    modularity: list[float] = field(default_factory=list)
    moves: list[int] = field(default_factory=list)
    isolated: int = 0


def graph_from_similarity(s: SimilarityMatrix) -> WeightedGraph:
    g = WeightedGraph(zero_diagonal(validate_similarity(s)).values, s.node_ids)
    if g.total_weight <= 0:
        raise EmptyGraphError("similarity matrix has no off-diagonal weight")
    return g


def _modularity(adj: np.ndarray, labels: np.ndarray, resolution: float = 1.0) -> float:
    k = adj.sum(axis=1)
    inside = (adj * (labels[:, None] == labels[None, :])).sum(axis=1)
    c = int(labels.max()) + 1
    tot = np.bincount(labels, weights=k, minlength=c)
    internal = np.bincount(labels, weights=inside, minlength=c)
    two_m = float(tot.sum())
    if two_m <= 0:
        raise EmptyGraphError("graph has no edges")
    return float(np.sum(internal / two_m - resolution * (tot / two_m) ** 2))


def modularity(g: WeightedGraph, p: Partition, resolution: float = 1.0) -> float:
    """Q = (1/2m) sum_ij (A_ij - gamma k_i k_j / 2m) delta(c_i, c_j)."""
    require_aligned(g.node_ids, p.node_ids, "modularity")
    if g.total_weight <= 0:
        raise EmptyGraphError("graph has no edges")
    return _modularity(g.adjacency, p.labels, resolution)


def _aggregate(adj: np.ndarray, labels: np.ndarray) -> np.ndarray:
    c = int(labels.max()) + 1
    h = np.zeros((adj.shape[0], c))
    h[np.arange(adj.shape[0]), labels] = 1.0
    return h.T @ adj @ h


def louvain(
    g: WeightedGraph,
    seed: int = 0,
    resolution: float = 1.0,
    trace: LouvainTrace | None = None,
    backend: str | None = None,
) -> Partition:
    """Two-phase Louvain modularity maximization.

    Nodes without edges are set aside and returned as singleton communities.
    The visiting order at every level is a permutation drawn from
    ``numpy.random.default_rng(seed)``.
    """
    if g.total_weight <= 0:
        raise EmptyGraphError("graph has no edges")
    kern = _backend.get(backend)
    rng = np.random.default_rng(seed)
    deg_all = g.degrees()
    active = np.flatnonzero(deg_all > 0)
    adj = np.ascontiguousarray(g.adjacency[np.ix_(active, active)])
    two_m = float(adj.sum())
    membership = np.arange(active.size, dtype=np.int64)
    trace = trace if trace is not None else LouvainTrace()
    trace.isolated = g.n - active.size
    q = _modularity(adj, membership, resolution)
    trace.modularity.append(q)

    level = adj
    while True:
        n = level.shape[0]
        labels = np.arange(n, dtype=np.int64)
        deg = level.sum(axis=1)
        tot = deg.copy()
        order = rng.permutation(n).astype(np.int64)
        moves = kern.local_move(level, deg, labels, tot, order, float(resolution), two_m, GAIN_TOL)
        if moves == 0:
            break
        labels = canonical_labels(labels)
        membership = labels[membership]
        new_q = _modularity(adj, membership, resolution)
        trace.moves.append(int(moves))
        if new_q < q - 1e-10:
            raise AssertionError(f"modularity decreased across levels: {q} -> {new_q}")
        trace.modularity.append(new_q)
        log.debug("louvain level %d: %d moves, Q=%.6f", len(trace.moves), moves, new_q)
        if new_q - q <= GAIN_TOL or labels.max() + 1 == n:
            q = new_q
            break
        q = new_q
        # diagonal of the aggregate holds each community's internal weight
        level = np.ascontiguousarray(_aggregate(level, labels))

    out = np.empty(g.n, dtype=np.int64)
    out[active] = membership
    next_label = membership.max() + 1 if membership.size else 0
    isolated = np.setdiff1d(np.arange(g.n), active)
    out[isolated] = np.arange(next_label, next_label + isolated.size)
    return Partition(out, g.node_ids)
