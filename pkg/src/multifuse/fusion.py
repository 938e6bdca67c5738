"""Layer integration: similarity network fusion and two hybrid baselines.

The fusion follows the cross-diffusion scheme: every view keeps a full
(status) kernel that is diffused through its own sparse kNN kernel using the
average status of the other views, then renormalized and symmetrized.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import (
    AlignmentError,
    ConfigError,
    DegenerateNeighborhoodError,
    DomainError,
    ZeroMassError,
)
from .model import MultiplexBundle, SimilarityMatrix, require_aligned, symmetrize, validate_similarity

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SnfConfig:
    k_neighbors: int = 20
    iterations: int = 20

    def __post_init__(self):
        if self.k_neighbors < 1:
            raise ConfigError("k_neighbors must be >= 1")
        if self.iterations < 1:
            raise ConfigError("iterations must be >= 1")

    def check(self, n: int) -> None:
        if not 1 <= self.k_neighbors <= n - 1:
            raise ConfigError(f"k_neighbors={self.k_neighbors} outside [1, {n - 1}] for n={n}")


@dataclass
class SnfTrace:
    """What the diffusion did; filled in by :func:`snf` when passed."""

    isolated: list[list[str]] = field(default_factory=list)
    deltas: list[float] = field(default_factory=list)
    history: list[list[np.ndarray]] = field(default_factory=list)
    keep_history: bool = False


def _values(w) -> np.ndarray:
    return np.asarray(w.values if isinstance(w, SimilarityMatrix) else w, dtype=np.float64)


def _off_diagonal_sums(v: np.ndarray) -> np.ndarray:
    off = v.copy()
    np.fill_diagonal(off, 0.0)
    return off.sum(axis=1)


def _normalize_status(v: np.ndarray) -> np.ndarray:
    """Off-diagonal mass 1/2 per row, diagonal 1/2; empty rows become identity rows."""
    rs = _off_diagonal_sums(v)
    iso = rs <= 0
    scale = np.where(iso, 1.0, 2.0 * rs)
    out = v / scale[:, None]
    out[iso] = 0.0
    np.fill_diagonal(out, np.where(iso, 1.0, 0.5))
    return out


def full_kernel(w: SimilarityMatrix | np.ndarray) -> np.ndarray:
    """Row-stochastic status matrix P with P[i, i] = 1/2."""
    return _normalize_status(_values(w))


def _knn_select(v: np.ndarray, k: int) -> np.ndarray:
    n = v.shape[0]
    keyed = -v.copy()
    np.fill_diagonal(keyed, np.inf)
    # stable sort keeps the smaller column first among equal weights
    return np.argsort(keyed, axis=1, kind="stable")[:, :k]


def knn_kernel(w: SimilarityMatrix | np.ndarray, k: int, allow_isolated: bool = False) -> sp.csr_matrix:
    """Sparse local kernel over each row's k strongest off-diagonal neighbours.

    With ``allow_isolated`` a row whose neighbourhood carries no weight gets a
    unit self-loop instead of raising.
    """
    v = _values(w)
    n = v.shape[0]
    if not 1 <= k <= n - 1:
        raise ConfigError(f"k={k} outside [1, {n - 1}]")
    nbr = _knn_select(v, k)
    rows = np.repeat(np.arange(n), k)
    vals = np.take_along_axis(v, nbr, axis=1)
    sums = vals.sum(axis=1)
    dead = np.flatnonzero(sums <= 0)
    if dead.size and not allow_isolated:
        raise DegenerateNeighborhoodError(
            f"{dead.size} rows have zero weight over their {k} nearest neighbours (first: row {dead[0]})"
        )
    safe = np.where(sums > 0, sums, 1.0)
    vals = vals / safe[:, None]
    s = sp.csr_matrix((vals.ravel(), (rows, nbr.ravel())), shape=(n, n))
    if dead.size:
        s = s.tolil()
        for i in dead:
            s[i, :] = 0.0
            s[i, i] = 1.0
        s = s.tocsr()
    s.sort_indices()
    return s


def _isolated(v: np.ndarray) -> np.ndarray:
    return np.flatnonzero(_off_diagonal_sums(v) <= 0)


def _pin_identity(p: np.ndarray, idx: np.ndarray) -> None:
    if idx.size:
        p[idx, :] = 0.0
        p[:, idx] = 0.0
        p[idx, idx] = 1.0


def snf(layers: MultiplexBundle, cfg: SnfConfig = SnfConfig(), trace: SnfTrace | None = None) -> SimilarityMatrix:
    """Fuse two or more aligned similarity layers by cross diffusion.

    Nodes with no off-diagonal weight in a view keep an identity row and
    column in that view's status matrix for the whole run.
    """
    if not isinstance(layers, MultiplexBundle):
        layers = MultiplexBundle(tuple(layers))
    if len(layers) < 2:
        raise AlignmentError("fusion needs at least two layers")
    n, m = layers.n, len(layers)
    cfg.check(n)
    ws = [validate_similarity(layer).values for layer in layers]
    iso = [_isolated(w) for w in ws]
    for v, idx in enumerate(iso):
        if idx.size:
            log.warning("view %d: %d isolated nodes carried as identity rows", v, idx.size)
    if trace is not None:
        trace.isolated = [[layers.node_ids[i] for i in idx] for idx in iso]

    status = [full_kernel(w) for w in ws]
    local = [knn_kernel(w, cfg.k_neighbors, allow_isolated=True) for w in ws]
    if trace is not None and trace.keep_history:
        trace.history.append([p.copy() for p in status])
    for t in range(cfg.iterations):
        nxt = []
        for v in range(m):
            rest = [status[u] for u in range(m) if u != v]
            others = rest[0].copy()
            for p in rest[1:]:
                others += p
            if m > 2:
                others /= m - 1
            s = local[v]
            p = (s @ (s @ others).T).T
            p = _normalize_status(p)
            p = (p + p.T) / 2
            _pin_identity(p, iso[v])
            nxt.append(p)
        delta = max(float(np.max(np.abs(a - b))) for a, b in zip(nxt, status))
        status = nxt
        log.debug("iteration %d: max change %.3e", t + 1, delta)
        if trace is not None:
            trace.deltas.append(delta)
            if trace.keep_history:
                trace.history.append([p.copy() for p in status])
    fused = status[0].copy()
    for p in status[1:]:
        fused += p
    fused /= m
    return validate_similarity(symmetrize(SimilarityMatrix(fused, layers.node_ids)))


def mass(s: SimilarityMatrix) -> float:
    """Total T = sum_ij s_ij."""
    return float(np.sum(s.values))


def boyack_alpha(s1: SimilarityMatrix, s2: SimilarityMatrix) -> float:
    """Weight T2 / (T1 + T2) on ``s1``, giving the heavier matrix the lower weight."""
    t1, t2 = mass(s1), mass(s2)
    if t1 + t2 <= 0:
        raise ZeroMassError("both matrices have zero total mass")
    return t2 / (t1 + t2)


def convex_combination(s1: SimilarityMatrix, s2: SimilarityMatrix, alpha: float) -> SimilarityMatrix:
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha={alpha} outside [0, 1]")
    require_aligned(s1.node_ids, s2.node_ids, "convex combination")
    if alpha == 1.0:
        return SimilarityMatrix(s1.values, s1.node_ids)
    if alpha == 0.0:
        return SimilarityMatrix(s2.values, s1.node_ids)
    return SimilarityMatrix(alpha * s1.values + (1.0 - alpha) * s2.values, s1.node_ids)


def glanzel_combination(s1: SimilarityMatrix, s2: SimilarityMatrix, w: float = 0.5) -> SimilarityMatrix:
    """cos(w arccos(s1) + (1 - w) arccos(s2)), elementwise."""
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"w={w} outside [0, 1]")
    require_aligned(s1.node_ids, s2.node_ids, "arccos-cos combination")
    a, b = s1.values, s2.values
    for name, x in (("s1", a), ("s2", b)):
        if not np.all(np.isfinite(x)) or x.min() < -1.0 or x.max() > 1.0:
            raise DomainError(f"{name} has entries outside [-1, 1]")
    out = np.cos(w * np.arccos(a) + (1.0 - w) * np.arccos(b))
    return SimilarityMatrix(np.clip(out, -1.0, 1.0), s1.node_ids)


def fixed_weight_alpha(s1: SimilarityMatrix, s2: SimilarityMatrix, low: float) -> float:
    """Weight on ``s1`` when the heavier matrix receives weight ``low``."""
    if not 0.0 <= low <= 0.5:
        raise DomainError(f"fixed weight {low} must lie in [0, 0.5]")
    return low if mass(s1) >= mass(s2) else 1.0 - low
