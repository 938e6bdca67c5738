"""Association statistics between similarity matrices and between partitions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import DimensionMismatchError, InsufficientSampleError
from .model import Partition, SimilarityMatrix, require_aligned

# 1 - R*^2 below this counts as a vanishing denominator factor
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class EmbeddedDistances:
    """Euclidean distances between the rows of a similarity matrix."""

    d: np.ndarray
    node_ids: tuple[str, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        d = np.array(self.d, dtype=np.float64)
        d.setflags(write=False)
        object.__setattr__(self, "d", d)
        if self.node_ids is None:
            object.__setattr__(self, "node_ids", tuple(str(i) for i in range(d.shape[0])))

    @property
    def n(self) -> int:
        return self.d.shape[0]


@dataclass(frozen=True)
class DcorResult:
    dcor: float
    dcor_sq: float


@dataclass(frozen=True)
class PdcorResult:
    pdcor: float
    sqrt_pdcor: float  # sqrt(max(pdcor, 0))


def embed_rows(s: SimilarityMatrix) -> EmbeddedDistances:
    v = np.asarray(s.values, dtype=np.float64)
    if v.shape[0] < 2:
        return EmbeddedDistances(np.zeros(v.shape), s.node_ids)
    return EmbeddedDistances(squareform(pdist(v, "euclidean")), s.node_ids)


def _as_distances(x) -> EmbeddedDistances:
    if isinstance(x, EmbeddedDistances):
        return x
    if isinstance(x, SimilarityMatrix):
        return embed_rows(x)
    return EmbeddedDistances(np.asarray(x))


def _same_n(*xs: EmbeddedDistances) -> int:
    n = xs[0].n
    if any(x.n != n for x in xs):
        raise DimensionMismatchError(f"sample sizes differ: {[x.n for x in xs]}")
    return n


def double_center(d: np.ndarray) -> np.ndarray:
    row = d.mean(axis=1, keepdims=True)
    col = d.mean(axis=0, keepdims=True)
    return d - row - col + d.mean()


def distance_correlation(a, b) -> DcorResult:
    """Sample distance correlation (V-statistic form) and its square."""
    a, b = _as_distances(a), _as_distances(b)
    n = _same_n(a, b)
    if n < 2:
        raise InsufficientSampleError("distance correlation needs n >= 2")
    A, B = double_center(a.d), double_center(b.d)
    dcov2 = float(np.mean(A * B))
    va, vb = float(np.mean(A * A)), float(np.mean(B * B))
    if va <= 0 or vb <= 0:
        return DcorResult(0.0, 0.0)
    r2 = min(max(dcov2 / sqrt(va * vb), 0.0), 1.0)
    return DcorResult(sqrt(r2), r2)


def u_center(d: np.ndarray) -> np.ndarray:
    n = d.shape[0]
    row = d.sum(axis=1, keepdims=True) / (n - 2)
    col = d.sum(axis=0, keepdims=True) / (n - 2)
    out = d - row - col + d.sum() / ((n - 1) * (n - 2))
    np.fill_diagonal(out, 0.0)
    return out


def u_inner(A: np.ndarray, B: np.ndarray) -> float:
    n = A.shape[0]
    return float(np.sum(A * B)) / (n * (n - 3))


def _rstar(A: np.ndarray, B: np.ndarray) -> float:
    den = u_inner(A, A) * u_inner(B, B)
    if den <= 0:
        return 0.0
    return u_inner(A, B) / sqrt(den)


def bias_corrected_dcor(a, b) -> float:
    """R*(a, b) from U-centred distance matrices; may be negative."""
    a, b = _as_distances(a), _as_distances(b)
    n = _same_n(a, b)
    if n < 4:
        raise InsufficientSampleError("bias-corrected distance correlation needs n >= 4")
    return _rstar(u_center(a.d), u_center(b.d))


def partial_distance_correlation(a, b, z) -> PdcorResult:
    """Partial distance correlation of ``a`` and ``b`` controlling for ``z``."""
    a, b, z = _as_distances(a), _as_distances(b), _as_distances(z)
    n = _same_n(a, b, z)
    if n < 4:
        raise InsufficientSampleError("partial distance correlation needs n >= 4")
    A, B, Z = u_center(a.d), u_center(b.d), u_center(z.d)
    rab, raz, rbz = _rstar(A, B), _rstar(A, Z), _rstar(B, Z)
    fa, fb = 1.0 - raz * raz, 1.0 - rbz * rbz
    if fa <= DEGENERATE_TOL or fb <= DEGENERATE_TOL:
        return PdcorResult(0.0, 0.0)
    r = (rab - raz * rbz) / sqrt(fa * fb)
    r = min(max(r, -1.0), 1.0)
    return PdcorResult(r, sqrt(max(r, 0.0)))


def contingency(p: Partition, q: Partition) -> np.ndarray:
    require_aligned(p.node_ids, q.node_ids, "partition comparison")
    table = np.zeros((p.n_clusters, q.n_clusters), dtype=np.int64)
    np.add.at(table, (p.labels, q.labels), 1)
    return table


def cramers_v_table(table) -> float:
    """Cramer's V of a contingency table of integer counts.

    chi2 / n = sum O^2 / (row col) - 1 is evaluated in exact rational
    arithmetic over the nonzero cells, so V^2 is correctly rounded before the
    square root (identical partitions give exactly 1).
    """
    o = np.asarray(table)
    if not np.all(o == np.round(o)) or (o.size and o.min() < 0):
        raise ValueError("contingency table must hold nonnegative integer counts")
    o = o.astype(np.int64)
    o = o[o.sum(axis=1) > 0][:, o.sum(axis=0) > 0]
    r, c = o.shape
    k = min(r - 1, c - 1)
    if k == 0:
        return 1.0 if r == 1 and c == 1 else 0.0
    rows, cols = o.sum(axis=1), o.sum(axis=0)
    ratio = Fraction(0)
    for i, j in zip(*np.nonzero(o)):
        ratio += Fraction(int(o[i, j]) ** 2, int(rows[i]) * int(cols[j]))
    v2 = (ratio - 1) / k
    return sqrt(min(max(float(v2), 0.0), 1.0))


def cramers_v(p: Partition, q: Partition) -> float:
    return cramers_v_table(contingency(p, q))


def adjusted_rand(p: Partition, q: Partition) -> float:
    table = contingency(p, q)
    n = p.n
    pairs = comb(n, 2)
    index = sum(comb(int(x), 2) for x in table.ravel())
    a = sum(comb(int(x), 2) for x in table.sum(axis=1))
    b = sum(comb(int(x), 2) for x in table.sum(axis=0))
    if pairs == 0:
        return 1.0
    expected = a * b / pairs
    maximum = (a + b) / 2
    if maximum == expected:
        return 1.0
    return (index - expected) / (maximum - expected)
