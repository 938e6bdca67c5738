"""Core data types and elementary matrix hygiene.

All containers are frozen dataclasses holding read-only numpy arrays; node
identity travels with the data as a tuple of string ids so that misaligned
inputs fail loudly instead of being silently re-sorted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .errors import (
    AlignmentError,
    AsymmetryError,
    DuplicateIdError,
    EmptyArticleError,
    MultifuseError,
    NegativeEntryError,
    NonFiniteError,
)

SYMMETRY_TOL = 1e-12
ROW_SUM_TOL = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


def _default_ids(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def _check_unique(ids: Sequence[str]) -> None:
    if len(set(ids)) != len(ids):
        seen, dup = set(), []
        for x in ids:
            if x in seen:
                dup.append(x)
            seen.add(x)
        raise DuplicateIdError(f"duplicate node ids: {sorted(set(dup))[:10]}")


def require_aligned(a: Sequence[str], b: Sequence[str], what: str = "inputs") -> None:
    """Raise AlignmentError unless both id sequences are equal, in order."""
    if tuple(a) != tuple(b):
        if len(a) != len(b):
            raise AlignmentError(f"{what}: node counts differ ({len(a)} vs {len(b)})")
        first = next(i for i, (x, y) in enumerate(zip(a, b)) if x != y)
        raise AlignmentError(
            f"{what}: node ids differ at position {first} ({a[first]!r} vs {b[first]!r})"
        )


def _preview(ids: tuple[str, ...]) -> str:
    return ", ".join(ids[:3]) + (f", ... {ids[-1]}" if len(ids) > 3 else "")


@dataclass(frozen=True)
class SimilarityMatrix:
    values: np.ndarray
    node_ids: tuple[str, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise MultifuseError(f"similarity matrix must be square, got shape {v.shape}")
        object.__setattr__(self, "values", _frozen(v))
        ids = _default_ids(v.shape[0]) if self.node_ids is None else tuple(map(str, self.node_ids))
        if len(ids) != v.shape[0]:
            raise AlignmentError(f"{len(ids)} node ids for a {v.shape[0]}x{v.shape[0]} matrix")
        object.__setattr__(self, "node_ids", ids)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __repr__(self) -> str:
        return f"SimilarityMatrix(n={self.n}, ids={_preview(self.node_ids)})"

    def with_values(self, values: np.ndarray) -> "SimilarityMatrix":
        return SimilarityMatrix(values, self.node_ids)


@dataclass(frozen=True)
class BipartiteIncidence:
    """Binary articles x cited-references incidence (CSR)."""

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    cells: sp.csr_matrix

    def __post_init__(self):
        cells = sp.csr_matrix(self.cells, dtype=np.float64)
        cells.sum_duplicates()
        cells.data[:] = 1.0
        cells.eliminate_zeros()
        if cells.shape != (len(self.rows), len(self.cols)):
            raise AlignmentError(
                f"incidence shape {cells.shape} does not match {len(self.rows)} rows x {len(self.cols)} cols"
            )
        _check_unique(self.rows)
        empty = np.flatnonzero(np.diff(cells.indptr) == 0)
        if empty.size:
            raise EmptyArticleError([self.rows[i] for i in empty])
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        object.__setattr__(self, "cells", cells)

    @property
    def n(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class DistributionMatrix:
    """Row-stochastic articles x features matrix; ``values`` is dense or CSR."""

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    values: np.ndarray | sp.csr_matrix

    def __post_init__(self):
        v = self.values
        if sp.issparse(v):
            v = sp.csr_matrix(v, dtype=np.float64, copy=True)
            v.sum_duplicates()
            v.sort_indices()
            data = v.data
            sums = np.asarray(v.sum(axis=1)).ravel()
        else:
            v = _frozen(v)
            data = v
            sums = v.sum(axis=1)
        if v.shape != (len(self.rows), len(self.cols)):
            raise AlignmentError(
                f"distribution shape {v.shape} does not match {len(self.rows)} rows x {len(self.cols)} cols"
            )
        if not np.all(np.isfinite(data)):
            raise NonFiniteError("distribution contains non-finite values")
        if data.size and (data.min() < 0 or data.max() > 1):
            raise MultifuseError("distribution cells must lie in [0, 1]")
        bad = np.flatnonzero(np.abs(sums - 1.0) > ROW_SUM_TOL)
        if bad.size:
            raise MultifuseError(
                f"row {self.rows[bad[0]]!r} sums to {sums[bad[0]]!r}, expected 1"
            )
        _check_unique(self.rows)
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return len(self.rows)

    def dense(self) -> np.ndarray:
        return self.values.toarray() if sp.issparse(self.values) else np.asarray(self.values)


def canonical_labels(labels: Sequence[int] | np.ndarray) -> np.ndarray:
    """Relabel clusters 0..c-1 in order of first appearance."""
    labels = np.asarray(labels)
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(first.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(first.size)
    return rank[inverse.ravel()]


@dataclass(frozen=True)
class Partition:
    labels: np.ndarray
    node_ids: tuple[str, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        lab = canonical_labels(self.labels)
        lab.setflags(write=False)
        object.__setattr__(self, "labels", lab)
        ids = _default_ids(lab.size) if self.node_ids is None else tuple(map(str, self.node_ids))
        if len(ids) != lab.size:
            raise AlignmentError(f"{len(ids)} node ids for {lab.size} labels")
        _check_unique(ids)
        object.__setattr__(self, "node_ids", ids)

    @property
    def n(self) -> int:
        return self.labels.size

    @property
    def n_clusters(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_clusters)

    def __repr__(self) -> str:
        return f"Partition(n={self.n}, clusters={self.n_clusters}, ids={_preview(self.node_ids)})"

    # labels are canonical, so equal groupings compare equal
    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.node_ids == other.node_ids and np.array_equal(self.labels, other.labels)

    def __hash__(self):
        return hash((self.node_ids, self.labels.tobytes()))


@dataclass(frozen=True)
class MultiplexBundle:
    layers: tuple[SimilarityMatrix, ...]
    node_ids: tuple[str, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        layers = tuple(self.layers)
        if not layers:
            raise MultifuseError("a multiplex needs at least one layer")
        ids = layers[0].node_ids if self.node_ids is None else tuple(map(str, self.node_ids))
        for i, layer in enumerate(layers):
            require_aligned(ids, layer.node_ids, f"layer {i}")
        object.__setattr__(self, "layers", layers)
        object.__setattr__(self, "node_ids", ids)

    @property
    def n(self) -> int:
        return len(self.node_ids)

    def __len__(self) -> int:
        return len(self.layers)

    def __getitem__(self, i: int) -> SimilarityMatrix:
        return self.layers[i]


def validate_similarity(m: SimilarityMatrix) -> SimilarityMatrix:
    """Check the SimilarityMatrix invariants.

    Entries that are asymmetric within ``SYMMETRY_TOL`` are averaged to exact
    symmetry; an exactly symmetric matrix is returned unchanged.
    """
    v = m.values
    if not np.all(np.isfinite(v)):
        raise NonFiniteError("similarity matrix contains NaN or infinite values")
    if v.size and v.min() < 0:
        i, j = np.unravel_index(np.argmin(v), v.shape)
        raise NegativeEntryError(f"negative similarity {v[i, j]!r} at ({i}, {j})")
    _check_unique(m.node_ids)
    gap = np.abs(v - v.T)
    if gap.size and gap.max() > SYMMETRY_TOL:
        i, j = np.unravel_index(np.argmax(gap), gap.shape)
        raise AsymmetryError(f"|m[{i},{j}] - m[{j},{i}]| = {gap[i, j]:.3g} exceeds {SYMMETRY_TOL}")
    if gap.size and gap.max() > 0:
        return m.with_values((v + v.T) / 2)
    return m


def symmetrize(m: SimilarityMatrix | np.ndarray) -> SimilarityMatrix:
    """Arithmetic mean of a square matrix and its transpose."""
    ids = m.node_ids if isinstance(m, SimilarityMatrix) else None
    v = np.asarray(m.values if isinstance(m, SimilarityMatrix) else m, dtype=np.float64)
    if not np.all(np.isfinite(v)):
        raise NonFiniteError("cannot symmetrize a matrix with non-finite values")
    return SimilarityMatrix((v + v.T) / 2, ids)


def zero_diagonal(m: SimilarityMatrix) -> SimilarityMatrix:
    v = np.array(m.values)
    np.fill_diagonal(v, 0.0)
    return m.with_values(v)
