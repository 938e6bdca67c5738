"""Similarity layers: Jaccard over cited references, total variation over distributions."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from . import _backend
from .errors import ZeroRowError
from .ingest import CountTable
from .model import BipartiteIncidence, DistributionMatrix, SimilarityMatrix, validate_similarity


def jaccard_layer(b: BipartiteIncidence) -> SimilarityMatrix:
    """Jaccard coefficient |A_i & A_j| / |A_i | A_j| between reference sets."""
    cells = b.cells
    inter = (cells @ cells.T).toarray()
    size = np.asarray(cells.sum(axis=1)).ravel()
    union = size[:, None] + size[None, :] - inter
    out = inter / union
    np.fill_diagonal(out, 1.0)
    return validate_similarity(SimilarityMatrix(out, b.rows))


def relative_frequencies(t: CountTable) -> DistributionMatrix:
    """Per-article relative term frequencies."""
    counts = t.counts.astype(np.float64)
    totals = np.asarray(counts.sum(axis=1)).ravel()
    zero = [t.rows[i] for i in np.flatnonzero(totals <= 0)]
    if zero:
        raise ZeroRowError(zero, f"articles with no counts: {', '.join(zero[:20])}")
    freq = sp.csr_matrix(sp.diags(1.0 / totals) @ counts)
    freq.sort_indices()
    if freq.shape[1] <= 1024:
        return DistributionMatrix(t.rows, t.cols, freq.toarray())
    return DistributionMatrix(t.rows, t.cols, freq)


def total_variation_layer(d: DistributionMatrix, backend: str | None = None) -> SimilarityMatrix:
    """Similarity 1 - (1/2) sum_l |p_il - p_jl| between distribution rows.

    For rows summing to one this equals sum_l min(p_il, p_jl), so only the
    features present in both rows contribute; that form is what gets summed.
    """
    v = d.values
    n = d.n
    if sp.issparse(v):
        out = _backend.get(backend).tv_sparse(
            v.indptr.astype(np.int64), v.indices.astype(np.int64), v.data.astype(np.float64), n
        )
    else:
        p = np.ascontiguousarray(v, dtype=np.float64)
        out = np.empty((n, n))
        for i in range(n):
            out[i] = np.minimum(p[i], p).sum(axis=1)
        out = np.triu(out, 1)
        out = out + out.T
    np.clip(out, 0.0, 1.0, out=out)
    np.fill_diagonal(out, 1.0)
    return validate_similarity(SimilarityMatrix(out, d.rows))
