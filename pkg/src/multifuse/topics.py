"""LDA topic distributions by collapsed Gibbs sampling."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import ConfigError, EmptyCorpusError
from .ingest import CountTable
from .model import DistributionMatrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LdaConfig:
    k_topics: int = 10
    alpha: float | None = None  # None -> 50 / k_topics
    beta: float = 0.01
    sweeps: int = 1000
    burn_in: int = 500
    seed: int = 0

    def __post_init__(self):
        if int(self.k_topics) != self.k_topics or self.k_topics < 1:
            raise ConfigError(f"k_topics must be a positive integer, got {self.k_topics!r}")
        if self.alpha is None:
            object.__setattr__(self, "alpha", 50.0 / self.k_topics)
        if not self.alpha > 0:
            raise ConfigError(f"alpha must be > 0, got {self.alpha!r}")
        if not self.beta > 0:
            raise ConfigError(f"beta must be > 0, got {self.beta!r}")
        if not (self.burn_in >= 0 and self.sweeps > self.burn_in):
            raise ConfigError(f"need sweeps > burn_in >= 0, got sweeps={self.sweeps}, burn_in={self.burn_in}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")


def _tokens(t: CountTable) -> tuple[np.ndarray, np.ndarray]:
    c = t.counts
    doc_of_entry = np.repeat(np.arange(t.n, dtype=np.int64), np.diff(c.indptr))
    reps = c.data.astype(np.int64)
    return np.repeat(doc_of_entry, reps), np.repeat(c.indices.astype(np.int64), reps)


def fit_lda(t: CountTable, c: LdaConfig, backend: str | None = None) -> DistributionMatrix:
    """Estimate per-document topic proportions.

    Each post-burn-in sweep contributes (n_ik + alpha) / (n_i + K alpha); the
    returned rows are the average of those estimates. The whole run is a
    function of ``c.seed``: initial assignments and per-token uniforms are
    drawn from one ``numpy.random.Generator``.
    """
    kern = _backend.get(backend)
    doc, word = _tokens(t)
    if doc.size == 0:
        raise EmptyCorpusError("corpus has no tokens")
    K, V = c.k_topics, len(t.cols)
    alpha, beta = float(c.alpha), float(c.beta)
    nd = np.bincount(doc, minlength=t.n)
    if np.any(nd == 0):
        log.warning("%d documents have no tokens; their topic rows equal the prior mean", int(np.sum(nd == 0)))

    rng = np.random.default_rng(c.seed)
    z = rng.integers(0, K, size=doc.size, dtype=np.int64)
    ndk = np.zeros((t.n, K), dtype=np.int64)
    nkw = np.zeros((K, V), dtype=np.int64)
    np.add.at(ndk, (doc, z), 1)
    np.add.at(nkw, (z, word), 1)
    nk = nkw.sum(axis=1)

    theta = np.zeros((t.n, K))
    denom = (nd + K * alpha)[:, None]
    for sweep in range(1, c.sweeps + 1):
        u = rng.random(doc.size)
        kern.gibbs_sweep(doc, word, z, ndk, nkw, nk, alpha, beta, V * beta, u)
        if sweep > c.burn_in:
            theta += (ndk + alpha) / denom
    theta /= c.sweeps - c.burn_in
    theta /= theta.sum(axis=1, keepdims=True)
    width = len(str(K - 1))
    cols = tuple(f"topic_{k:0{width}d}" for k in range(K))
    return DistributionMatrix(t.rows, cols, theta)
