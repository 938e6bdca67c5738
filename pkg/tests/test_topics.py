import numpy as np
import pytest
import scipy.sparse as sp

import oracles
from multifuse import _backend
from multifuse.errors import ConfigError, EmptyCorpusError
from multifuse.ingest import CountTable
from multifuse.model import DistributionMatrix
from multifuse.similarity import total_variation_layer
from multifuse.topics import LdaConfig, fit_lda


def table(dense):
    dense = np.asarray(dense, dtype=np.int64)
    return CountTable([f"d{i}" for i in range(dense.shape[0])], [f"w{j}" for j in range(dense.shape[1])],
                      sp.csr_matrix(dense))


def test_config_defaults_and_validation():
    c = LdaConfig(k_topics=4)
    assert c.alpha == 12.5 and c.beta == 0.01 and c.sweeps == 1000 and c.burn_in == 500
    for bad in ({"k_topics": 0}, {"alpha": -1.0}, {"beta": 0.0}, {"sweeps": 10, "burn_in": 10}, {"seed": -1}):
        with pytest.raises(ConfigError):
            LdaConfig(**bad)


def test_single_topic_is_exactly_one(backend):
    th = fit_lda(table([[3, 1], [0, 2], [5, 5]]), LdaConfig(k_topics=1, sweeps=20, burn_in=5), backend=backend)
    assert th.dense().tolist() == [[1.0], [1.0], [1.0]]
    assert th.cols == ("topic_0",)


def test_empty_corpus_rejected():
    with pytest.raises(EmptyCorpusError):
        fit_lda(table([[0, 0]]), LdaConfig(k_topics=2, sweeps=2, burn_in=1))


def test_rows_are_distributions_and_deterministic(backend, rng):
    t = table(rng.integers(0, 4, size=(12, 20)))
    c = LdaConfig(k_topics=5, sweeps=40, burn_in=20, seed=7)
    a, b = fit_lda(t, c, backend=backend), fit_lda(t, c, backend=backend)
    assert np.array_equal(a.dense(), b.dense())
    assert np.max(np.abs(a.dense().sum(axis=1) - 1)) < 1e-12
    assert a.cols == tuple(f"topic_{k}" for k in range(5))
    other = fit_lda(t, LdaConfig(k_topics=5, sweeps=40, burn_in=20, seed=8), backend=backend)
    assert not np.array_equal(a.dense(), other.dense())


def test_backends_bit_identical(rng):
    if len(_backend.BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    t = table(rng.integers(0, 5, size=(15, 30)))
    c = LdaConfig(k_topics=4, sweeps=30, burn_in=10, seed=3)
    assert np.array_equal(fit_lda(t, c, backend="python").dense(), fit_lda(t, c, backend="compiled").dense())


def _sampler_expectation(docs, K, alpha, beta, V, stat, sweeps, burn_in, seed, backend):
    kern = _backend.get(backend)
    doc = np.array([d for d, ws in enumerate(docs) for _ in ws], dtype=np.int64)
    word = np.array([w for ws in docs for w in ws], dtype=np.int64)
    rng = np.random.default_rng(seed)
    z = rng.integers(0, K, size=doc.size, dtype=np.int64)
    ndk = np.zeros((len(docs), K), dtype=np.int64)
    nkw = np.zeros((K, V), dtype=np.int64)
    np.add.at(ndk, (doc, z), 1)
    np.add.at(nkw, (z, word), 1)
    nk = nkw.sum(axis=1)
    nd = np.array([len(ws) for ws in docs])[:, None]
    total = 0.0
    for s in range(sweeps):
        kern.gibbs_sweep(doc, word, z, ndk, nkw, nk, alpha, beta, V * beta, rng.random(doc.size))
        if s >= burn_in:
            total += stat(((ndk + alpha) / (nd + K * alpha)).tolist())
    return total / (sweeps - burn_in)


def overlap(th):
    return sum(a * b for a, b in zip(th[0], th[1]))


@pytest.mark.parametrize("docs,K,alpha,beta,V", [
    ([[0, 0, 1], [2, 2, 1]], 2, 0.5, 0.1, 3),
    ([[0, 0], [1, 1, 0]], 3, 0.3, 0.2, 2),
])
def test_sampler_matches_exact_posterior(docs, K, alpha, beta, V, backend):
    # Topic labels are exchangeable, so only label-invariant summaries have a
    # non-trivial posterior mean. Overlap sum_k theta_0k theta_1k is one.
    exact = oracles.lda_exact_theta(docs, K, alpha, beta, V, stat=overlap)
    got = _sampler_expectation(docs, K, alpha, beta, V, overlap, 40000, 1000, 11, backend)
    assert abs(got - exact) < 0.01


def test_disjoint_vocabularies_separate(backend):
    rng = np.random.default_rng(0)
    dense = np.zeros((20, 20), dtype=np.int64)
    dense[:10, :10] = rng.integers(3, 8, size=(10, 10))
    dense[10:, 10:] = rng.integers(3, 8, size=(10, 10))
    th = fit_lda(table(dense), LdaConfig(k_topics=2, alpha=0.1, sweeps=200, burn_in=100), backend=backend).dense()
    top = th.argmax(axis=1)
    assert len(set(top[:10])) == 1 and len(set(top[10:])) == 1 and top[0] != top[10]
    assert th.max(axis=1).min() > 0.9


def test_tv_similarity_ignores_topic_labels(rng):
    t = table(rng.integers(0, 4, size=(10, 15)))
    th = fit_lda(t, LdaConfig(k_topics=4, sweeps=30, burn_in=10))
    perm = rng.permutation(4)
    relabeled = DistributionMatrix(th.rows, tuple(th.cols[k] for k in perm), th.dense()[:, perm])
    assert np.max(np.abs(total_variation_layer(th).values - total_variation_layer(relabeled).values)) < 1e-15
