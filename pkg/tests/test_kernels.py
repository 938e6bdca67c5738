import os
import subprocess
import sys

import numpy as np
import pytest
import scipy.sparse as sp

from multifuse import _backend

pytestmark = pytest.mark.skipif(len(_backend.BACKENDS) < 2, reason="compiled backend not built")
PY, C = _backend.BACKENDS.get("python"), _backend.BACKENDS.get("compiled")


def test_backend_selection():
    assert _backend.get("python") is PY
    assert _backend.get() is _backend.kernels
    with pytest.raises(ValueError):
        _backend.get("fortran")


@pytest.mark.parametrize("flag,expect", [("1", "python"), ("0", "compiled")])
def test_env_forces_backend(flag, expect):
    env = dict(os.environ, MULTIFUSE_PURE_PYTHON=flag)
    out = subprocess.run([sys.executable, "-c", "import multifuse; print(multifuse.KERNEL_BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expect


@pytest.mark.parametrize("seed", range(5))
def test_tv_sparse_agrees(seed):
    rng = np.random.default_rng(seed)
    p = rng.random((40, 60))
    p[p < 0.8] = 0
    p[:, 0] += 0.01
    m = sp.csr_matrix(p / p.sum(axis=1, keepdims=True))
    args = (m.indptr.astype(np.int64), m.indices.astype(np.int64), m.data, 40)
    assert np.array_equal(np.asarray(PY.tv_sparse(*args)), np.asarray(C.tv_sparse(*args)))


def _state(seed, n_docs=20, V=30, K=4, ntok=400):
    rng = np.random.default_rng(seed)
    doc = np.sort(rng.integers(0, n_docs, ntok)).astype(np.int64)
    word = rng.integers(0, V, ntok).astype(np.int64)
    z = rng.integers(0, K, ntok).astype(np.int64)
    ndk = np.zeros((n_docs, K), np.int64)
    nkw = np.zeros((K, V), np.int64)
    np.add.at(ndk, (doc, z), 1)
    np.add.at(nkw, (z, word), 1)
    return doc, word, z, ndk, nkw, nkw.sum(axis=1), rng.random(ntok)


@pytest.mark.parametrize("seed", range(5))
def test_gibbs_sweep_bit_identical(seed):
    a, b = _state(seed), _state(seed)
    PY.gibbs_sweep(*a[:6], 0.5, 0.01, 30 * 0.01, a[6])
    C.gibbs_sweep(*b[:6], 0.5, 0.01, 30 * 0.01, b[6])
    for x, y in zip(a[2:6], b[2:6]):
        assert np.array_equal(x, y)
    doc, word, z, ndk, nkw, nk, _ = a
    assert ndk.sum() == nkw.sum() == nk.sum() == z.size
    assert np.array_equal(np.bincount(doc * 4 + z, minlength=ndk.size).reshape(ndk.shape), ndk)


@pytest.mark.parametrize("seed", range(5))
def test_local_move_agrees(seed):
    rng = np.random.default_rng(seed)
    n = 50
    a = rng.random((n, n)) * (rng.random((n, n)) < 0.15)
    a = np.triu(a, 1)
    a = np.ascontiguousarray(a + a.T)
    deg = a.sum(axis=1)
    order = rng.permutation(n).astype(np.int64)
    out = []
    for kern in (PY, C):
        labels, tot = np.arange(n, dtype=np.int64), deg.copy()
        moves = kern.local_move(a, deg, labels, tot, order, 1.0, float(a.sum()), 1e-12)
        out.append((moves, labels, tot))
    assert out[0][0] == out[1][0] > 0
    assert np.array_equal(out[0][1], out[1][1])
    assert np.max(np.abs(out[0][2] - out[1][2])) < 1e-12
