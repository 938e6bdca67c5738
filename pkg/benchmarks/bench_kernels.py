"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each kernel runs on identical inputs under both backends; the table reports
the best wall time of ``--repeat`` runs and the speed-up.
"""
from __future__ import annotations

import argparse
import time

import numpy as np
import scipy.sparse as sp

from multifuse import _backend
from multifuse.synth import planted_partition_graph


def gibbs_case(rng):
    docs, vocab, K, ntok = 1000, 5000, 10, 150_000
    doc = np.sort(rng.integers(0, docs, ntok)).astype(np.int64)
    word = rng.integers(0, vocab, ntok).astype(np.int64)
    z0 = rng.integers(0, K, ntok).astype(np.int64)
    u = rng.random(ntok)

    def run(kern):
        z = z0.copy()
        ndk = np.zeros((docs, K), np.int64)
        nkw = np.zeros((K, vocab), np.int64)
        np.add.at(ndk, (doc, z), 1)
        np.add.at(nkw, (z, word), 1)
        kern.gibbs_sweep(doc, word, z, ndk, nkw, nkw.sum(axis=1), 5.0, 0.01, vocab * 0.01, u)

    return "gibbs_sweep (150k tokens, K=10)", run


def louvain_case(rng):
    g, _ = planted_partition_graph((250,) * 4, 0.1, 0.01, seed=int(rng.integers(1 << 31)))
    adj = np.ascontiguousarray(g.adjacency)
    deg = adj.sum(axis=1)
    order = rng.permutation(g.n).astype(np.int64)

    def run(kern):
        labels = np.arange(g.n, dtype=np.int64)
        kern.local_move(adj, deg, labels, deg.copy(), order, 1.0, float(adj.sum()), 1e-12)

    return "local_move (n=1000)", run


def tv_case(rng):
    p = rng.random((1344, 5000))
    p[p < 0.97] = 0
    p[:, 0] += 1e-3
    m = sp.csr_matrix(p / p.sum(axis=1, keepdims=True))
    args = (m.indptr.astype(np.int64), m.indices.astype(np.int64), m.data, m.shape[0])

    def run(kern):
        kern.tv_sparse(*args)

    return "tv_sparse (1344 x 5000, 3% dense)", run


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = [b for b in ("compiled", "python") if b in _backend.BACKENDS]
    if "compiled" not in names:
        print("compiled extension not built; only the fallback is timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':38s}" + "".join(f"{n:>12s}" for n in names) + ("     speed-up" if len(names) == 2 else ""))
    for make in (gibbs_case, louvain_case, tv_case):
        label, run = make(rng)
        secs = [best_of(lambda: run(_backend.BACKENDS[n]), args.repeat) for n in names]
        line = f"{label:38s}" + "".join(f"{s:11.4f}s" for s in secs)
        if len(secs) == 2:
            line += f"{secs[1] / secs[0]:12.1f}x"
        print(line)


if __name__ == "__main__":
    main()
