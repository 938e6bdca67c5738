"""Pure-Python versions of the compiled kernels.

Each function performs the same floating-point operations in the same order
as its counterpart in ``_kernels.pyx``, so both backends return identical
results.
"""
from __future__ import annotations

import numpy as np

MAX_PASSES = 10000


def _by_column(indptr, indices, data, n):
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    order = np.argsort(indices, kind="stable")
    ncols = int(indices.max()) + 1 if len(indices) else 0
    colptr = np.zeros(ncols + 1, dtype=np.int64)
    np.cumsum(np.bincount(indices, minlength=ncols), out=colptr[1:])
    return colptr, rows[order], np.asarray(data)[order]


def tv_sparse(indptr, indices, data, n):
    indptr, indices = np.asarray(indptr), np.asarray(indices)
    colptr, rows, vals = _by_column(indptr, indices, data, n)
    out = np.zeros((n, n), dtype=np.float64)
    for c in range(colptr.size - 1):
        lo, hi = colptr[c], colptr[c + 1]
        if hi - lo < 2:
            continue
        r, v = rows[lo:hi], vals[lo:hi]
        out[np.ix_(r, r)] += np.minimum.outer(v, v)
    np.fill_diagonal(out, 0.0)
    return out


def gibbs_sweep(doc, word, z, ndk, nkw, nk, alpha, beta, vbeta, u):
    K = nk.shape[0]
    cum = [0.0] * K
    ndk_l = ndk.tolist()
    nkw_l = nkw.tolist()
    nk_l = nk.tolist()
    z_l = z.tolist()
    doc_l = doc.tolist()
    word_l = word.tolist()
    u_l = u.tolist()
    for t in range(len(z_l)):
        d = doc_l[t]
        w = word_l[t]
        old = z_l[t]
        ndk_l[d][old] -= 1
        nkw_l[old][w] -= 1
        nk_l[old] -= 1
        row = ndk_l[d]
        total = 0.0
        for k in range(K):
            total = total + (row[k] + alpha) * (nkw_l[k][w] + beta) / (nk_l[k] + vbeta)
            cum[k] = total
        target = u_l[t] * total
        new = K - 1
        for k in range(K):
            if cum[k] > target:
                new = k
                break
        z_l[t] = new
        ndk_l[d][new] += 1
        nkw_l[new][w] += 1
        nk_l[new] += 1
    z[:] = z_l
    ndk[:] = ndk_l
    nkw[:] = nkw_l
    nk[:] = nk_l


def local_move(adj, deg, labels, tot, order, resolution, two_m, tol):
    n = adj.shape[0]
    min_gain = tol * two_m / 2.0
    moves = 0
    for _ in range(MAX_PASSES):
        pass_moves = 0
        for i in order:
            i = int(i)
            ki = deg[i]
            own = int(labels[i])
            row = adj[i].copy()
            row[i] = 0.0
            w = np.bincount(labels, weights=row, minlength=n)
            present = np.zeros(n, dtype=bool)
            present[labels[row > 0.0]] = True
            tot[own] -= ki
            own_g = w[own] - resolution * tot[own] * ki / two_m
            best_c, best_g = own, own_g
            cand = np.flatnonzero(present)
            if cand.size:
                g = w[cand] - resolution * tot[cand] * ki / two_m
                k = int(np.argmax(g))
                if g[k] > best_g or (g[k] == best_g and cand[k] < best_c):
                    best_c, best_g = int(cand[k]), g[k]
            if best_c != own and best_g - own_g > min_gain:
                labels[i] = best_c
                tot[best_c] += ki
                pass_moves += 1
            else:
                tot[own] += ki
        moves += pass_moves
        if pass_moves == 0:
            break
    return moves
