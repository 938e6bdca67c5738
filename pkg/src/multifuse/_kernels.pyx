# cython: language_level=3
"""Compiled inner loops. Semantics are mirrored exactly by ``_fallback``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

DEF MAX_PASSES = 10000


def _by_column(indptr, indices, data, n):
    """CSR -> column-major (colptr, row, value); rows stay ascending within a column."""
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    order = np.argsort(indices, kind="stable")
    ncols = int(indices.max()) + 1 if len(indices) else 0
    colptr = np.zeros(ncols + 1, dtype=np.int64)
    np.cumsum(np.bincount(indices, minlength=ncols), out=colptr[1:])
    return colptr, np.ascontiguousarray(rows[order]), np.ascontiguousarray(np.asarray(data)[order])


def tv_sparse(const long[::1] indptr, const long[::1] indices, const double[::1] data, Py_ssize_t n):
    """Pairwise sum of elementwise minima between CSR rows.

    Walks each feature's posting list, so only pairs sharing a feature cost
    anything; contributions to every entry are added in ascending feature order.
    """
    out_arr = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    colptr_a, rows_a, vals_a = _by_column(np.asarray(indptr), np.asarray(indices), np.asarray(data), n)
    cdef const long[::1] colptr = colptr_a
    cdef const long[::1] rows = rows_a
    cdef const double[::1] vals = vals_a
    cdef Py_ssize_t c, a, b, i, j, ncols = colptr.shape[0] - 1
    cdef double x, y
    with nogil:
        for c in range(ncols):
            for a in range(colptr[c], colptr[c + 1]):
                i = rows[a]
                x = vals[a]
                for b in range(a + 1, colptr[c + 1]):
                    y = vals[b]
                    out[i, rows[b]] += x if x < y else y
        for i in range(n):
            for j in range(i + 1, n):
                out[j, i] = out[i, j]
    return out_arr


def gibbs_sweep(const long[::1] doc, const long[::1] word, long[::1] z,
                long[:, ::1] ndk, long[:, ::1] nkw, long[::1] nk,
                double alpha, double beta, double vbeta, const double[::1] u):
    """One collapsed Gibbs sweep over all tokens, in token order."""
    cdef Py_ssize_t t, k, n_tok = z.shape[0], K = nk.shape[0]
    cdef long d, w, old, new
    cdef double total, target
    cdef double[::1] cum = np.empty(K, dtype=np.float64)
    with nogil:
        for t in range(n_tok):
            d = doc[t]
            w = word[t]
            old = z[t]
            ndk[d, old] -= 1
            nkw[old, w] -= 1
            nk[old] -= 1
            total = 0.0
            for k in range(K):
                total = total + (ndk[d, k] + alpha) * (nkw[k, w] + beta) / (nk[k] + vbeta)
                cum[k] = total
            target = u[t] * total
            new = K - 1
            for k in range(K):
                if cum[k] > target:
                    new = k
                    break
            z[t] = new
            ndk[d, new] += 1
            nkw[new, w] += 1
            nk[new] += 1


def local_move(const double[:, ::1] adj, const double[::1] deg, long[::1] labels,
               double[::1] tot, const long[::1] order, double resolution, double two_m, double tol):
    """Louvain local-moving phase on a dense weighted adjacency.

    Repeats passes over ``order`` until a full pass makes no move. Returns the
    number of accepted moves.
    """
    cdef Py_ssize_t n = adj.shape[0], p, j, q, n_touch
    cdef long i, c, own, best_c
    cdef double ki, g, best_g, own_g, wij
    cdef long moves = 0, pass_moves, n_pass = 0
    cdef double[::1] w = np.zeros(n, dtype=np.float64)
    cdef long[::1] touched = np.empty(n, dtype=np.int64)
    cdef char[::1] seen = np.zeros(n, dtype=np.int8)
    cdef double min_gain = tol * two_m / 2.0
    with nogil:
        while True:
            pass_moves = 0
            for p in range(n):
                i = order[p]
                ki = deg[i]
                own = labels[i]
                n_touch = 0
                for j in range(n):
                    if j == i:
                        continue
                    wij = adj[i, j]
                    if wij > 0.0:
                        c = labels[j]
                        if not seen[c]:
                            seen[c] = 1
                            touched[n_touch] = c
                            n_touch += 1
                        w[c] += wij
                tot[own] -= ki
                own_g = w[own] - resolution * tot[own] * ki / two_m
                best_c = own
                best_g = own_g
                for q in range(n_touch):
                    c = touched[q]
                    g = w[c] - resolution * tot[c] * ki / two_m
                    if g > best_g or (g == best_g and c < best_c):
                        best_g = g
                        best_c = c
                if best_c != own and best_g - own_g > min_gain:
                    labels[i] = best_c
                    tot[best_c] += ki
                    pass_moves += 1
                else:
                    tot[own] += ki
                for q in range(n_touch):
                    c = touched[q]
                    w[c] = 0.0
                    seen[c] = 0
            moves += pass_moves
            n_pass += 1
            if pass_moves == 0 or n_pass >= MAX_PASSES:
                break
    return moves
