# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid zero-set kernel; callers guarantee int64 cannot overflow."""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


def zero_points(polys, int nvars, values):
    cdef int nvals = len(values)
    cdef int npolys = len(polys)
    cdef int nterms = 0
    cdef int maxdeg = 0
    cdef int p, t, k, d, e, idx_ok
    for poly in polys:
        nterms += len(poly)
        for c, exps in poly:
            for e in exps:
                if e > maxdeg:
                    maxdeg = e
    if nvars == 0:
        return [()] if all(sum(c for c, _ in poly) == 0 for poly in polys) else []

    cdef int64_t *coeffs = <int64_t *> malloc(max(nterms, 1) * sizeof(int64_t))
    cdef int *exps_arr = <int *> malloc(max(nterms * nvars, 1) * sizeof(int))
    cdef int *offsets = <int *> malloc((npolys + 1) * sizeof(int))
    cdef int64_t *powers = <int64_t *> malloc(nvals * (maxdeg + 1) * sizeof(int64_t))
    cdef int *idx = <int *> malloc(nvars * sizeof(int))
    cdef int64_t total, term
    cdef int pos = 0
    out = []
    try:
        for p in range(npolys):
            offsets[p] = pos
            for c, exps in polys[p]:
                coeffs[pos] = c
                for k in range(nvars):
                    exps_arr[pos * nvars + k] = exps[k]
                pos += 1
        offsets[npolys] = pos
        for k in range(nvals):
            powers[k * (maxdeg + 1)] = 1
            for d in range(1, maxdeg + 1):
                powers[k * (maxdeg + 1) + d] = powers[k * (maxdeg + 1) + d - 1] * <int64_t> values[k]
        for k in range(nvars):
            idx[k] = 0
        while True:
            idx_ok = 1
            for p in range(npolys):
                total = 0
                for t in range(offsets[p], offsets[p + 1]):
                    term = coeffs[t]
                    for k in range(nvars):
                        e = exps_arr[t * nvars + k]
                        if e:
                            term *= powers[idx[k] * (maxdeg + 1) + e]
                    total += term
                if total != 0:
                    idx_ok = 0
                    break
            if idx_ok:
                out.append(tuple([idx[k] for k in range(nvars)]))
            k = nvars - 1
            while k >= 0:
                idx[k] += 1
                if idx[k] < nvals:
                    break
                idx[k] = 0
                k -= 1
            if k < 0:
                break
    finally:
        free(coeffs)
        free(exps_arr)
        free(offsets)
        free(powers)
        free(idx)
    return out
