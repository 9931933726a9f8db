# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; contract-identical to pykernels.

The edge test is integer arithmetic, so both backends emit identical edge
sets; the EM sweep keeps the same summation order as the Python loop.
"""

from libc.math cimport log
from libc.stdlib cimport free, malloc

BACKEND = "cython"


def pairwise_edges(bag_offsets, flat_ids, flat_cnts, sizes, tnum, tden):
    """See pykernels.pairwise_edges."""
    cdef const int[:] offsets = bag_offsets
    cdef const int[:] ids = flat_ids
    cdef const int[:] cnts = flat_cnts
    cdef const int[:] bag_sizes = sizes
    cdef long long c_tnum = tnum
    cdef long long c_tden = tden
    cdef Py_ssize_t n = bag_sizes.shape[0]
    cdef Py_ssize_t i, j
    cdef int alo, ahi, blo, bhi, ia, ib
    cdef long long inter, maxlen, ca, cb
    edges = []
    for i in range(n):
        alo = offsets[i]
        ahi = offsets[i + 1]
        for j in range(i + 1, n):
            blo = offsets[j]
            bhi = offsets[j + 1]
            inter = 0
            ia = alo
            ib = blo
            while ia < ahi and ib < bhi:
                if ids[ia] < ids[ib]:
                    ia += 1
                elif ids[ia] > ids[ib]:
                    ib += 1
                else:
                    ca = cnts[ia]
                    cb = cnts[ib]
                    inter += ca if ca < cb else cb
                    ia += 1
                    ib += 1
            maxlen = bag_sizes[i] if bag_sizes[i] > bag_sizes[j] else bag_sizes[j]
            if maxlen != 0 and inter * c_tden > c_tnum * maxlen:
                edges.append((i, j, int(inter), int(maxlen)))
    return edges


def ibm1_iterate(ops, seg_starts, seg_srclen, row_offsets, probs, iterations, floor):
    """See pykernels.ibm1_iterate."""
    cdef const int[:] c_ops = ops
    cdef const int[:] c_seg_starts = seg_starts
    cdef const int[:] c_seg_srclen = seg_srclen
    cdef const int[:] c_row_offsets = row_offsets
    cdef int c_iterations = iterations
    cdef double c_floor = floor
    cdef Py_ssize_t n_entries = len(probs)
    cdef Py_ssize_t n_segments = c_seg_starts.shape[0] - 1
    cdef Py_ssize_t n_rows = c_row_offsets.shape[0] - 1
    cdef Py_ssize_t it, seg, row, k
    cdef int lo, hi, idx
    cdef double denom, ll, total, z, p
    cdef double *c_probs = <double *> malloc(n_entries * sizeof(double))
    cdef double *counts = <double *> malloc(n_entries * sizeof(double))
    if c_probs == NULL or counts == NULL:
        free(c_probs)
        free(counts)
        raise MemoryError()
    lls = []
    try:
        for k in range(n_entries):
            c_probs[k] = probs[k]
        for it in range(c_iterations):
            for k in range(n_entries):
                counts[k] = 0.0
            ll = 0.0
            for seg in range(n_segments):
                lo = c_seg_starts[seg]
                hi = c_seg_starts[seg + 1]
                denom = 0.0
                for k in range(lo, hi):
                    denom += c_probs[c_ops[k]]
                ll += log(denom) - log(<double> c_seg_srclen[seg])
                for k in range(lo, hi):
                    idx = c_ops[k]
                    counts[idx] += c_probs[idx] / denom
            lls.append(ll)
            for row in range(n_rows):
                lo = c_row_offsets[row]
                hi = c_row_offsets[row + 1]
                total = 0.0
                for k in range(lo, hi):
                    total += counts[k]
                if total <= 0.0:
                    continue
                z = 0.0
                for k in range(lo, hi):
                    p = counts[k] / total
                    if p < c_floor:
                        p = c_floor
                    counts[k] = p
                    z += p
                for k in range(lo, hi):
                    c_probs[k] = counts[k] / z
        out = [c_probs[k] for k in range(n_entries)]
    finally:
        free(c_probs)
        free(counts)
    return out, lls
