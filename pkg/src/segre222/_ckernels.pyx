# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops over all points of PG(7, q).

Every routine works on a half-open index range ``[start, stop)`` of the point
table and releases the GIL, so callers can split the range across threads.
Field arithmetic goes through the flat lookup tables of a FieldDesc.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t, uint8_t
from libc.stdlib cimport malloc, free, calloc

cnp.import_array()

# coordinate positions of the two basis slices per direction, each in 2x2 row-major order
cdef int SL[3][2][4]
SL[0][0][:] = [0, 1, 2, 3]
SL[0][1][:] = [4, 5, 6, 7]
SL[1][0][:] = [0, 1, 4, 5]
SL[1][1][:] = [2, 3, 6, 7]
SL[2][0][:] = [0, 2, 4, 6]
SL[2][1][:] = [1, 3, 5, 7]


cdef inline int flat_rank(const int* u, int d, const int64_t[:, ::1] mul) noexcept nogil:
    cdef int m, n, a, b
    cdef bint nz = False
    for m in range(4):
        if u[SL[d][0][m]] or u[SL[d][1][m]]:
            nz = True
            break
    if not nz:
        return 0
    for m in range(4):
        for n in range(m + 1, 4):
            a = <int>mul[u[SL[d][0][m]], u[SL[d][1][n]]]
            b = <int>mul[u[SL[d][0][n]], u[SL[d][1][m]]]
            if a != b:
                return 2
    return 1


cdef inline bint pure8(const int* u, const int64_t[:, ::1] mul) noexcept nogil:
    cdef int d
    for d in range(3):
        if flat_rank(u, d, mul) != 1:
            return False
    return True


cdef inline bint nonsingular8(const int* u, int q, const int64_t[:, ::1] add,
                              const int64_t[:, ::1] mul, const int64_t[:, ::1] sub,
                              const uint8_t[:, ::1] funcs) noexcept nogil:
    cdef int d, f, c, x0, x1
    cdef int mtx[4]
    for d in range(3):
        for f in range(q + 1):
            x0 = funcs[f, 0]
            x1 = funcs[f, 1]
            for c in range(4):
                mtx[c] = <int>add[mul[x0, u[SL[d][0][c]]], mul[x1, u[SL[d][1][c]]]]
            if sub[mul[mtx[0], mtx[3]], mul[mtx[1], mtx[2]]] == 0:
                return False
    return True


def images(const uint8_t[:, ::1] coords, const int64_t[:, ::1] mat,
           const int64_t[:, ::1] add, const int64_t[:, ::1] mul, const int64_t[::1] inv,
           int q, int32_t[::1] out, Py_ssize_t start, Py_ssize_t stop):
    """out[n] = index of the point <mat @ coords[n]>, for n in [start, stop)."""
    cdef Py_ssize_t n
    cdef int r, c, acc, lead, s
    cdef int v[8]
    cdef int64_t w[8]
    cdef int64_t off[8]
    cdef int64_t idx, tot = 0
    for c in range(8):
        w[7 - c] = 1 if c == 0 else w[8 - c] * q
    for c in range(8):
        off[c] = tot
        tot += w[c]
    with nogil:
        for n in range(start, stop):
            for r in range(8):
                acc = 0
                for c in range(8):
                    if mat[r, c] and coords[n, c]:
                        acc = <int>add[acc, mul[mat[r, c], coords[n, c]]]
                v[r] = acc
            lead = 0
            while v[lead] == 0:
                lead += 1
            s = <int>inv[v[lead]]
            idx = off[lead] - w[lead]
            for c in range(lead, 8):
                idx += mul[s, v[c]] * w[c]
            out[n] = <int32_t>idx


def classify(const uint8_t[:, ::1] coords, const int64_t[:, ::1] add,
             const int64_t[:, ::1] sub, const int64_t[:, ::1] mul, int q,
             const uint8_t[:, ::1] scaled_pure, const uint8_t[:, ::1] funcs,
             uint8_t[::1] singular, uint8_t[:, ::1] flat, uint8_t[::1] rank,
             Py_ssize_t start, Py_ssize_t stop):
    """Singularity, flattening ranks and tensor rank for points in [start, stop).

    Rank 2 is decided by peeling: t has rank 2 iff t - s is pure for some
    nonzero multiple s of a pure tensor (``scaled_pure`` lists all of them).
    """
    cdef Py_ssize_t n, m, nscaled = scaled_pure.shape[0]
    cdef int c, d, r
    cdef int t[8]
    cdef int u[8]
    with nogil:
        for n in range(start, stop):
            for c in range(8):
                t[c] = coords[n, c]
            for d in range(3):
                flat[n, d] = <uint8_t>flat_rank(t, d, mul)
            singular[n] = not nonsingular8(t, q, add, mul, sub, funcs)
            if flat[n, 0] == 1 and flat[n, 1] == 1 and flat[n, 2] == 1:
                rank[n] = 1
                continue
            r = 3
            for m in range(nscaled):
                for c in range(8):
                    u[c] = <int>sub[t[c], scaled_pure[m, c]]
                if pure8(u, mul):
                    r = 2
                    break
            rank[n] = <uint8_t>r


def orbit_ids(const int32_t[:, ::1] perms):
    """Connected components of the generator permutations, numbered by least member.

    Seeds are taken in increasing index order, so the k-th orbit found is the
    one whose smallest point index is the k-th smallest among orbit minima.
    """
    cdef Py_ssize_t ngen = perms.shape[0], npts = perms.shape[1]
    cdef Py_ssize_t seed, head, tail, g
    cdef int32_t x, y, orbit = 0
    ids_arr = np.full(npts, -1, dtype=np.int32)
    cdef int32_t[::1] ids = ids_arr
    cdef uint8_t* visited = <uint8_t*>calloc((npts >> 3) + 1, 1)
    cdef int32_t* queue = <int32_t*>malloc(npts * sizeof(int32_t))
    if visited == NULL or queue == NULL:
        free(visited)
        free(queue)
        raise MemoryError()
    try:
        with nogil:
            for seed in range(npts):
                if visited[seed >> 3] & (1 << (seed & 7)):
                    continue
                visited[seed >> 3] |= 1 << (seed & 7)
                head = 0
                tail = 1
                queue[0] = <int32_t>seed
                while head < tail:
                    x = queue[head]
                    head += 1
                    ids[x] = orbit
                    for g in range(ngen):
                        y = perms[g, x]
                        if not visited[y >> 3] & (1 << (y & 7)):
                            visited[y >> 3] |= 1 << (y & 7)
                            queue[tail] = y
                            tail += 1
                orbit += 1
    finally:
        free(visited)
        free(queue)
    return ids_arr
