# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels (64-bit point masks).

Mirrors ``_kernels_py``; the dispatcher in ``_backend`` only routes here when
every point index fits in a ``uint64``.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free

import array


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef uint64_t[::1] _as_u64(masks):
    return array.array("Q", [int(x) for x in masks])


def meet_once_neighbours(masks):
    cdef Py_ssize_t n = len(masks), i, j
    cdef uint64_t[::1] m = _as_u64(masks)
    out = []
    for i in range(n):
        row = []
        for j in range(i + 1, n):
            if __builtin_popcountll(m[i] & m[j]) == 1:
                row.append(j)
        out.append(row)
    return out


cdef struct Hits:
    Py_ssize_t *buf
    Py_ssize_t size
    Py_ssize_t cap


cdef int _push(Hits *h, Py_ssize_t i, Py_ssize_t j, Py_ssize_t k,
               Py_ssize_t l, Py_ssize_t q) noexcept nogil:
    cdef Py_ssize_t *nbuf
    if h.size == h.cap:
        h.cap = 2 * h.cap + 5
        nbuf = <Py_ssize_t *> realloc(h.buf, 5 * h.cap * sizeof(Py_ssize_t))
        if nbuf == NULL:
            return -1
        h.buf = nbuf
    h.buf[5 * h.size] = i
    h.buf[5 * h.size + 1] = j
    h.buf[5 * h.size + 2] = k
    h.buf[5 * h.size + 3] = l
    h.buf[5 * h.size + 4] = q
    h.size += 1
    return 0


cdef int _search(const uint64_t *m, Py_ssize_t n, const unsigned char *adj,
                 const Py_ssize_t *nb, const Py_ssize_t *deg, Py_ssize_t *cand,
                 Py_ssize_t start, Py_ssize_t stop, Hits *hits) noexcept nogil:
    cdef Py_ssize_t i, j, k, l, q, a, a2, b, c, ncand
    cdef uint64_t mi, mj, mk, ml, dbl, uni, d3, u3, d4
    for i in range(start, stop):
        mi = m[i]
        for a in range(deg[i]):
            j = nb[i * n + a]
            mj = m[j]
            dbl = mi & mj
            uni = mi | mj
            ncand = 0
            for b in range(deg[j]):
                k = nb[j * n + b]
                if adj[i * n + k] and not (m[k] & dbl):
                    cand[ncand] = k
                    ncand += 1
            for a2 in range(ncand):
                k = cand[a2]
                mk = m[k]
                d3 = dbl | (mk & uni)
                u3 = uni | mk
                for b in range(a2 + 1, ncand):
                    l = cand[b]
                    ml = m[l]
                    if not adj[k * n + l] or (ml & d3):
                        continue
                    d4 = d3 | (ml & u3)
                    for c in range(b + 1, ncand):
                        q = cand[c]
                        if adj[k * n + q] and adj[l * n + q] and not (m[q] & d4):
                            if _push(hits, i, j, k, l, q) < 0:
                                return -1
    return 0


def find_pentagrams(masks, Py_ssize_t start, Py_ssize_t stop):
    """Five contexts pairwise meeting in one point, no point on three of them."""
    cdef Py_ssize_t n = len(masks), i, j, t
    cdef uint64_t[::1] m = _as_u64(masks)
    cdef unsigned char *adj = <unsigned char *> malloc(n * n + 1)
    cdef Py_ssize_t *cand = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *nb = <Py_ssize_t *> malloc((n * n + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *deg = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    cdef Hits hits
    cdef int rc = 0
    hits.buf = NULL
    hits.size = 0
    hits.cap = 0
    if stop > n:
        stop = n
    if start < 0:
        start = 0
    if adj == NULL or cand == NULL or nb == NULL or deg == NULL:
        free(adj); free(cand); free(nb); free(deg)
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                deg[i] = 0
                for j in range(n):
                    adj[i * n + j] = 1 if (j != i and __builtin_popcountll(m[i] & m[j]) == 1) else 0
                    if j > i and adj[i * n + j]:
                        nb[i * n + deg[i]] = j
                        deg[i] += 1
            if n > 0 and stop > start:
                rc = _search(&m[0], n, adj, nb, deg, cand, start, stop, &hits)
        if rc < 0:
            raise MemoryError()
        return [tuple(hits.buf[5 * t + s] for s in range(5)) for t in range(hits.size)]
    finally:
        free(adj); free(cand); free(nb); free(deg); free(hits.buf)


cdef int _propagate(uint64_t *inside, uint64_t *outside, int *stack, int top,
                    const int *lines, const int *start, const int *items) noexcept nogil:
    cdef int p, t, a, b, c, n_in, n_out, fr, li
    cdef uint64_t ins = inside[0], outs = outside[0], asg
    while top > 0:
        top -= 1
        p = stack[top]
        for t in range(start[p], start[p + 1]):
            li = items[t]
            a = lines[3 * li]
            b = lines[3 * li + 1]
            c = lines[3 * li + 2]
            n_in = <int>((ins >> a) & 1) + <int>((ins >> b) & 1) + <int>((ins >> c) & 1)
            n_out = <int>((outs >> a) & 1) + <int>((outs >> b) & 1) + <int>((outs >> c) & 1)
            if n_out == 3 or (n_in == 2 and n_out == 1):
                return -1
            if n_in + n_out != 2:
                continue
            asg = ins | outs
            if not ((asg >> a) & 1):
                fr = a
            elif not ((asg >> b) & 1):
                fr = b
            else:
                fr = c
            if n_in == 1:
                outs |= (<uint64_t>1) << fr
            else:
                ins |= (<uint64_t>1) << fr
            stack[top] = fr
            top += 1
    inside[0] = ins
    outside[0] = outs
    return 0


def enumerate_hyperplanes(points_mask, lines):
    """All proper nonempty hyperplanes of a 3-point-line geometry on <= 64 points."""
    cdef uint64_t full = <uint64_t>int(points_mask)
    cdef int nl = len(lines), i, p, depth, br
    cdef int *ln = <int *> malloc((3 * nl + 1) * sizeof(int))
    cdef int *start = <int *> malloc(66 * sizeof(int))
    cdef int *fill = <int *> malloc(66 * sizeof(int))
    cdef int *items = <int *> malloc((3 * nl + 1) * sizeof(int))
    cdef int *stack = <int *> malloc(128 * sizeof(int))
    # explicit DFS frames
    cdef uint64_t *f_in = <uint64_t *> malloc(66 * sizeof(uint64_t))
    cdef uint64_t *f_out = <uint64_t *> malloc(66 * sizeof(uint64_t))
    cdef int *f_p = <int *> malloc(66 * sizeof(int))
    cdef int *f_br = <int *> malloc(66 * sizeof(int))
    cdef uint64_t ins, outs, bit
    results = []
    try:
        for i in range(66):
            start[i] = 0
        for i in range(nl):
            a, b, c = lines[i]
            ln[3 * i] = a
            ln[3 * i + 1] = b
            ln[3 * i + 2] = c
            start[a + 1] += 1
            start[b + 1] += 1
            start[c + 1] += 1
        for i in range(65):
            start[i + 1] += start[i]
        for i in range(66):
            fill[i] = start[i]
        for i in range(nl):
            for p in (ln[3 * i], ln[3 * i + 1], ln[3 * i + 2]):
                items[fill[p]] = i
                fill[p] += 1
        depth = 0
        f_in[0] = 0
        f_out[0] = 0
        f_p[0] = -1
        f_br[0] = 0
        while depth >= 0:
            ins = f_in[depth]
            outs = f_out[depth]
            if f_p[depth] < 0:
                if (ins | outs) == full:
                    if ins != 0 and ins != full:
                        results.append(int(ins))
                    depth -= 1
                    continue
                f_p[depth] = __builtin_ctzll(full & ~(ins | outs))
                f_br[depth] = 0
            br = f_br[depth]
            if br >= 2:
                depth -= 1
                continue
            f_br[depth] = br + 1
            p = f_p[depth]
            bit = (<uint64_t>1) << p
            if br == 0:
                ins = ins | bit
            else:
                outs = outs | bit
            stack[0] = p
            if _propagate(&ins, &outs, stack, 1, ln, start, items) == 0:
                depth += 1
                f_in[depth] = ins
                f_out[depth] = outs
                f_p[depth] = -1
                f_br[depth] = 0
    finally:
        free(ln); free(start); free(fill); free(items); free(stack)
        free(f_in); free(f_out); free(f_p); free(f_br)
    results.sort()
    return results
