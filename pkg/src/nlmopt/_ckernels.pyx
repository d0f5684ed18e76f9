# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the exact kernels in ``_kernels_py``.

Entries stay Python ints (arbitrary precision); the gain comes from typed
loop indices and list access without interpreter dispatch.
"""

from fractions import Fraction


def bareiss_det(matrix):
    cdef Py_ssize_t n = len(matrix)
    cdef Py_ssize_t i, j, k, r
    cdef list a, row_i, row_k
    cdef int sign = 1
    cdef bint found
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    prev = 1
    for k in range(n - 1):
        if (<list>a[k])[k] == 0:
            found = False
            for r in range(k + 1, n):
                if (<list>a[r])[k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    found = True
                    break
            if not found:
                return 0
        row_k = <list>a[k]
        pivot = row_k[k]
        for i in range(k + 1, n):
            row_i = <list>a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * (<list>a[n - 1])[n - 1]


def bareiss_rank(matrix):
    cdef list a = [list(row) for row in matrix]
    cdef Py_ssize_t nrows = len(a)
    cdef Py_ssize_t ncols, rank = 0, piv, c, r, i, j
    cdef list row_i, row_k
    if nrows == 0:
        return 0
    ncols = len(<list>a[0])
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if (<list>a[r])[c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
        row_k = <list>a[rank]
        pivot = row_k[c]
        for i in range(rank + 1, nrows):
            row_i = <list>a[i]
            lead = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[c] = 0
        prev = pivot
        rank += 1
    return rank


def gram_det(a, diag):
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t n = len(diag)
    cdef Py_ssize_t i, j, h
    cdef list g = [[0] * m for _ in range(m)]
    cdef list ai, aj, scaled, dg = list(diag)
    for i in range(m):
        ai = list(a[i])
        scaled = [ai[h] * dg[h] for h in range(n)]
        for j in range(i, m):
            aj = list(a[j])
            s = 0
            for h in range(n):
                if scaled[h] and aj[h]:
                    s += scaled[h] * aj[h]
            (<list>g[i])[j] = s
            (<list>g[j])[i] = s
    return bareiss_det(g)


def newton_monomial(nodes, values):
    cdef Py_ssize_t s = len(nodes)
    cdef Py_ssize_t i, k
    cdef list coef = list(values)
    cdef list xs = list(nodes)
    cdef list poly, nxt
    for k in range(1, s):
        for i in range(s - 1, k - 1, -1):
            num = coef[i] - coef[i - 1]
            den = xs[i] - xs[i - k]
            if type(num) is int:
                q, r = divmod(num, den)
                coef[i] = q if r == 0 else Fraction(num, den)
            else:
                coef[i] = num / den
    if s == 0:
        return []
    poly = [coef[s - 1]]
    for k in range(s - 2, -1, -1):
        x = xs[k]
        nxt = [0] * (len(poly) + 1)
        for i in range(len(poly)):
            c = poly[i]
            nxt[i + 1] += c
            nxt[i] -= x * c
        nxt[0] += coef[k]
        poly = nxt
    return poly
