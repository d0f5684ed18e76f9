"""Pure-Python exact arithmetic kernels.

This module mirrors ``_ckernels.pyx`` function for function; ``nlmopt.kernels``
picks whichever is available. All inputs are Python ints (or Fractions for
``newton_monomial``); nothing here touches floating point.
"""

from fractions import Fraction


def bareiss_det(matrix):
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def bareiss_rank(matrix):
    """Rank of an integer matrix (any shape) by fraction-free row echelon form."""
    a = [list(row) for row in matrix]
    nrows = len(a)
    if nrows == 0:
        return 0
    ncols = len(a[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if a[r][c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
        row_k = a[rank]
        pivot = row_k[c]
        for i in range(rank + 1, nrows):
            row_i = a[i]
            lead = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[c] = 0
        prev = pivot
        rank += 1
    return rank


def gram_det(a, diag):
    """det(A * diag(diag) * A^T) for an m x n integer matrix A."""
    m = len(a)
    n = len(diag)
    g = [[0] * m for _ in range(m)]
    for i in range(m):
        ai = a[i]
        scaled = [ai[h] * diag[h] for h in range(n)]
        for j in range(i, m):
            aj = a[j]
            s = 0
            for h in range(n):
                if scaled[h] and aj[h]:
                    s += scaled[h] * aj[h]
            g[i][j] = s
            g[j][i] = s
    return bareiss_det(g)


def newton_monomial(nodes, values):
    """Coefficients c_0..c_{s-1} of the interpolating polynomial, lowest degree first.

    Divided differences are formed in place; a quotient stays an int whenever
    the division is exact and becomes a Fraction otherwise. The Newton form is
    then expanded to the monomial basis by nested multiplication.
    """
    s = len(nodes)
    coef = list(values)
    for k in range(1, s):
        for i in range(s - 1, k - 1, -1):
            num = coef[i] - coef[i - 1]
            den = nodes[i] - nodes[i - k]
            if type(num) is int:
                q, r = divmod(num, den)
                coef[i] = q if r == 0 else Fraction(num, den)
            else:
                coef[i] = num / den
    if s == 0:
        return []
    poly = [coef[s - 1]]
    for k in range(s - 2, -1, -1):
        x = nodes[k]
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= x * c
        nxt[0] += coef[k]
        poly = nxt
    return poly
