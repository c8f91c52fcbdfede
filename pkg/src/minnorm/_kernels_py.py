"""Pure-Python integer kernels.

Reference implementation of the routines in ``_kernels.pyx``; used when the
compiled extension is unavailable. All routines take and return Python ints.
"""


def gram(rows):
    """Pairwise dot products ``G[i][j] = rows[i] . rows[j]`` (symmetric)."""
    k = len(rows)
    out = [[0] * k for _ in range(k)]
    for i in range(k):
        ri = rows[i]
        for j in range(i, k):
            s = sum(a * b for a, b in zip(ri, rows[j]))
            out[i][j] = s
            out[j][i] = s
    return out


def solve(matrix, rhs):
    """Solve a square integer system by fraction-free (Bareiss) elimination.

    Returns ``(y, det)`` with the solution ``x_i = y[i] / det``, or ``None``
    when the matrix is singular. ``det`` is nonzero but its sign is not
    normalized.
    """
    n = len(matrix)
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    prev = 1
    for k in range(n):
        piv = k
        while piv < n and a[piv][k] == 0:
            piv += 1
        if piv == n:
            return None
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
        rk = a[k]
        akk = rk[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            if aik == 0:
                for j in range(k + 1, n + 1):
                    ri[j] = akk * ri[j] // prev
            else:
                for j in range(k + 1, n + 1):
                    ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    if n == 0:
        return [], 1
    det = a[n - 1][n - 1]
    y = [0] * n
    for i in range(n - 1, -1, -1):
        ri = a[i]
        s = det * ri[n]
        for j in range(i + 1, n):
            s -= ri[j] * y[j]
        y[i] = s // ri[i]
    return y, det


def rank(matrix):
    """Rank of an integer matrix via fraction-free row echelon form."""
    a = [list(row) for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = r
        while piv < nrows and a[piv][c] == 0:
            piv += 1
        if piv == nrows:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        rr = a[r]
        arc = rr[c]
        for i in range(r + 1, nrows):
            ri = a[i]
            aic = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (arc * ri[j] - aic * rr[j]) // prev
            ri[c] = 0
        prev = arc
        r += 1
    return r


def dots(rows, v):
    """``[row . v for row in rows]``."""
    return [sum(a * b for a, b in zip(row, v)) for row in rows]


def combine(coeffs, rows):
    """``sum(coeffs[j] * rows[j])`` as a list of ints."""
    dim = len(rows[0])
    out = [0] * dim
    for c, row in zip(coeffs, rows):
        if c:
            for i in range(dim):
                out[i] += c * row[i]
    return out
