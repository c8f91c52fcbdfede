# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP-backed integer kernels (compiled counterpart of ``_kernels_py``).

Python ints cross the boundary as little-endian magnitude bytes; all
arithmetic in between runs on ``mpz_t`` with exact division.
"""
from libc.stdlib cimport malloc, free
from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    ctypedef __mpz_struct* mpz_ptr

    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_set_si(mpz_ptr, long)
    void mpz_swap(mpz_ptr, mpz_ptr)
    void mpz_mul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_submul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_addmul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_divexact(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_neg(mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_ptr)
    int mpz_fits_slong_p(mpz_ptr)
    long mpz_get_si(mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    void mpz_import(mpz_ptr, size_t, int, size_t, int, size_t, const void*)
    void* mpz_export(void*, size_t*, int, size_t, int, size_t, mpz_ptr)


cdef long _SMALL = 1 << 62


cdef int _load(mpz_ptr z, object x) except -1:
    cdef bytes raw
    cdef Py_ssize_t nbytes
    if -_SMALL < x < _SMALL:
        mpz_set_si(z, <long>x)
        return 0
    neg = x < 0
    if neg:
        x = -x
    nbytes = (x.bit_length() + 7) // 8
    raw = x.to_bytes(nbytes, "little")
    mpz_import(z, nbytes, -1, 1, 0, 0, PyBytes_AS_STRING(raw))
    if neg:
        mpz_neg(z, z)
    return 0


cdef object _dump(mpz_ptr z):
    cdef size_t count = 0
    cdef size_t size
    cdef bytes raw
    if mpz_fits_slong_p(z):
        return mpz_get_si(z)
    size = (mpz_sizeinbase(z, 2) + 7) // 8
    raw = PyBytes_FromStringAndSize(NULL, size)
    mpz_export(PyBytes_AS_STRING(raw), &count, -1, 1, 0, 0, z)
    value = int.from_bytes(raw[:count], "little")
    return -value if mpz_sgn(z) < 0 else value


cdef class _Matrix:
    """Row-major block of initialized mpz_t cells."""
    cdef mpz_t* cells
    cdef Py_ssize_t nrows, ncols

    def __cinit__(self, Py_ssize_t nrows, Py_ssize_t ncols):
        cdef Py_ssize_t i
        self.nrows = nrows
        self.ncols = ncols
        self.cells = <mpz_t*>malloc(max(nrows * ncols, 1) * sizeof(mpz_t))
        if self.cells == NULL:
            raise MemoryError()
        for i in range(nrows * ncols):
            mpz_init(self.cells[i])

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.cells != NULL:
            for i in range(self.nrows * self.ncols):
                mpz_clear(self.cells[i])
            free(self.cells)

    cdef inline mpz_ptr at(self, Py_ssize_t i, Py_ssize_t j):
        return self.cells[i * self.ncols + j]

    cdef void swap_rows(self, Py_ssize_t a, Py_ssize_t b):
        cdef Py_ssize_t j
        for j in range(self.ncols):
            mpz_swap(self.at(a, j), self.at(b, j))


def gram(rows):
    """Pairwise dot products ``G[i][j] = rows[i] . rows[j]`` (symmetric)."""
    cdef Py_ssize_t k = len(rows)
    cdef Py_ssize_t dim = len(rows[0]) if k else 0
    cdef Py_ssize_t i, j, c
    cdef _Matrix m = _Matrix(k, dim)
    cdef mpz_t acc
    for i in range(k):
        row = rows[i]
        for c in range(dim):
            _load(m.at(i, c), row[c])
    out = [[0] * k for _ in range(k)]
    mpz_init(acc)
    try:
        for i in range(k):
            for j in range(i, k):
                mpz_set_si(acc, 0)
                for c in range(dim):
                    mpz_addmul(acc, m.at(i, c), m.at(j, c))
                v = _dump(acc)
                out[i][j] = v
                out[j][i] = v
    finally:
        mpz_clear(acc)
    return out


def solve(matrix, rhs):
    """Solve a square integer system by fraction-free (Bareiss) elimination.

    Returns ``(y, det)`` with ``x_i = y[i] / det``, or ``None`` if singular.
    """
    cdef Py_ssize_t n = len(matrix)
    cdef Py_ssize_t i, j, k, piv
    cdef _Matrix a = _Matrix(n, n + 1)
    cdef mpz_t prev, tmp
    if n == 0:
        return [], 1
    for i in range(n):
        row = matrix[i]
        for j in range(n):
            _load(a.at(i, j), row[j])
        _load(a.at(i, n), rhs[i])
    mpz_init(prev)
    mpz_init(tmp)
    try:
        mpz_set_si(prev, 1)
        for k in range(n):
            piv = k
            while piv < n and mpz_sgn(a.at(piv, k)) == 0:
                piv += 1
            if piv == n:
                return None
            if piv != k:
                a.swap_rows(k, piv)
            for i in range(k + 1, n):
                for j in range(k + 1, n + 1):
                    mpz_mul(tmp, a.at(k, k), a.at(i, j))
                    mpz_submul(tmp, a.at(i, k), a.at(k, j))
                    mpz_divexact(a.at(i, j), tmp, prev)
                mpz_set_si(a.at(i, k), 0)
            mpz_set(prev, a.at(k, k))
        # back substitution for y = det * x, reusing the rhs column
        for i in range(n - 1, -1, -1):
            mpz_mul(tmp, prev, a.at(i, n))
            for j in range(i + 1, n):
                mpz_submul(tmp, a.at(i, j), a.at(j, n))
            mpz_divexact(a.at(i, n), tmp, a.at(i, i))
        y = [_dump(a.at(i, n)) for i in range(n)]
        return y, _dump(prev)
    finally:
        mpz_clear(prev)
        mpz_clear(tmp)


def rank(matrix):
    """Rank of an integer matrix via fraction-free row echelon form."""
    cdef Py_ssize_t nrows = len(matrix)
    cdef Py_ssize_t ncols = len(matrix[0]) if nrows else 0
    cdef Py_ssize_t i, j, c, piv, r = 0
    cdef _Matrix a = _Matrix(nrows, ncols)
    cdef mpz_t prev, tmp
    for i in range(nrows):
        row = matrix[i]
        for j in range(ncols):
            _load(a.at(i, j), row[j])
    mpz_init(prev)
    mpz_init(tmp)
    try:
        mpz_set_si(prev, 1)
        for c in range(ncols):
            if r == nrows:
                break
            piv = r
            while piv < nrows and mpz_sgn(a.at(piv, c)) == 0:
                piv += 1
            if piv == nrows:
                continue
            if piv != r:
                a.swap_rows(r, piv)
            for i in range(r + 1, nrows):
                for j in range(c + 1, ncols):
                    mpz_mul(tmp, a.at(r, c), a.at(i, j))
                    mpz_submul(tmp, a.at(i, c), a.at(r, j))
                    mpz_divexact(a.at(i, j), tmp, prev)
                mpz_set_si(a.at(i, c), 0)
            mpz_set(prev, a.at(r, c))
            r += 1
        return r
    finally:
        mpz_clear(prev)
        mpz_clear(tmp)


def dots(rows, v):
    """``[row . v for row in rows]``."""
    cdef Py_ssize_t k = len(rows)
    cdef Py_ssize_t dim = len(v)
    cdef Py_ssize_t i, c
    cdef _Matrix vv = _Matrix(1, dim)
    cdef _Matrix cell = _Matrix(1, 1)
    cdef mpz_t acc
    for c in range(dim):
        _load(vv.at(0, c), v[c])
    out = []
    mpz_init(acc)
    try:
        for i in range(k):
            row = rows[i]
            mpz_set_si(acc, 0)
            for c in range(dim):
                if mpz_sgn(vv.at(0, c)) == 0:
                    continue
                _load(cell.at(0, 0), row[c])
                mpz_addmul(acc, cell.at(0, 0), vv.at(0, c))
            out.append(_dump(acc))
    finally:
        mpz_clear(acc)
    return out


def combine(coeffs, rows):
    """``sum(coeffs[j] * rows[j])`` as a list of ints."""
    cdef Py_ssize_t k = len(rows)
    cdef Py_ssize_t dim = len(rows[0])
    cdef Py_ssize_t j, c
    cdef _Matrix acc = _Matrix(1, dim)
    cdef _Matrix cell = _Matrix(1, 2)
    for j in range(k):
        if not coeffs[j]:
            continue
        _load(cell.at(0, 0), coeffs[j])
        row = rows[j]
        for c in range(dim):
            _load(cell.at(0, 1), row[c])
            mpz_addmul(acc.at(0, c), cell.at(0, 0), cell.at(0, 1))
    return [_dump(acc.at(0, c)) for c in range(dim)]
