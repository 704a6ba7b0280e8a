# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for dense matrices over a prime field.

Matrices are flat row-major Python lists of residues in [0, p).  Semantics
match the generic ring implementations in grembed.linalg exactly, including
pivot choices, so both backends produce identical canonical forms.
"""

from libc.stdlib cimport free, malloc


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a in [1, p), p prime
    cdef long long old_r = a % p, r = p
    cdef long long old_s = 1, s = 0
    cdef long long q, t
    while r != 0:
        q = old_r / r
        t = old_r - q * r
        old_r = r
        r = t
        t = old_s - q * s
        old_s = s
        s = t
    old_s %= p
    if old_s < 0:
        old_s += p
    return old_s


cdef long long* _to_c(object entries, Py_ssize_t count) except NULL:
    cdef long long* buf = <long long*> malloc(count * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(count):
        buf[i] = entries[i]
    return buf


def matmul(object a, int ar, int ac, object b, int br, int bc, long long p):
    """Product of an ar x ac and a br x bc matrix mod p (ac == br)."""
    cdef long long* ca = _to_c(a, ar * ac)
    cdef long long* cb
    try:
        cb = _to_c(b, br * bc)
    except:
        free(ca)
        raise
    cdef list out = [0] * (ar * bc)
    cdef Py_ssize_t i, j, k
    cdef long long acc
    try:
        for i in range(ar):
            for j in range(bc):
                acc = 0
                for k in range(ac):
                    acc = (acc + ca[i * ac + k] * cb[k * bc + j]) % p
                out[i * bc + j] = acc
        return out
    finally:
        free(ca)
        free(cb)


def det(object entries, int n, long long p):
    """Determinant mod p via fraction-free Bareiss elimination."""
    if n == 0:
        return 1 % p
    cdef long long* m = _to_c(entries, n * n)
    cdef long long sign = 1, prev = 1, pivot, inv_prev, num
    cdef Py_ssize_t i, j, k
    cdef long long result
    try:
        for k in range(n - 1):
            if m[k * n + k] == 0:
                for i in range(k + 1, n):
                    if m[i * n + k] != 0:
                        for j in range(n):
                            num = m[k * n + j]
                            m[k * n + j] = m[i * n + j]
                            m[i * n + j] = num
                        sign = -sign
                        break
                else:
                    return 0
            pivot = m[k * n + k]
            inv_prev = _inv_mod(prev, p)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = (pivot * m[i * n + j] - m[i * n + k] * m[k * n + j]) % p
                    if num < 0:
                        num += p
                    m[i * n + j] = (num * inv_prev) % p
            prev = pivot
        result = m[n * n - 1]
        if sign < 0:
            result = (p - result) % p
        return result
    finally:
        free(m)


def rcef(object entries, int nrows, int ncols, long long p):
    """Reduced column echelon form pivoting on the first nonzero rows.

    Returns (flat entries, pivot row tuple), or None when the columns do
    not span freely with full rank, mirroring the generic algorithm.
    """
    cdef long long* m = _to_c(entries, nrows * ncols)
    cdef Py_ssize_t row, j, i, pick
    cdef int placed = 0
    cdef long long inv, f, tmp
    cdef list pivots = []
    try:
        for row in range(nrows):
            if placed == ncols:
                break
            pick = -1
            for j in range(placed, ncols):
                if m[row * ncols + j] != 0:
                    pick = j
                    break
            if pick < 0:
                continue
            if pick != placed:
                for i in range(nrows):
                    tmp = m[i * ncols + placed]
                    m[i * ncols + placed] = m[i * ncols + pick]
                    m[i * ncols + pick] = tmp
            inv = _inv_mod(m[row * ncols + placed], p)
            for i in range(nrows):
                m[i * ncols + placed] = (m[i * ncols + placed] * inv) % p
            for j in range(ncols):
                if j == placed:
                    continue
                f = m[row * ncols + j]
                if f == 0:
                    continue
                for i in range(nrows):
                    tmp = (m[i * ncols + j] - f * m[i * ncols + placed]) % p
                    if tmp < 0:
                        tmp += p
                    m[i * ncols + j] = tmp
            pivots.append(row)
            placed += 1
        if placed < ncols:
            return None
        out = [0] * (nrows * ncols)
        for i in range(nrows * ncols):
            out[i] = m[i]
        return out, tuple(pivots)
    finally:
        free(m)
