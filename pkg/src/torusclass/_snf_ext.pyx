# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Smith normal form kernel on 64-bit words.

Mirrors ``_snf_py.snf_inplace`` step for step.  Every multiply/add is
overflow-checked; on overflow ``OverflowError`` is raised and the caller
reruns the exact big-integer path.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int tc_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int tc_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    static inline int tc_add(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    """
    int tc_mul(long long a, long long b, long long *r) nogil
    int tc_sub(long long a, long long b, long long *r) nogil
    int tc_add(long long a, long long b, long long *r) nogil

cdef long long LL_MIN = -9223372036854775807LL - 1


cdef inline long long floordiv(long long a, long long p) nogil:
    # p > 0
    cdef long long q = a / p
    if (a % p != 0) and (a < 0):
        q -= 1
    return q


cdef inline int absval(long long a, long long *r) nogil:
    if a == LL_MIN:
        return 1
    r[0] = -a if a < 0 else a
    return 0


cdef int axpy(long long *dst, long long *src, long long q, Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t stride) nogil:
    # dst[k] -= q * src[k] for k in [lo, hi), elements spaced by stride
    cdef Py_ssize_t k
    cdef long long prod, res
    for k in range(lo, hi):
        if tc_mul(q, src[k * stride], &prod):
            return 1
        if tc_sub(dst[k * stride], prod, &res):
            return 1
        dst[k * stride] = res
    return 0


cdef void swap_rows(long long *M, Py_ssize_t ncol, Py_ssize_t a, Py_ssize_t b) nogil:
    cdef Py_ssize_t k
    cdef long long tmp
    for k in range(ncol):
        tmp = M[a * ncol + k]
        M[a * ncol + k] = M[b * ncol + k]
        M[b * ncol + k] = tmp


cdef void swap_cols(long long *M, Py_ssize_t nrow, Py_ssize_t ncol, Py_ssize_t a, Py_ssize_t b) nogil:
    cdef Py_ssize_t k
    cdef long long tmp
    for k in range(nrow):
        tmp = M[k * ncol + a]
        M[k * ncol + a] = M[k * ncol + b]
        M[k * ncol + b] = tmp


cdef int kernel(long long *A, long long *U, long long *V, Py_ssize_t m, Py_ssize_t n) nogil:
    cdef Py_ssize_t t = 0, i, j, k, pi, pj, bad
    cdef long long a, best, p, q, res
    cdef bint clean
    while t < m and t < n:
        best = -1
        pi = -1
        pj = -1
        for i in range(t, m):
            for j in range(t, n):
                if A[i * n + j] != 0:
                    if absval(A[i * n + j], &a):
                        return 1
                    if best < 0 or a < best:
                        best = a
                        pi = i
                        pj = j
        if best < 0:
            break
        if pi != t:
            swap_rows(A, n, t, pi)
            swap_rows(U, m, t, pi)
        if pj != t:
            swap_cols(A, m, n, t, pj)
            swap_cols(V, n, n, t, pj)
        while True:
            if A[t * n + t] < 0:
                for k in range(n):
                    if A[t * n + k] == LL_MIN:
                        return 1
                    A[t * n + k] = -A[t * n + k]
                for k in range(m):
                    if U[t * m + k] == LL_MIN:
                        return 1
                    U[t * m + k] = -U[t * m + k]
            p = A[t * n + t]
            clean = True
            for i in range(t + 1, m):
                if A[i * n + t] != 0:
                    q = floordiv(A[i * n + t], p)
                    if q != 0:
                        if axpy(A + i * n, A + t * n, q, t, n, 1):
                            return 1
                        if axpy(U + i * m, U + t * m, q, 0, m, 1):
                            return 1
                    if A[i * n + t] != 0:
                        clean = False
            for j in range(t + 1, n):
                if A[t * n + j] != 0:
                    q = floordiv(A[t * n + j], p)
                    if q != 0:
                        if axpy(A + j, A + t, q, t, m, n):
                            return 1
                        if axpy(V + j, V + t, q, 0, n, n):
                            return 1
                    if A[t * n + j] != 0:
                        clean = False
            if not clean:
                best = -1
                pi = -1
                pj = -1
                for j in range(t + 1, n):
                    if A[t * n + j] != 0:
                        if absval(A[t * n + j], &a):
                            return 1
                        if best < 0 or a < best:
                            best = a
                            pi = t
                            pj = j
                for i in range(t + 1, m):
                    if A[i * n + t] != 0:
                        if absval(A[i * n + t], &a):
                            return 1
                        if best < 0 or a < best:
                            best = a
                            pi = i
                            pj = t
                if pi != t:
                    swap_rows(A, n, t, pi)
                    swap_rows(U, m, t, pi)
                else:
                    swap_cols(A, m, n, t, pj)
                    swap_cols(V, n, n, t, pj)
                continue
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i * n + j] % p != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            for k in range(t, n):
                if tc_add(A[t * n + k], A[bad * n + k], &res):
                    return 1
                A[t * n + k] = res
            for k in range(m):
                if tc_add(U[t * m + k], U[bad * m + k], &res):
                    return 1
                U[t * m + k] = res
        t += 1
    return 0


cdef long long *pack(list rows, Py_ssize_t r, Py_ssize_t c) except NULL:
    cdef long long *buf = <long long *> malloc(max(r * c, 1) * sizeof(long long))
    cdef Py_ssize_t i, j
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(r):
            row = rows[i]
            for j in range(c):
                buf[i * c + j] = row[j]
    except OverflowError:
        free(buf)
        raise
    return buf


cdef list unpack(long long *buf, Py_ssize_t r, Py_ssize_t c):
    cdef Py_ssize_t i, j
    return [[buf[i * c + j] for j in range(c)] for i in range(r)]


def snf(list A, Py_ssize_t m, Py_ssize_t n):
    """Return ``(D, U, V)`` as lists of lists; raises ``OverflowError`` past 64 bits."""
    cdef long long *a = NULL
    cdef long long *u = NULL
    cdef long long *v = NULL
    cdef int status
    cdef Py_ssize_t i
    eye_m = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    eye_n = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    try:
        a = pack(A, m, n)
        u = pack(eye_m, m, m)
        v = pack(eye_n, n, n)
        with nogil:
            status = kernel(a, u, v, m, n)
        if status:
            raise OverflowError("SNF intermediate exceeds 64 bits")
        return unpack(a, m, n), unpack(u, m, m), unpack(v, n, n)
    finally:
        free(a)
        free(u)
        free(v)
