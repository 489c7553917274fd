# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Smith normal form kernel.

Twin of normone._snf_py: identical pivoting and reduction rules, so the
two kernels return identical (U, D, V).  Arithmetic is int64 with every
update checked through __int128; on overflow the kernel raises
OverflowError and the caller falls back to the pure Python twin.
"""

import numpy as np

from libc.stdint cimport int64_t

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef int64_t I64_MAX = <int64_t> 0x7FFFFFFFFFFFFFFF
cdef int64_t I64_MIN = <int64_t> (-0x7FFFFFFFFFFFFFFF - 1)


cdef inline int64_t _fit(i128 x) except? -1:
    if x > <i128> I64_MAX or x < <i128> I64_MIN:
        raise OverflowError("int64 overflow in SNF kernel")
    return <int64_t> x


cdef inline int64_t _floordiv(int64_t a, int64_t b) noexcept:
    # b > 0 throughout the algorithm
    cdef int64_t q = a / b
    if a % b != 0 and a < 0:
        q -= 1
    return q


def snf_kernel_i64(a_in):
    """Smith normal form with transforms for an int64 matrix.

    Returns (u, d, v) as int64 numpy arrays with u @ a @ v == d.
    Raises OverflowError if any intermediate value leaves int64.
    """
    cdef int m = a_in.shape[0]
    cdef int n = a_in.shape[1]
    d_np = np.array(a_in, dtype=np.int64, copy=True, order="C")
    u_np = np.eye(m, dtype=np.int64)
    v_np = np.eye(n, dtype=np.int64)
    cdef int64_t[:, ::1] d = d_np
    cdef int64_t[:, ::1] u = u_np
    cdef int64_t[:, ::1] v = v_np

    cdef int t, i, j, bi, bj, bad
    cdef int64_t x, best, q, piv
    cdef bint restart

    for t in range(min(m, n)):
        bi = -1
        bj = -1
        best = 0
        for i in range(t, m):
            for j in range(t, n):
                x = d[i, j]
                if x != 0:
                    if x < 0:
                        x = -x
                    if bi < 0 or x < best:
                        best = x
                        bi = i
                        bj = j
        if bi < 0:
            break
        if bi != t:
            for j in range(n):
                x = d[t, j]; d[t, j] = d[bi, j]; d[bi, j] = x
            for j in range(m):
                x = u[t, j]; u[t, j] = u[bi, j]; u[bi, j] = x
        if bj != t:
            for i in range(m):
                x = d[i, t]; d[i, t] = d[i, bj]; d[i, bj] = x
            for i in range(n):
                x = v[i, t]; v[i, t] = v[i, bj]; v[i, bj] = x
        if d[t, t] < 0:
            for j in range(n):
                d[t, j] = _fit(-(<i128> d[t, j]))
            for j in range(m):
                u[t, j] = _fit(-(<i128> u[t, j]))

        while True:
            restart = False
            for i in range(t + 1, m):
                if d[i, t] == 0:
                    continue
                q = _floordiv(d[i, t], d[t, t])
                if q != 0:
                    for j in range(n):
                        d[i, j] = _fit(<i128> d[i, j] - <i128> q * d[t, j])
                    for j in range(m):
                        u[i, j] = _fit(<i128> u[i, j] - <i128> q * u[t, j])
                if d[i, t] != 0:
                    for j in range(n):
                        x = d[t, j]; d[t, j] = d[i, j]; d[i, j] = x
                    for j in range(m):
                        x = u[t, j]; u[t, j] = u[i, j]; u[i, j] = x
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, n):
                if d[t, j] == 0:
                    continue
                q = _floordiv(d[t, j], d[t, t])
                if q != 0:
                    for i in range(m):
                        d[i, j] = _fit(<i128> d[i, j] - <i128> q * d[i, t])
                    for i in range(n):
                        v[i, j] = _fit(<i128> v[i, j] - <i128> q * v[i, t])
                if d[t, j] != 0:
                    for i in range(m):
                        x = d[i, t]; d[i, t] = d[i, j]; d[i, j] = x
                    for i in range(n):
                        x = v[i, t]; v[i, t] = v[i, j]; v[i, j] = x
                    restart = True
                    break
            if restart:
                continue
            piv = d[t, t]
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i, j] % piv != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            for j in range(n):
                d[t, j] = _fit(<i128> d[t, j] + <i128> d[bad, j])
            for j in range(m):
                u[t, j] = _fit(<i128> u[t, j] + <i128> u[bad, j])

    return u_np, d_np, v_np
