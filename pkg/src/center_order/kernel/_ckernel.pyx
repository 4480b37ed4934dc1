# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled interval evaluator; same contract as ``_kernel_py.eval_intervals``.

Must be built without -ffast-math: the outward rounding relies on IEEE
semantics for inf and nan.
"""

import numpy as np

cimport numpy as cnp
from libc.float cimport DBL_MAX
from libc.math cimport INFINITY, isnan, sqrt
from libc.string cimport memcpy
from libc.stdlib cimport free, malloc

cnp.import_array()

DEF OP_INPUT = 0
DEF OP_CONST = 1
DEF OP_ADD = 2
DEF OP_SUB = 3
DEF OP_MUL = 4
DEF OP_NEG = 5
DEF OP_SQR = 6
DEF OP_SQRT = 7


cdef inline double _down(double x) noexcept nogil:
    # bit-level nextafter(x, -inf); glibc's nextafter dominates the runtime otherwise
    cdef unsigned long long b
    if x != x or x == -INFINITY:
        return x
    if x == 0:
        return -4.9406564584124654e-324
    if x == INFINITY:
        return DBL_MAX
    memcpy(&b, &x, 8)
    if x > 0:
        b -= 1
    else:
        b += 1
    memcpy(&x, &b, 8)
    return x


cdef inline double _up(double x) noexcept nogil:
    cdef unsigned long long b
    if x != x or x == INFINITY:
        return x
    if x == 0:
        return 4.9406564584124654e-324
    if x == -INFINITY:
        return -DBL_MAX
    memcpy(&b, &x, 8)
    if x > 0:
        b += 1
    else:
        b -= 1
    memcpy(&x, &b, 8)
    return x


cdef inline double _min4(double a, double b, double c, double d) noexcept nogil:
    cdef double m = a
    if b < m:
        m = b
    if c < m:
        m = c
    if d < m:
        m = d
    return m


cdef inline double _max4(double a, double b, double c, double d) noexcept nogil:
    cdef double m = a
    if b > m:
        m = b
    if c > m:
        m = c
    if d > m:
        m = d
    return m


cdef inline void _apply(int op, double xl, double xh, double yl, double yh, double *rl, double *rh) noexcept nogil:
    cdef double p1, p2, p3, p4, l, h
    if op == OP_ADD:
        l = _down(xl + yl)
        h = _up(xh + yh)
    elif op == OP_SUB:
        l = _down(xl - yh)
        h = _up(xh - yl)
    elif op == OP_MUL:
        p1 = xl * yl
        p2 = xl * yh
        p3 = xh * yl
        p4 = xh * yh
        if isnan(p1) or isnan(p2) or isnan(p3) or isnan(p4):
            l = -INFINITY
            h = INFINITY
        else:
            l = _down(_min4(p1, p2, p3, p4))
            h = _up(_max4(p1, p2, p3, p4))
    elif op == OP_NEG:
        l = -xh
        h = -xl
    elif op == OP_SQR:
        if xl >= 0:
            l = _down(xl * xl)
            h = _up(xh * xh)
        elif xh <= 0:
            l = _down(xh * xh)
            h = _up(xl * xl)
        else:
            l = 0.0
            h = _up(xl * xl if xl * xl > xh * xh else xh * xh)
        if l < 0:
            l = 0.0
    elif op == OP_SQRT:
        if xh < 0:
            l = -INFINITY
            h = INFINITY
        else:
            l = _down(sqrt(xl if xl > 0 else 0.0))
            if l < 0:
                l = 0.0
            h = _up(sqrt(xh))
    else:
        l = -INFINITY
        h = INFINITY
    if isnan(l) or isnan(h):
        l = -INFINITY
        h = INFINITY
    rl[0] = l
    rh[0] = h


DEF CHUNK = 64


def eval_intervals(ops, arg1, arg2, consts, outputs, in_lo, in_hi):
    cdef int[::1] op_v = np.ascontiguousarray(ops, dtype=np.int32)
    cdef int[::1] a_v = np.ascontiguousarray(arg1, dtype=np.int32)
    cdef int[::1] b_v = np.ascontiguousarray(arg2, dtype=np.int32)
    cdef double[:, ::1] c_v = np.ascontiguousarray(consts, dtype=np.float64)
    cdef int[::1] o_v = np.ascontiguousarray(outputs, dtype=np.int32)
    cdef double[:, ::1] il = np.ascontiguousarray(in_lo, dtype=np.float64)
    cdef double[:, ::1] ih = np.ascontiguousarray(in_hi, dtype=np.float64)
    cdef Py_ssize_t n = il.shape[0]
    cdef Py_ssize_t nreg = op_v.shape[0]
    cdef Py_ssize_t nout = o_v.shape[0]
    out_lo_arr = np.empty((n, nout), dtype=np.float64)
    out_hi_arr = np.empty((n, nout), dtype=np.float64)
    cdef double[:, ::1] ol = out_lo_arr
    cdef double[:, ::1] oh = out_hi_arr
    # register file laid out register-major over a chunk of samples
    cdef double *lo = <double *> malloc(nreg * CHUNK * sizeof(double))
    cdef double *hi = <double *> malloc(nreg * CHUNK * sizeof(double))
    if lo == NULL or hi == NULL:
        free(lo)
        free(hi)
        raise MemoryError()
    cdef Py_ssize_t s0, cnt, t, i, j
    cdef int op, a, b
    cdef double *rl
    cdef double *rh
    try:
        with nogil:
            s0 = 0
            while s0 < n:
                cnt = n - s0
                if cnt > CHUNK:
                    cnt = CHUNK
                for i in range(nreg):
                    op = op_v[i]
                    a = a_v[i]
                    b = b_v[i]
                    rl = lo + i * CHUNK
                    rh = hi + i * CHUNK
                    if op == OP_INPUT:
                        for t in range(cnt):
                            rl[t] = il[s0 + t, a]
                            rh[t] = ih[s0 + t, a]
                    elif op == OP_CONST:
                        for t in range(cnt):
                            rl[t] = c_v[i, 0]
                            rh[t] = c_v[i, 1]
                    elif op == OP_NEG or op == OP_SQR or op == OP_SQRT:
                        for t in range(cnt):
                            _apply(op, lo[a * CHUNK + t], hi[a * CHUNK + t], 0.0, 0.0, &rl[t], &rh[t])
                    else:
                        for t in range(cnt):
                            _apply(op, lo[a * CHUNK + t], hi[a * CHUNK + t], lo[b * CHUNK + t], hi[b * CHUNK + t],
                                   &rl[t], &rh[t])
                for j in range(nout):
                    i = o_v[j]
                    for t in range(cnt):
                        ol[s0 + t, j] = lo[i * CHUNK + t]
                        oh[s0 + t, j] = hi[i * CHUNK + t]
                s0 += cnt
    finally:
        free(lo)
        free(hi)
    return out_lo_arr, out_hi_arr
