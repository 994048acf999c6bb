# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer coefficient-vector kernels.

Same contract as ``_kernels_py``.  Convolutions take an int64 path when the
operand bit sizes guarantee no overflow and fall back to Python integers
otherwise.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t
from math import gcd


cdef int _maxbits(object a, Py_ssize_t n):
    cdef int best = 0
    cdef int b
    cdef Py_ssize_t i
    for i in range(n):
        b = (<object>a[i]).bit_length()
        if b > best:
            best = b
    return best


cdef int _bitlen(Py_ssize_t n):
    cdef int b = 0
    while n:
        b += 1
        n >>= 1
    return b


cdef list _conv_small(object a, Py_ssize_t la, object b, Py_ssize_t lb, Py_ssize_t n):
    cdef int64_t *x = <int64_t *> malloc(la * sizeof(int64_t))
    cdef int64_t *y = <int64_t *> malloc(lb * sizeof(int64_t))
    cdef int64_t *o = <int64_t *> malloc(n * sizeof(int64_t))
    cdef Py_ssize_t i, j, m
    cdef int64_t xi
    cdef list out
    if x == NULL or y == NULL or o == NULL:
        free(x); free(y); free(o)
        raise MemoryError()
    try:
        for i in range(la):
            x[i] = a[i]
        for j in range(lb):
            y[j] = b[j]
        for i in range(n):
            o[i] = 0
        for i in range(min(la, n)):
            xi = x[i]
            if xi == 0:
                continue
            m = lb
            if n - i < m:
                m = n - i
            for j in range(m):
                o[i + j] += xi * y[j]
        out = [o[i] for i in range(n)]
    finally:
        free(x); free(y); free(o)
    return out


cdef list _conv_obj(object a, Py_ssize_t la, object b, Py_ssize_t lb, Py_ssize_t n):
    cdef list out = [0] * n
    cdef list bl = list(b)
    cdef Py_ssize_t i, j, m
    cdef object xi
    for i in range(min(la, n)):
        xi = a[i]
        if not xi:
            continue
        m = lb
        if n - i < m:
            m = n - i
        for j in range(m):
            out[i + j] += xi * bl[j]
    return out


def conv(a, b):
    """Full convolution of two integer vectors."""
    cdef Py_ssize_t la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return []
    cdef Py_ssize_t n = la + lb - 1
    if _maxbits(a, la) + _maxbits(b, lb) + _bitlen(min(la, lb)) < 62:
        return _conv_small(a, la, b, lb, n)
    return _conv_obj(a, la, b, lb, n)


def conv_trunc(a, b, Py_ssize_t n):
    """First ``n`` entries of the convolution of ``a`` and ``b``."""
    cdef Py_ssize_t la = len(a), lb = len(b)
    if n <= 0:
        return []
    if la == 0 or lb == 0:
        return [0] * n
    if _maxbits(a, la) + _maxbits(b, lb) + _bitlen(min(la, lb)) < 62:
        return _conv_small(a, la, b, lb, n)
    return _conv_obj(a, la, b, lb, n)


def axpy(ca, a, cb, b):
    """Return ``ca*a + cb*b`` padded to the longer length."""
    cdef Py_ssize_t la = len(a), lb = len(b), j
    cdef list out
    if la < lb:
        out = [ca * x for x in a] + [0] * (lb - la)
    else:
        out = [ca * x for x in a]
    for j in range(lb):
        out[j] += cb * b[j]
    return out


def content(a):
    """gcd of all entries (0 for the zero vector)."""
    return gcd(*a) if len(a) else 0


def taylor_shift(a, c):
    """Coefficients of ``f(z + c)`` for integer ``c``."""
    cdef list out = list(a)
    cdef Py_ssize_t n = len(out), i, j
    if c == 0 or n < 2:
        return out
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += c * out[j + 1]
    return out


def pseudo_divmod(a, b):
    """Integer pseudo-division, see ``_kernels_py.pseudo_divmod``."""
    cdef Py_ssize_t db = len(b) - 1, shift, j, k, steps = 0
    cdef list r = list(a)
    cdef list q
    cdef list bl = list(b)
    while r and r[len(r) - 1] == 0:
        r.pop()
    if <Py_ssize_t> len(r) - 1 < db:
        return [], r, 0
    lc = bl[db]
    k = len(r) - db
    q = [0] * k
    while r and <Py_ssize_t> len(r) - 1 >= db:
        shift = len(r) - 1 - db
        t = r[len(r) - 1]
        q = [lc * x for x in q]
        q[shift] += t
        r = [lc * x for x in r]
        for j in range(db + 1):
            r[shift + j] -= t * bl[j]
        steps += 1
        while r and r[len(r) - 1] == 0:
            r.pop()
    if k - steps:
        f = lc ** (k - steps)
        q = [f * x for x in q]
        r = [f * x for x in r]
    return q, r, k


def inv_series(u, Py_ssize_t n):
    """Integer recurrence for a power-series inverse, see ``_kernels_py``."""
    if n <= 0:
        return []
    cdef list ul = list(u)
    cdef Py_ssize_t lu = len(ul), k, j, top
    cdef list v = [1]
    u0 = ul[0]
    for k in range(1, n):
        s = 0
        p = 1
        top = k
        if lu - 1 < top:
            top = lu - 1
        for j in range(1, top + 1):
            s += ul[j] * v[k - j] * p
            p *= u0
        v.append(-s)
    return v
