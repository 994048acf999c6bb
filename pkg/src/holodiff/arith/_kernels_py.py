"""Pure-Python integer coefficient-vector kernels.

Every vector is a list (or tuple) of Python ints, index = exponent.  The
compiled module ``_ckernels`` exports the same functions with the same
semantics; ``holodiff.arith.kernels`` picks one of the two at import.
"""

from math import gcd


def conv(a, b):
    """Full convolution of two integer vectors."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def conv_trunc(a, b, n):
    """First ``n`` entries of the convolution of ``a`` and ``b``."""
    if n <= 0:
        return []
    out = [0] * n
    lb = len(b)
    for i, x in enumerate(a):
        if i >= n:
            break
        if x:
            m = min(lb, n - i)
            for j in range(m):
                out[i + j] += x * b[j]
    return out


def axpy(ca, a, cb, b):
    """Return ``ca*a + cb*b`` padded to the longer length."""
    la, lb = len(a), len(b)
    if la < lb:
        out = [ca * x for x in a] + [0] * (lb - la)
    else:
        out = [ca * x for x in a]
    for j in range(lb):
        out[j] += cb * b[j]
    return out


def content(a):
    """gcd of all entries (0 for the zero vector)."""
    return gcd(*a) if a else 0


def taylor_shift(a, c):
    """Coefficients of ``f(z + c)`` for integer ``c``."""
    out = list(a)
    n = len(out)
    if c == 0 or n < 2:
        return out
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += c * out[j + 1]
    return out


def pseudo_divmod(a, b):
    """Integer pseudo-division.

    Returns ``(q, r, k)`` with ``lc(b)**k * a == q*b + r`` and
    ``len(r) < len(b)`` after trimming.  ``b`` must be trimmed and nonzero.
    """
    db = len(b) - 1
    r = list(a)
    while r and r[-1] == 0:
        r.pop()
    if len(r) - 1 < db:
        return [], r, 0
    lc = b[-1]
    k = len(r) - db
    q = [0] * k
    steps = 0
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        t = r[-1]
        q = [lc * x for x in q]
        q[shift] += t
        r = [lc * x for x in r]
        for j in range(db + 1):
            r[shift + j] -= t * b[j]
        steps += 1
        while r and r[-1] == 0:
            r.pop()
    # normalise to exactly k multiplications by lc
    extra = k - steps
    if extra:
        f = lc ** extra
        q = [f * x for x in q]
        r = [f * x for x in r]
    return q, r, k


def inv_series(u, n):
    """Integer recurrence for the inverse of a power series.

    With ``u[0] != 0`` returns ``v`` such that ``v[k] / u[0]**(k+1)`` is the
    coefficient of ``pi**k`` in ``1/u`` for ``k < n``.
    """
    if n <= 0:
        return []
    u0 = u[0]
    v = [1]
    lu = len(u)
    for k in range(1, n):
        s = 0
        p = 1
        for j in range(1, min(k, lu - 1) + 1):
            s += u[j] * v[k - j] * p
            p *= u0
        # terms with j beyond len(u) vanish
        v.append(-s)
    return v
