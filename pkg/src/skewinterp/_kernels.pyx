# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernels; same contract as ``_kernels_py``.

Operands whose components all fit below 2**30 are handled in C integer
arithmetic (products then stay below 2**62); anything larger falls back
to Python integers, so results are exact either way.
"""
from fractions import Fraction
from math import gcd

ZERO = (0, 0, 0, 0, 1)
ONE = (1, 0, 0, 0, 1)

DEF LIM = 1073741824  # 2**30


cdef inline long long _abs(long long a) nogil:
    return -a if a < 0 else a


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    a = _abs(a)
    b = _abs(b)
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline bint _small(long long a) nogil:
    return -LIM < a < LIM


cdef tuple _norm_c(long long a, long long b, long long c, long long d, long long den):
    cdef long long g
    if den < 0:
        a = -a; b = -b; c = -c; d = -d; den = -den
    if den != 1:
        g = _gcd(_gcd(_gcd(a, b), _gcd(c, d)), den)
        if g > 1:
            a //= g; b //= g; c //= g; d //= g; den //= g
    return (a, b, c, d, den)


cdef bint _load(tuple x, long long* out):
    """Copy the five components into ``out``; False if any is not small."""
    cdef Py_ssize_t t
    try:
        for t in range(5):
            out[t] = x[t]
            if not _small(out[t]):
                return False
    except OverflowError:
        return False
    return True


cpdef tuple qnorm(object a, object b, object c, object d, object den):
    cdef object g
    if den < 0:
        a = -a; b = -b; c = -c; d = -d; den = -den
    if den == 1:
        return (a, b, c, d, 1)
    g = gcd(a, b, c, d, den)
    if g != 1:
        return (a // g, b // g, c // g, d // g, den // g)
    return (a, b, c, d, den)


cpdef tuple qadd(tuple x, tuple y):
    cdef long long p[5]
    cdef long long q[5]
    if _load(x, p) and _load(y, q):
        if p[4] == q[4]:
            return _norm_c(p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3], p[4])
        return _norm_c(p[0] * q[4] + q[0] * p[4], p[1] * q[4] + q[1] * p[4],
                       p[2] * q[4] + q[2] * p[4], p[3] * q[4] + q[3] * p[4], p[4] * q[4])
    cdef object a1 = x[0], b1 = x[1], c1 = x[2], d1 = x[3], e1 = x[4]
    cdef object a2 = y[0], b2 = y[1], c2 = y[2], d2 = y[3], e2 = y[4]
    if e1 == e2:
        return qnorm(a1 + a2, b1 + b2, c1 + c2, d1 + d2, e1)
    return qnorm(a1 * e2 + a2 * e1, b1 * e2 + b2 * e1,
                 c1 * e2 + c2 * e1, d1 * e2 + d2 * e1, e1 * e2)


cpdef tuple qsub(tuple x, tuple y):
    cdef long long p[5]
    cdef long long q[5]
    if _load(x, p) and _load(y, q):
        if p[4] == q[4]:
            return _norm_c(p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3], p[4])
        return _norm_c(p[0] * q[4] - q[0] * p[4], p[1] * q[4] - q[1] * p[4],
                       p[2] * q[4] - q[2] * p[4], p[3] * q[4] - q[3] * p[4], p[4] * q[4])
    cdef object a1 = x[0], b1 = x[1], c1 = x[2], d1 = x[3], e1 = x[4]
    cdef object a2 = y[0], b2 = y[1], c2 = y[2], d2 = y[3], e2 = y[4]
    if e1 == e2:
        return qnorm(a1 - a2, b1 - b2, c1 - c2, d1 - d2, e1)
    return qnorm(a1 * e2 - a2 * e1, b1 * e2 - b2 * e1,
                 c1 * e2 - c2 * e1, d1 * e2 - d2 * e1, e1 * e2)


cpdef tuple qmul(tuple x, tuple y):
    cdef long long p[5]
    cdef long long q[5]
    if _load(x, p) and _load(y, q):
        return _norm_c(
            p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
            p[4] * q[4])
    cdef object a1 = x[0], b1 = x[1], c1 = x[2], d1 = x[3], e1 = x[4]
    cdef object a2 = y[0], b2 = y[1], c2 = y[2], d2 = y[3], e2 = y[4]
    return qnorm(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        e1 * e2,
    )


cpdef tuple qinv(tuple x):
    cdef object a = x[0], b = x[1], c = x[2], d = x[3], e = x[4]
    cdef object n = a * a + b * b + c * c + d * d
    if n == 0:
        raise ZeroDivisionError("quaternion division by zero")
    return qnorm(a * e, -b * e, -c * e, -d * e, n)


cpdef tuple qdot(object xs, object ys):
    # C accumulators while everything stays small, Python integers after
    cdef long long cA = 0, cB = 0, cC = 0, cD = 0, cE = 1
    cdef long long p[5]
    cdef long long q[5]
    cdef long long ta, tb, tc, td, te, g, s, t
    cdef bint fast = True
    cdef object A = 0, B = 0, C = 0, D = 0, E = 1
    cdef object a1, b1, c1, d1, e1, a2, b2, c2, d2, e2
    cdef object pa, pb, pc, pd, pe, og, os, ot
    cdef tuple x, y
    for x, y in zip(xs, ys):
        if fast and _load(x, p) and _load(y, q):
            if (p[0] == 0 and p[1] == 0 and p[2] == 0 and p[3] == 0) or \
                    (q[0] == 0 and q[1] == 0 and q[2] == 0 and q[3] == 0):
                continue
            ta = p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3]
            tb = p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2]
            tc = p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1]
            td = p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]
            te = p[4] * q[4]
            g = _gcd(_gcd(_gcd(ta, tb), _gcd(tc, td)), te)
            if g > 1:
                ta //= g; tb //= g; tc //= g; td //= g; te //= g
            if _small(ta) and _small(tb) and _small(tc) and _small(td) and _small(te):
                if te == cE:
                    cA += ta; cB += tb; cC += tc; cD += td
                else:
                    g = _gcd(cE, te)
                    s = te // g
                    t = cE // g
                    cA = cA * s + ta * t
                    cB = cB * s + tb * t
                    cC = cC * s + tc * t
                    cD = cD * s + td * t
                    cE = cE * s
                g = _gcd(_gcd(_gcd(cA, cB), _gcd(cC, cD)), cE)
                if g > 1:
                    cA //= g; cB //= g; cC //= g; cD //= g; cE //= g
                if _small(cA) and _small(cB) and _small(cC) and _small(cD) and _small(cE):
                    continue
                # accumulator left the fast range: hand it to Python integers
                fast = False
                A, B, C, D, E = cA, cB, cC, cD, cE
                continue
            pa, pb, pc, pd, pe = ta, tb, tc, td, te
        else:
            if fast:
                fast = False
                A, B, C, D, E = cA, cB, cC, cD, cE
            a1 = x[0]; b1 = x[1]; c1 = x[2]; d1 = x[3]
            if a1 == 0 and b1 == 0 and c1 == 0 and d1 == 0:
                continue
            a2 = y[0]; b2 = y[1]; c2 = y[2]; d2 = y[3]
            if a2 == 0 and b2 == 0 and c2 == 0 and d2 == 0:
                continue
            e1 = x[4]; e2 = y[4]
            pa = a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2
            pb = a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2
            pc = a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2
            pd = a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2
            pe = e1 * e2
        if fast:
            fast = False
            A, B, C, D, E = cA, cB, cC, cD, cE
        if pe == E:
            A += pa; B += pb; C += pc; D += pd
        else:
            og = gcd(E, pe)
            os = pe // og
            ot = E // og
            A = A * os + pa * ot
            B = B * os + pb * ot
            C = C * os + pc * ot
            D = D * os + pd * ot
            E = E * os
    if fast:
        return _norm_c(cA, cB, cC, cD, cE)
    return qnorm(A, B, C, D, E)


cdef list _int_row(object row):
    cdef object den = 1, q, g
    cdef list out
    for x in row:
        q = x.denominator
        if q != 1:
            den = den * q // gcd(den, q)
    out = [x.numerator * (den // x.denominator) for x in row]
    g = gcd(*out) if out else 0
    if g > 1:
        out = [v // g for v in out]
    return out


def rref(rows, Py_ssize_t ncols):
    cdef Py_ssize_t m = len(rows)
    cdef list M = [_int_row(src) for src in rows]
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, p, i, j, ln
    cdef list pr, row, new, out
    cdef object pv, f, g, a, b, h
    for c in range(ncols):
        if r == m:
            break
        p = r
        while p < m and (<list>M[p])[c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            M[p], M[r] = M[r], M[p]
        pr = <list>M[r]
        pv = pr[c]
        ln = len(pr)
        for i in range(m):
            if i == r:
                continue
            row = <list>M[i]
            f = row[c]
            if f == 0:
                continue
            g = gcd(pv, f)
            a = pv // g
            b = f // g
            if pv < 0:
                a = -a
                b = -b
            new = [None] * ln
            h = 0
            for j in range(c):
                new[j] = a * row[j]
                if h != 1:
                    h = gcd(h, new[j])
            for j in range(c, ln):
                new[j] = a * row[j] - b * pr[j]
                if h != 1:
                    h = gcd(h, new[j])
            if h > 1:
                for j in range(ln):
                    new[j] = new[j] // h
            M[i] = new
        pivots.append(c)
        r += 1
    out = []
    for i in range(m):
        row = <list>M[i]
        if i < len(pivots):
            pv = row[<Py_ssize_t>pivots[i]]
            out.append([Fraction(x, pv) for x in row])
        else:
            out.append([Fraction(0)] * ncols)
    return out, pivots
