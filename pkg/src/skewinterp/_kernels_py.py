"""Pure-Python arithmetic kernels.

A quaternion is carried as a 5-tuple of ints ``(a, b, c, d, den)`` meaning
``(a + b i + c j + d k) / den`` with ``den > 0`` and the gcd of all five
entries equal to 1.  The compiled module ``_kernels`` exposes the same
functions with the same semantics.
"""
from fractions import Fraction
from math import gcd

ZERO = (0, 0, 0, 0, 1)
ONE = (1, 0, 0, 0, 1)


def qnorm(a, b, c, d, den):
    if den < 0:
        a, b, c, d, den = -a, -b, -c, -d, -den
    if den == 1:
        return (a, b, c, d, 1)
    g = gcd(a, b, c, d, den)
    if g != 1:
        return (a // g, b // g, c // g, d // g, den // g)
    return (a, b, c, d, den)


def qadd(x, y):
    a1, b1, c1, d1, e1 = x
    a2, b2, c2, d2, e2 = y
    if e1 == e2:
        return qnorm(a1 + a2, b1 + b2, c1 + c2, d1 + d2, e1)
    return qnorm(a1 * e2 + a2 * e1, b1 * e2 + b2 * e1,
                 c1 * e2 + c2 * e1, d1 * e2 + d2 * e1, e1 * e2)


def qsub(x, y):
    a1, b1, c1, d1, e1 = x
    a2, b2, c2, d2, e2 = y
    if e1 == e2:
        return qnorm(a1 - a2, b1 - b2, c1 - c2, d1 - d2, e1)
    return qnorm(a1 * e2 - a2 * e1, b1 * e2 - b2 * e1,
                 c1 * e2 - c2 * e1, d1 * e2 - d2 * e1, e1 * e2)


def qmul(x, y):
    a1, b1, c1, d1, e1 = x
    a2, b2, c2, d2, e2 = y
    return qnorm(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        e1 * e2,
    )


def qinv(x):
    a, b, c, d, e = x
    n = a * a + b * b + c * c + d * d
    if n == 0:
        raise ZeroDivisionError("quaternion division by zero")
    return qnorm(a * e, -b * e, -c * e, -d * e, n)


def qdot(xs, ys):
    """Sum of ``xs[t] * ys[t]``; normalizes once at the end."""
    A = B = C = D = 0
    E = 1
    for x, y in zip(xs, ys):
        a1, b1, c1, d1, e1 = x
        if a1 == 0 and b1 == 0 and c1 == 0 and d1 == 0:
            continue
        a2, b2, c2, d2, e2 = y
        if a2 == 0 and b2 == 0 and c2 == 0 and d2 == 0:
            continue
        pa = a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2
        pb = a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2
        pc = a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2
        pd = a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2
        pe = e1 * e2
        if pe == E:
            A += pa
            B += pb
            C += pc
            D += pd
        else:
            g = gcd(E, pe)
            s = pe // g
            t = E // g
            A = A * s + pa * t
            B = B * s + pb * t
            C = C * s + pc * t
            D = D * s + pd * t
            E = E * s
    return qnorm(A, B, C, D, E)


def _int_row(row):
    den = 1
    for x in row:
        q = x.denominator
        if q != 1:
            den = den * q // gcd(den, q)
    out = [x.numerator * (den // x.denominator) for x in row]
    g = gcd(*out) if out else 0
    if g > 1:
        out = [v // g for v in out]
    return out


def rref(rows, ncols):
    """Reduced row echelon form over the rationals.

    ``rows`` is a list of equal-length sequences of Fraction/int.  Elimination
    runs on integer rows with content removal; the result is converted back to
    Fractions with unit pivots.  Returns ``(reduced_rows, pivot_columns)``.
    """
    m = len(rows)
    M = [_int_row(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = r
        while p < m and M[p][c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            M[p], M[r] = M[r], M[p]
        pr = M[r]
        pv = pr[c]
        for i in range(m):
            if i == r:
                continue
            row = M[i]
            f = row[c]
            if f == 0:
                continue
            g = gcd(pv, f)
            a = pv // g
            b = f // g
            if pv < 0:
                a, b = -a, -b
            new = [a * x for x in row[:c]]
            new.extend([a * x - b * y for x, y in zip(row[c:], pr[c:])])
            h = gcd(*new)
            if h > 1:
                new = [v // h for v in new]
            M[i] = new
        pivots.append(c)
        r += 1
    out = []
    for i in range(m):
        row = M[i]
        if i < len(pivots):
            pv = row[pivots[i]]
            out.append([Fraction(x, pv) for x in row])
        else:
            out.append([Fraction(0)] * ncols)
    return out, pivots
