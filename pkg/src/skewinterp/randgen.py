"""Seeded random instances for tests and benchmarks.

Entries have numerators and denominators bounded by ``bound`` (default 9).
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .linalg import Matrix
from .poly import SkewPoly
from .scalar import Quaternion


def rational(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def quaternion(rng: random.Random, bound: int = 9, nonzero: bool = False) -> Quaternion:
    while True:
        q = Quaternion(*(rational(rng, bound) for _ in range(4)))
        if not nonzero or not q.is_zero():
            return q


def poly(rng: random.Random, degree: int, bound: int = 9, monic: bool = False) -> SkewPoly:
    cs = [quaternion(rng, bound) for _ in range(degree)]
    cs.append(Quaternion(1) if monic else quaternion(rng, bound, nonzero=True))
    return SkewPoly(cs)


def matrix(rng: random.Random, rows: int, cols: int, bound: int = 9) -> Matrix:
    return Matrix([[quaternion(rng, bound) for _ in range(cols)] for _ in range(rows)])


def column(rng: random.Random, n: int, bound: int = 9) -> Matrix:
    return matrix(rng, n, 1, bound)


def row(rng: random.Random, n: int, bound: int = 9) -> Matrix:
    return matrix(rng, 1, n, bound)


def invertible(rng: random.Random, n: int, bound: int = 3, factors: Optional[int] = None) -> Matrix:
    """Product of elementary matrices (row additions and nonzero diagonal scalings)."""
    M = Matrix.identity(n)
    for _ in range(factors if factors is not None else 2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        if i == j:
            rows[i][i] = quaternion(rng, bound, nonzero=True)
        else:
            rows[i][j] = quaternion(rng, bound)
        M = M @ Matrix(rows)
    return M


def controllable_pair(rng: random.Random, n: int, bound: int = 5):
    """``(T C_l(p) T^{-1}, T e_1)`` for a random monic ``p`` and invertible ``T``."""
    from .linalg import invert_matrix
    from .poly import companion
    p = poly(rng, n, bound, monic=True)
    T = invertible(rng, n)
    A = T @ companion(p) @ invert_matrix(T)
    return A, T @ Matrix.unit(n, 0)


def observable_pair(rng: random.Random, n: int, bound: int = 5):
    """``(e_1^T T^{-1}, T C_r(q) T^{-1})``."""
    from .linalg import invert_matrix
    from .poly import companion
    q = poly(rng, n, bound, monic=True)
    T = invertible(rng, n)
    Ti = invert_matrix(T)
    return Matrix.unit(n, 0, "row") @ Ti, T @ companion(q, "right") @ Ti
