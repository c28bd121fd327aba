"""Input/output pairs, their minimal polynomials, and similarity.

An input pair ``(A, v)`` annihilates the right ideal of all ``f`` with
``(v f)(A) = 0`` (left evaluation); its monic generator is found from the
first right linear dependence in ``v, Av, A^2 v, ...``.  Output pairs
``(u, B)`` are the mirror image with rows and left ideals.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import (DimensionError, NotControllable, NotMonic, NotObservable,
                     NotSimilar, Singular, VerificationError)
from .linalg import (Matrix, invert_matrix, is_invertible, krylov_dependence,
                     rational_dependence, solve_center_linear)
from .poly import (LEFT, RIGHT, SkewPoly, _side, companion, eval_matrix,
                   eval_tangential, poly_from_column, poly_from_row, rho,
                   right_divide)
from .scalar import ONE, Quaternion, QuaternionLike


@dataclass(frozen=True)
class InputPair:
    """``(A, v)`` with ``A`` n x n and ``v`` n x 1."""
    A: Matrix
    v: Matrix

    def __post_init__(self):
        if not self.A.is_square() or self.v.shape != (self.A.rows, 1):
            raise DimensionError(f"input pair needs n x n and n x 1, got {self.A.shape}, {self.v.shape}")

    @property
    def n(self) -> int:
        return self.A.rows


@dataclass(frozen=True)
class OutputPair:
    """``(u, B)`` with ``u`` 1 x n and ``B`` n x n."""
    u: Matrix
    B: Matrix

    def __post_init__(self):
        if not self.B.is_square() or self.u.shape != (1, self.B.rows):
            raise DimensionError(f"output pair needs 1 x n and n x n, got {self.u.shape}, {self.B.shape}")

    @property
    def n(self) -> int:
        return self.B.rows


Pair = Union[InputPair, OutputPair]


@dataclass(frozen=True)
class MinPolyReport:
    poly: SkewPoly
    degree: int
    controllable_or_observable: bool


def ctrb(pair: InputPair) -> Matrix:
    """``[v, Av, ..., A^{n-1} v]``."""
    cols = [pair.v]
    for _ in range(pair.n - 1):
        cols.append(pair.A @ cols[-1])
    return Matrix.hstack(cols)


def obsv(pair: OutputPair) -> Matrix:
    """Rows ``u, uB, ..., u B^{n-1}``."""
    rows = [pair.u]
    for _ in range(pair.n - 1):
        rows.append(rows[-1] @ pair.B)
    return Matrix.vstack(rows)


def _check_side(pair: Pair, side) -> str:
    expected = LEFT if isinstance(pair, InputPair) else RIGHT
    if side is None:
        return expected
    s = _side(side)
    if s != expected:
        raise ValueError(f"{type(pair).__name__} carries {expected} conditions, not {s}")
    return s


def minpoly_pair(pair: Pair, side=None) -> MinPolyReport:
    """Monic generator of the annihilating ideal of the pair.

    The side defaults to the one carried by the pair type (left for input
    pairs, right for output pairs).
    """
    _check_side(pair, side)
    if isinstance(pair, InputPair):
        vecs = [pair.v]
        for _ in range(pair.n):
            vecs.append(pair.A @ vecs[-1])
    else:
        vecs = [pair.u]
        for _ in range(pair.n):
            vecs.append(vecs[-1] @ pair.B)
    orientation = "column" if isinstance(pair, InputPair) else "row"
    d, coeffs = krylov_dependence(vecs, orientation)
    if d > pair.n:
        raise VerificationError("Krylov sequence longer than the dimension")
    poly = SkewPoly(list(coeffs) + [ONE])
    return MinPolyReport(poly, d, d == pair.n)


def minpoly_closed_form(pair: Pair) -> SkewPoly:
    """``z^n - [1 .. z^{n-1}] C^{-1} A^n v`` (and its observable mirror).

    Requires a controllable (observable) pair.
    """
    n = pair.n
    zn = SkewPoly.monomial(1, n)
    if isinstance(pair, InputPair):
        C = ctrb(pair)
        if not is_invertible(C):
            raise NotControllable()
        return zn - poly_from_column(invert_matrix(C) @ pair.A.power(n) @ pair.v)
    O = obsv(pair)
    if not is_invertible(O):
        raise NotObservable()
    return zn - poly_from_row(pair.u @ pair.B.power(n) @ invert_matrix(O))


def canonical_form(pair: Pair, side=None) -> tuple[Pair, Matrix]:
    """Similarity to the companion pair.

    Input pair: returns ``((C_l(P), e_1), T)`` with ``T = ctrb^{-1}``, so
    ``T A T^{-1} = C_l(P)`` and ``T v = e_1``.  Output pair: returns
    ``((e_1^T, C_r(P)), O)`` with ``O B O^{-1} = C_r(P)`` and
    ``u O^{-1} = e_1^T``.
    """
    _check_side(pair, side)
    n = pair.n
    P = minpoly_pair(pair).poly
    if isinstance(pair, InputPair):
        C = ctrb(pair)
        try:
            T = invert_matrix(C)
        except Singular:
            raise NotControllable() from None
        canon = InputPair(companion(P, LEFT), Matrix.unit(n, 0))
        if T @ pair.A @ C != canon.A or T @ pair.v != canon.v:
            raise VerificationError("canonical form check failed")
        return canon, T
    O = obsv(pair)
    try:
        Oi = invert_matrix(O)
    except Singular:
        raise NotObservable() from None
    canon = OutputPair(Matrix.unit(n, 0, "row"), companion(P, RIGHT))
    if O @ pair.B @ Oi != canon.B or pair.u @ Oi != canon.u:
        raise VerificationError("canonical form check failed")
    return canon, O


def pairs_similar(p1: Pair, p2: Pair, side=None) -> Matrix:
    """Intertwiner ``T`` between two controllable (observable) pairs.

    Input pairs: ``T A T^{-1} = A'`` and ``T v = v'``.  Output pairs:
    ``T B T^{-1} = B'`` and ``u T^{-1} = u'``.  Raises NotSimilar when the
    minimal polynomials differ.
    """
    if type(p1) is not type(p2):
        raise TypeError("pairs must both be input pairs or both output pairs")
    _check_side(p1, side)
    if p1.n != p2.n:
        raise NotSimilar("pairs have different dimensions")
    controllable = isinstance(p1, InputPair)
    m1 = ctrb(p1) if controllable else obsv(p1)
    m2 = ctrb(p2) if controllable else obsv(p2)
    err = NotControllable if controllable else NotObservable
    if not is_invertible(m1) or not is_invertible(m2):
        raise err()
    if minpoly_pair(p1).poly != minpoly_pair(p2).poly:
        raise NotSimilar("minimal polynomials differ")
    if controllable:
        T = m2 @ invert_matrix(m1)
        ok = T @ p1.A == p2.A @ T and T @ p1.v == p2.v
    else:
        T = invert_matrix(m2) @ m1
        ok = T @ p1.B == p2.B @ T and p1.u == p2.u @ T
    if not ok:
        raise VerificationError("intertwiner check failed")
    return T


# -- common multiples ---------------------------------------------------------

def _nontrivial(fs: Sequence[SkewPoly]) -> list[SkewPoly]:
    if not fs:
        raise ValueError("need at least one polynomial")
    out = []
    for f in fs:
        f = SkewPoly.coerce(f)
        if not f.is_monic():
            raise NotMonic(f"{f} is not monic")
        if f.degree >= 1:
            out.append(f)
    return out


def lrcm(fs: Sequence[SkewPoly]) -> SkewPoly:
    """Least right common multiple: monic generator of the intersection of right ideals.

    Computed as the minimal polynomial of the block companion pair
    ``(diag C_l(f_i), [e_1; ...; e_1])``.
    """
    polys = _nontrivial(fs)
    if not polys:
        return SkewPoly([1])
    A = Matrix.block_diag([companion(f, LEFT) for f in polys])
    E = Matrix.vstack([Matrix.unit(f.degree, 0) for f in polys])
    return minpoly_pair(InputPair(A, E)).poly


def llcm(fs: Sequence[SkewPoly]) -> SkewPoly:
    """Least left common multiple, via the block output pair with right companions."""
    polys = _nontrivial(fs)
    if not polys:
        return SkewPoly([1])
    B = Matrix.block_diag([companion(f, RIGHT) for f in polys])
    E = Matrix.hstack([Matrix.unit(f.degree, 0, "row") for f in polys])
    return minpoly_pair(OutputPair(E, B)).poly


def matrix_minpolys(A: Matrix) -> tuple[SkewPoly, SkewPoly]:
    """``(mu_left, mu_right)``: generators of ``{f : f(A) = 0}`` for each evaluation side."""
    if not A.is_square():
        raise DimensionError("minimal polynomials need a square matrix")
    n = A.rows
    left = [minpoly_pair(InputPair(A, Matrix.unit(n, k))).poly for k in range(n)]
    right = [minpoly_pair(OutputPair(Matrix.unit(n, k, "row"), A)).poly for k in range(n)]
    return lrcm(left), llcm(right)


def central_minpoly(A: Matrix) -> SkewPoly:
    """Least-degree monic polynomial with rational coefficients annihilating ``A``.

    Rational Krylov on the coordinate vectors of ``I, A, A^2, ...``; the
    degree never exceeds ``2n`` for quaternion matrices, and ``4n`` is a
    hard bound from the realification.
    """
    if not A.is_square():
        raise DimensionError("central minimal polynomial needs a square matrix")
    n = A.rows
    powers = [Matrix.identity(n)]
    for bound in (2 * n, 4 * n):
        while len(powers) <= bound:
            powers.append(powers[-1] @ A)
        d, coeffs = rational_dependence([P.components() for P in powers])
        if d < len(powers):
            mu = SkewPoly([-c for c in coeffs] + [1])
            if not eval_matrix(mu, A).is_zero():
                raise VerificationError("central minimal polynomial does not annihilate")
            return mu
    raise VerificationError("no central annihilator within the realification bound")


# -- P-independence and the two-diagonal matrix -------------------------------

def vandermonde(nodes: Sequence[QuaternionLike], side=LEFT) -> Matrix:
    """Left: rows ``[1, a, a^2, ...]`` (the controllability matrix of
    ``(diag(a), 1)``).  Right: its mirror with columns ``[1, b, b^2, ...]^T``."""
    side = _side(side)
    qs = [Quaternion.coerce(a) for a in nodes]
    n = len(qs)
    rows = [[a ** m for m in range(n)] for a in qs]
    M = Matrix(rows)
    return M if side == LEFT else M.transpose()


def p_independent(nodes: Sequence[QuaternionLike], side=LEFT, method: str = "lrcm") -> bool:
    """Left (right) P-independence of the node set.

    ``method="lrcm"`` tests ``deg lrcm(z - a_i) = n`` (``llcm`` on the right);
    ``method="vandermonde"`` tests invertibility of the Vandermonde matrix.
    """
    side = _side(side)
    if not nodes:
        raise ValueError("need at least one node")
    n = len(nodes)
    if method == "vandermonde":
        return is_invertible(vandermonde(nodes, side))
    if method != "lrcm":
        raise ValueError(f"unknown method {method!r}")
    lin = [rho(a) for a in nodes]
    m = lrcm(lin) if side == LEFT else llcm(lin)
    return m.degree == n


def gamma_matrix(gammas: Sequence[QuaternionLike]) -> Matrix:
    """Diagonal ``gamma_1 .. gamma_n``, ones on the subdiagonal."""
    qs = [Quaternion.coerce(g) for g in gammas]
    if not qs:
        raise ValueError("need at least one gamma")
    n = len(qs)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = qs[i]
        if i:
            rows[i][i - 1] = 1
    return Matrix(rows)


# -- randomized searches ------------------------------------------------------

def _small_rational(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _small_quaternion(rng: random.Random, bound: int = 5) -> Quaternion:
    return Quaternion(*(_small_rational(rng, bound) for _ in range(4)))


def find_cyclic_vector(A: Matrix, trials: int = 20, seed: int = 0) -> Optional[Matrix]:
    """A column ``v`` making ``(A, v)`` controllable, or None.

    Tries ``e_1 .. e_n`` and the all-ones vector, then ``trials`` random
    vectors with small rational entries.  None is not a proof that ``A``
    has no cyclic vector.
    """
    if not A.is_square():
        raise DimensionError("cyclic vectors need a square matrix")
    n = A.rows
    candidates = [Matrix.unit(n, k) for k in range(n)] + [Matrix.column([1] * n)]
    rng = random.Random(seed)
    for _ in range(trials):
        candidates.append(Matrix.column([_small_quaternion(rng) for _ in range(n)]))
    for v in candidates:
        if is_invertible(ctrb(InputPair(A, v))):
            return v
    return None


@dataclass(frozen=True)
class PolySimilarity:
    """Outcome of ``polys_similar``.

    ``verdict`` is ``"witness"`` (then ``g h = h2 f`` with both coprimeness
    certificates), ``"trivially_not"`` (degrees differ or the intertwining
    equation has only the zero solution) or ``"no_witness_found"``
    (inconclusive).
    """
    verdict: str
    h: Optional[SkewPoly] = None
    h2: Optional[SkewPoly] = None

    @property
    def similar(self) -> Optional[bool]:
        if self.verdict == "witness":
            return True
        if self.verdict == "trivially_not":
            return False
        return None


def _certify(f: SkewPoly, g: SkewPoly, h: SkewPoly, h2: SkewPoly) -> bool:
    if h.is_zero() or h2.is_zero():
        return False
    if g * h != h2 * f:
        return False
    # g and h2 left coprime, h and f right coprime
    if lrcm([g, h2.monic_right()]).degree != g.degree + h2.degree:
        return False
    return llcm([h.monic_left(), f]).degree == h.degree + f.degree


def polys_similar(f: SkewPoly, g: SkewPoly, trials: int = 20, seed: int = 0) -> PolySimilarity:
    """Search for ``h, h2`` with ``deg h, deg h2 < n``, ``g h = h2 f`` and coprimeness.

    Sound but incomplete: a witness is always certified exactly, while
    ``no_witness_found`` makes no claim.
    """
    f = SkewPoly.coerce(f)
    g = SkewPoly.coerce(g)
    for p in (f, g):
        if not p.is_monic():
            raise NotMonic(f"{p} is not monic")
    if f.degree != g.degree:
        return PolySimilarity("trivially_not")
    n = f.degree
    if n == 0:
        return PolySimilarity("witness", SkewPoly([1]), SkewPoly([1]))
    # unknown row X = [h_0 .. h_{n-1}, h2_0 .. h2_{n-1}];  g h - h2 f = 0
    terms = []
    for a in range(n + 1):
        R = [[0] * (2 * n) for _ in range(2 * n)]
        for b in range(n):
            R[b][a + b] = 1
        terms.append((Matrix([[g[a]]]), Matrix(R)))
    R = [[0] * (2 * n) for _ in range(2 * n)]
    for a in range(n + 1):
        for b in range(n):
            R[n + b][a + b] = -f[a]
    terms.append((Matrix([[1]]), Matrix(R)))
    sol = solve_center_linear(terms, Matrix.zeros(1, 2 * n))
    basis = sol.nullspace
    if not basis:
        return PolySimilarity("trivially_not")

    def split(X: Matrix):
        e = X.entries()
        return SkewPoly(e[:n]), SkewPoly(e[n:])

    h2, rem = right_divide(g, f)
    if rem.is_zero() and h2.degree < n and _certify(f, g, SkewPoly([1]), h2):
        return PolySimilarity("witness", SkewPoly([1]), h2)
    for X in basis:
        h, h2 = split(X)
        if _certify(f, g, h, h2):
            return PolySimilarity("witness", h, h2)
    rng = random.Random(seed)
    for _ in range(trials):
        X = Matrix.zeros(1, 2 * n)
        for N in basis:
            X = X + N.scale_right(_small_rational(rng))
        h, h2 = split(X)
        if _certify(f, g, h, h2):
            return PolySimilarity("witness", h, h2)
    return PolySimilarity("no_witness_found")


def tangential_zero(pair: Pair, f: SkewPoly) -> bool:
    """True when ``f`` lies in the annihilating ideal of the pair."""
    if isinstance(pair, InputPair):
        return eval_tangential(pair.v, f, pair.A, LEFT).is_zero()
    return eval_tangential(pair.u, f, pair.B, RIGHT).is_zero()
