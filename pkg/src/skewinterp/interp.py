"""Interpolation solvers: one-sided, matrix target, Sylvester, two-sided.

Every solver re-checks its output against the defining interpolation
conditions before returning; a failed check raises VerificationError.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import (DimensionError, NoSolution, NodesNotPIndependent,
                     NotControllable, NotMonic, NotObservable, Singular,
                     VerificationError)
from .linalg import (CenterSolveResult, Matrix, gauss_solve, gauss_solve_rows,
                     invert_matrix, krylov_dependence, solve_center_linear)
from .pairs import (InputPair, OutputPair, central_minpoly, ctrb,
                    minpoly_pair, obsv, p_independent)
from .poly import (LEFT, RIGHT, MatrixPoly, SkewPoly, companion, eval_matrix,
                   eval_scalar, eval_tangential, left_divide, poly_from_column,
                   poly_from_row, powers_column, powers_row, right_divide,
                   two_sided_eval)
from .scalar import Quaternion, QuaternionLike


def _check(ok: bool, what: str):
    if not ok:
        raise VerificationError(what)


@dataclass(frozen=True)
class SolutionFamily:
    """A description of all solutions.

    One-sided families are ``particular + p h`` (left modulus ``p``) or
    ``particular + h q`` (right modulus ``q``) for arbitrary ``h``.
    Two-sided families are ``particular + sum_t c_t directions[t]`` with
    rational ``c_t``; ``sylvester_nullspace`` holds the matching center
    basis of the homogeneous Sylvester equation.  ``free_constant`` marks
    families defined only up to an additive constant.
    """
    particular: SkewPoly
    left_modulus: Optional[SkewPoly] = None
    right_modulus: Optional[SkewPoly] = None
    sylvester_nullspace: Optional[tuple[Matrix, ...]] = None
    directions: tuple[SkewPoly, ...] = ()
    free_constant: bool = False
    condition: Optional[Callable[[SkewPoly], bool]] = field(default=None, compare=False, repr=False)

    def contains(self, f: SkewPoly) -> bool:
        """Exact membership test against the defining conditions."""
        if self.condition is None:
            raise ValueError("family has no membership test")
        return self.condition(SkewPoly.coerce(f))

    def member(self, h: Optional[SkewPoly] = None, coeffs: Sequence = (), alpha=0) -> SkewPoly:
        f = self.particular
        if h is not None:
            h = SkewPoly.coerce(h)
            if self.left_modulus is not None:
                f = f + self.left_modulus * h
            elif self.right_modulus is not None:
                f = f + h * self.right_modulus
        for c, g in zip(coeffs, self.directions):
            f = f + g.scale_right(c)
        if self.free_constant:
            f = f + SkewPoly([alpha])
        return f


# -- one-sided problems ---------------------------------------------------------

def _krylov_columns(A: Matrix, v: Matrix):
    vecs = [v]
    for _ in range(A.rows):
        vecs.append(A @ vecs[-1])
    d, coeffs = krylov_dependence(vecs, "column")
    return vecs[:d], SkewPoly(list(coeffs) + [1])


def _krylov_rows(u: Matrix, B: Matrix):
    vecs = [u]
    for _ in range(B.rows):
        vecs.append(vecs[-1] @ B)
    d, coeffs = krylov_dependence(vecs, "row")
    return vecs[:d], SkewPoly(list(coeffs) + [1])


def solve_left(A: Matrix, v: Matrix, b: Matrix) -> SolutionFamily:
    """All ``f`` with ``(v f)(A) = b``: ``particular + P_{A,v} h``.

    Works for any pair; solvable iff ``b`` is in the right span of
    ``v, Av, .., A^{d-1} v``.
    """
    InputPair(A, v)
    if b.shape != v.shape:
        raise DimensionError("target must have the shape of v")
    cols, p = _krylov_columns(A, v)
    if cols:
        res = gauss_solve(Matrix.hstack(cols), b)
        if res.particular is None:
            raise NoSolution("target outside controllability space")
        if res.nullspace:
            raise VerificationError("Krylov columns are not independent")
        particular = poly_from_column(res.particular)
    else:
        if not b.is_zero():
            raise NoSolution("target outside controllability space")
        particular = SkewPoly()
    _check(eval_tangential(v, particular, A, LEFT) == b, "left interpolation check")
    _check(eval_tangential(v, p, A, LEFT).is_zero(), "left modulus check")
    return SolutionFamily(particular, left_modulus=p,
                          condition=lambda f: eval_tangential(v, f, A, LEFT) == b)


def solve_right(u: Matrix, B: Matrix, d: Matrix) -> SolutionFamily:
    """All ``f`` with ``(f u)(B) = d``: ``particular + h P_{u,B}``."""
    OutputPair(u, B)
    if d.shape != u.shape:
        raise DimensionError("target must have the shape of u")
    rows, q = _krylov_rows(u, B)
    if rows:
        res = gauss_solve_rows(Matrix.vstack(rows), d)
        if res.particular is None:
            raise NoSolution("target outside observability space")
        if res.nullspace:
            raise VerificationError("Krylov rows are not independent")
        particular = poly_from_row(res.particular)
    else:
        if not d.is_zero():
            raise NoSolution("target outside observability space")
        particular = SkewPoly()
    _check(eval_tangential(u, particular, B, RIGHT) == d, "right interpolation check")
    _check(eval_tangential(u, q, B, RIGHT).is_zero(), "right modulus check")
    return SolutionFamily(particular, right_modulus=q,
                          condition=lambda f: eval_tangential(u, f, B, RIGHT) == d)


def solve_matrix_target(A: Matrix, target: Matrix) -> SolutionFamily:
    """All ``f`` with ``f(A) = target`` (left evaluation), column by column.

    Column ``j`` reads ``(e_j f)(A) = b_j``.  After solving the first
    condition as ``f = f_1 + P_1 h`` the remaining ones become
    ``(c_j h)(A) = d_j`` with ``c_j = (c_j P_1)(A)`` and
    ``d_j = d_j - (c_j f_1)(A)``; the loop repeats on those.
    """
    if not A.is_square() or target.shape != A.shape:
        raise DimensionError("matrix target needs square A and a target of the same shape")
    n = A.rows
    cs = [Matrix.unit(n, j) for j in range(n)]
    ds = [target.get_column(j) for j in range(n)]
    base = SkewPoly()
    mult = SkewPoly([1])
    while cs:
        c, dvec = cs.pop(0), ds.pop(0)
        fam = solve_left(A, c, dvec)
        h1, P1 = fam.particular, fam.left_modulus
        base = base + mult * h1
        mult = mult * P1
        ds = [dj - eval_tangential(cj, h1, A, LEFT) for cj, dj in zip(cs, ds)]
        cs = [eval_tangential(cj, P1, A, LEFT) for cj in cs]
    _check(eval_matrix(base, A, LEFT) == target, "matrix target check")
    _check(eval_matrix(mult, A, LEFT).is_zero(), "matrix target modulus check")
    return SolutionFamily(base, left_modulus=mult,
                          condition=lambda f: eval_matrix(f, A, LEFT) == target)


# -- Sylvester equations ------------------------------------------------------

def sylvester_closed_form(A: Matrix, B: Matrix, C: Matrix) -> Optional[Matrix]:
    """Unique solution of ``A Y - Y B = C`` when ``mu_A(B)`` is invertible, else None.

    With ``mu_A = sum_j mu_j z^j`` the central minimal polynomial of ``A``
    (``mu_kappa = 1``), ``Y = sum_{j>=1} mu_j sum_{i<j} A^i (-C) B^{j-i-1} mu_A(B)^{-1}``.
    """
    mu = central_minpoly(A)
    try:
        M_inv = invert_matrix(eval_matrix(mu, B, LEFT))
    except Singular:
        return None
    n, k = C.shape
    Apow = [Matrix.identity(n)]
    Bpow = [Matrix.identity(k)]
    for _ in range(mu.degree):
        Apow.append(Apow[-1] @ A)
        Bpow.append(Bpow[-1] @ B)
    negC = -C
    acc = Matrix.zeros(n, k)
    for j in range(1, mu.degree + 1):
        if mu[j].is_zero():
            continue
        inner = Matrix.zeros(n, k)
        for i in range(j):
            inner = inner + Apow[i] @ negC @ Bpow[j - i - 1]
        acc = acc + inner.scale_left(mu[j])
    return acc @ M_inv


def solve_sylvester(A: Matrix, B: Matrix, C: Matrix, check_closed_form: bool = True) -> CenterSolveResult:
    """Solutions of ``A Y - Y B = C`` as a particular solution plus a rational kernel basis."""
    if not A.is_square() or not B.is_square() or C.shape != (A.rows, B.rows):
        raise DimensionError(f"Sylvester shapes {A.shape}, {B.shape}, {C.shape} do not fit")
    n, k = C.shape
    res = solve_center_linear([(A, Matrix.identity(k)), (-Matrix.identity(n), B)], C)
    if check_closed_form:
        Y = sylvester_closed_form(A, B, C)
        if Y is not None:
            _check(res.particular == Y and not res.nullspace, "closed-form Sylvester solution disagrees")
    return res


# -- two-sided problems ---------------------------------------------------------

class TwoSidedData:
    """``(A, v)``, ``(u, B)`` with targets ``b``, ``d`` and optional ``S``.

    The left pair must be controllable and the right pair observable.
    ``b`` and ``d`` may be omitted for the purely two-sided problem.
    """

    def __init__(self, A: Matrix, v: Matrix, u: Matrix, B: Matrix,
                 b: Optional[Matrix] = None, d: Optional[Matrix] = None,
                 S: Optional[Matrix] = None):
        InputPair(A, v)
        OutputPair(u, B)
        self.A, self.v, self.u, self.B = A, v, u, B
        self.n, self.k = A.rows, B.rows
        if b is not None and b.shape != (self.n, 1):
            raise DimensionError("b must be n x 1")
        if d is not None and d.shape != (1, self.k):
            raise DimensionError("d must be 1 x k")
        if S is not None and S.shape != (self.n, self.k):
            raise DimensionError("S must be n x k")
        self.b, self.d, self.S = b, d, S
        try:
            self.C_inv = invert_matrix(ctrb(InputPair(A, v)))
        except Singular:
            raise NotControllable() from None
        try:
            self.O_inv = invert_matrix(obsv(OutputPair(u, B)))
        except Singular:
            raise NotObservable() from None
        self.p = minpoly_pair(InputPair(A, v)).poly
        self.q = minpoly_pair(OutputPair(u, B)).poly

    @property
    def left_pair(self) -> InputPair:
        return InputPair(self.A, self.v)

    @property
    def right_pair(self) -> OutputPair:
        return OutputPair(self.u, self.B)

    def transformed(self, Y: Matrix) -> Matrix:
        """``C^{-1} Y O^{-1}``: the coordinates of ``Y`` in the companion frame."""
        return self.C_inv @ Y @ self.O_inv

    # the two displays of the parametrization, and their pencil forms
    def poly_left_form(self, Y: Matrix) -> SkewPoly:
        X = self.transformed(Y)
        return (poly_from_column(self.C_inv @ self.b)
                + self.p * poly_from_row(X.get_row(self.n - 1)))

    def poly_right_form(self, Y: Matrix) -> SkewPoly:
        X = self.transformed(Y)
        return (poly_from_row(self.d @ self.O_inv)
                + poly_from_column(X.get_column(self.k - 1)) * self.q)

    def poly_left_pencil(self, Y: Matrix) -> SkewPoly:
        inner = (MatrixPoly.constant(self.b)
                 + MatrixPoly.pencil(self.A) @ (Y @ self.O_inv) @ powers_column(self.k))
        return (powers_row(self.n) @ self.C_inv @ inner).to_poly()

    def poly_right_pencil(self, Y: Matrix) -> SkewPoly:
        inner = (MatrixPoly.constant(self.d)
                 + powers_row(self.n) @ (self.C_inv @ Y) @ MatrixPoly.pencil(self.B))
        return (inner @ self.O_inv @ powers_column(self.k)).to_poly()

    def satisfies(self, f: SkewPoly) -> bool:
        ok = f.degree < self.n + self.k
        if self.b is not None:
            ok = ok and eval_tangential(self.v, f, self.A, LEFT) == self.b
        if self.d is not None:
            ok = ok and eval_tangential(self.u, f, self.B, RIGHT) == self.d
        return ok

    def two_sided(self, f: SkewPoly) -> Matrix:
        return two_sided_eval(self.v, f, self.u, self.A, self.B)


def _need_targets(data: TwoSidedData):
    if data.b is None or data.d is None:
        raise ValueError("this problem needs both targets b and d")


def solve_atsp(data: TwoSidedData) -> SkewPoly:
    """The unique ``f`` (degree < n+k) matching ``b``, ``d`` and the two-sided target ``S``."""
    _need_targets(data)
    if data.S is None:
        raise ValueError("augmented problem needs S")
    A, B, S = data.A, data.B, data.S
    if A @ S - S @ B != data.b @ data.u - data.v @ data.d:
        raise NoSolution("two-sided target violates A S - S B = b u - v d")
    f = data.poly_left_form(S)
    _check(f == data.poly_right_form(S), "the two ATSP formulas disagree")
    _check(data.satisfies(f), "ATSP one-sided conditions")
    _check(data.two_sided(f) == S, "ATSP two-sided condition")
    return f


def solve_tsp(data: TwoSidedData) -> SolutionFamily:
    """All ``f`` of degree < n+k with ``(v f)(A) = b`` and ``(f u)(B) = d``.

    The solutions correspond one-to-one to the solutions ``Y`` of
    ``A Y - Y B = b u - v d``.
    """
    _need_targets(data)
    A, B = data.A, data.B
    res = solve_sylvester(A, B, data.b @ data.u - data.v @ data.d)
    if res.particular is None:
        raise NoSolution("Sylvester equation A Y - Y B = b u - v d is inconsistent")
    Y0 = res.particular
    f0 = data.poly_left_form(Y0)
    for g in (data.poly_right_form(Y0), data.poly_left_pencil(Y0), data.poly_right_pencil(Y0)):
        _check(g == f0, "TSP parametrization formulas disagree")
    _check(data.satisfies(f0), "TSP conditions")
    directions = []
    for N in res.nullspace:
        g = data.poly_left_form(Y0 + N) - f0
        _check(not g.is_zero(), "Y -> f_Y is not injective")
        directions.append(g)
    return SolutionFamily(f0, sylvester_nullspace=res.nullspace, directions=tuple(directions),
                          condition=data.satisfies)


def solve_two_sided_only(A: Matrix, v: Matrix, u: Matrix, B: Matrix, S: Matrix) -> SolutionFamily:
    """All ``f`` of degree < n+k with two-sided evaluation ``S``, up to an additive constant."""
    data = TwoSidedData(A, v, u, B, S=S)
    n, k = data.n, data.k
    W = data.C_inv @ (A @ S - S @ B) @ data.O_inv
    if any(not W[i, j].is_zero() for i in range(1, n) for j in range(1, k)):
        raise NoSolution("two-sided target is not attainable")
    X = data.transformed(S)
    f = poly_from_column(W.get_column(0)) + data.p * poly_from_row(X.get_row(n - 1))
    _check(f.degree < n + k, "two-sided-only degree bound")
    _check(data.two_sided(f) == S, "two-sided-only condition")
    return SolutionFamily(f, free_constant=True,
                          condition=lambda g: g.degree < n + k and data.two_sided(g) == S)


def quasi_ideal_basis(p: SkewPoly, q: SkewPoly) -> list[tuple[Matrix, SkewPoly]]:
    """Rational basis of ``{f : f = p g = h q, deg f < deg p + deg q}``.

    Each ``X`` solves ``C_l(p) X = X C_r(q)`` and maps to
    ``f = [1 .. z^{n-1}] X e_k q``, which also equals ``p e_n^T X [1 .. z^{k-1}]^T``.
    """
    p = SkewPoly.coerce(p)
    q = SkewPoly.coerce(q)
    for g in (p, q):
        if not g.is_monic():
            raise NotMonic(f"{g} is not monic")
    n, k = p.degree, q.degree
    if n < 1 or k < 1:
        return []
    Cl = companion(p, LEFT)
    Cr = companion(q, RIGHT)
    res = solve_center_linear([(Cl, Matrix.identity(k)), (-Matrix.identity(n), Cr)],
                              Matrix.zeros(n, k))
    out = []
    for X in res.nullspace:
        f = poly_from_column(X.get_column(k - 1)) * q
        _check(f == p * poly_from_row(X.get_row(n - 1)), "quasi-ideal factorizations disagree")
        _check(left_divide(f, p)[1].is_zero() and right_divide(f, q)[1].is_zero(),
               "quasi-ideal membership")
        _check(f.degree < n + k, "quasi-ideal degree bound")
        out.append((X, f))
    return out


# -- companion-pair Sylvester structure -------------------------------------------

def _padded(f: SkewPoly, m: int) -> list[Quaternion]:
    cs = list(f.coeffs)
    return cs + [Quaternion(0)] * (m - len(cs))


def extend_last_column(x: Matrix, p: SkewPoly, q: SkewPoly, d: Matrix) -> Matrix:
    """Rebuild ``X`` from its last column for ``C_l(p) X - X C_r(q) = b e_1^T - e_1 d``.

    Column ``j`` (1-based) is ``sum_i C^i x q_{j+i} + sum_i C^i e_1 d_{j+i}``.
    """
    n, k = p.degree, q.degree
    C = companion(p, LEFT)
    e1 = Matrix.unit(n, 0)
    pw = [Matrix.identity(n)]
    for _ in range(k):
        pw.append(pw[-1] @ C)
    cols = []
    for j in range(1, k):
        acc = Matrix.zeros(n, 1)
        for i in range(k - j + 1):
            acc = acc + pw[i] @ x * q[j + i]
        for i in range(k - j):
            acc = acc + pw[i] @ e1 * d[0, j + i]
        cols.append(acc)
    cols.append(x)
    return Matrix.hstack(cols)


def extend_last_row(xt: Matrix, p: SkewPoly, q: SkewPoly, b: Matrix) -> Matrix:
    """Row mirror of ``extend_last_column``."""
    n, k = p.degree, q.degree
    C = companion(q, RIGHT)
    e1 = Matrix.unit(k, 0, "row")
    pw = [Matrix.identity(k)]
    for _ in range(n):
        pw.append(pw[-1] @ C)
    rows = []
    for i in range(1, n):
        acc = Matrix.zeros(1, k)
        for j in range(n - i + 1):
            acc = acc + p[i + j] * (xt @ pw[j])
        for j in range(n - i):
            acc = acc + b[i + j, 0] * (e1 @ pw[j])
        rows.append(acc)
    rows.append(xt)
    return Matrix.vstack(rows)


def upsilon_by_columns(f: SkewPoly, p: SkewPoly, q: SkewPoly) -> Matrix:
    """Two-sided evaluation on ``(C_l(p), e_1)``, ``(e_1^T, C_r(q))`` from ``f = h q + d``."""
    f = SkewPoly.coerce(f)
    n, k = p.degree, q.degree
    if f.degree >= n + k:
        raise DimensionError("column formulas need deg f < deg p + deg q")
    h, d = right_divide(f, q)
    return extend_last_column(Matrix.column(_padded(h, n)), p, q, Matrix.row(_padded(d, k)))


def upsilon_by_rows(f: SkewPoly, p: SkewPoly, q: SkewPoly) -> Matrix:
    """Same matrix from ``f = p g + b``."""
    f = SkewPoly.coerce(f)
    n, k = p.degree, q.degree
    if f.degree >= n + k:
        raise DimensionError("row formulas need deg f < deg p + deg q")
    g, b = left_divide(f, p)
    return extend_last_row(Matrix.row(_padded(g, k)), p, q, Matrix.column(_padded(b, n)))


def lagrange_two_sided(left_nodes: Sequence[tuple[QuaternionLike, QuaternionLike]],
                       right_nodes: Sequence[tuple[QuaternionLike, QuaternionLike]]) -> SolutionFamily:
    """``f(alpha_i) = b_i`` (left evaluation) and ``f(beta_j) = d_j`` (right evaluation).

    Left nodes must be left P-independent and right nodes right
    P-independent.  With no nodes at all the family is every polynomial
    (particular 0, modulus 1).
    """
    lefts = [(Quaternion.coerce(a), Quaternion.coerce(b)) for a, b in left_nodes]
    rights = [(Quaternion.coerce(a), Quaternion.coerce(d)) for a, d in right_nodes]
    if lefts and not p_independent([a for a, _ in lefts], LEFT):
        raise NodesNotPIndependent("left nodes are not left P-independent")
    if rights and not p_independent([a for a, _ in rights], RIGHT):
        raise NodesNotPIndependent("right nodes are not right P-independent")

    bound = len(lefts) + len(rights) if lefts and rights else None

    def condition(f: SkewPoly) -> bool:
        if bound is not None and f.degree >= bound:
            return False
        return (all(eval_scalar(f, a, LEFT) == b for a, b in lefts)
                and all(eval_scalar(f, a, RIGHT) == d for a, d in rights))

    if not lefts and not rights:
        return SolutionFamily(SkewPoly(), left_modulus=SkewPoly([1]), condition=lambda f: True)
    if lefts:
        A = Matrix.diag([a for a, _ in lefts])
        v = Matrix.column([1] * len(lefts))
        b = Matrix.column([b for _, b in lefts])
    if rights:
        B = Matrix.diag([a for a, _ in rights])
        u = Matrix.row([1] * len(rights))
        d = Matrix.row([d for _, d in rights])
    if not rights:
        fam = solve_left(A, v, b)
    elif not lefts:
        fam = solve_right(u, B, d)
    else:
        fam = solve_tsp(TwoSidedData(A, v, u, B, b=b, d=d))
    _check(condition(fam.particular), "Lagrange conditions")
    return SolutionFamily(fam.particular, fam.left_modulus, fam.right_modulus,
                          fam.sylvester_nullspace, fam.directions, condition=condition)
