import random

import pytest
import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, strategies as st

from skewinterp import (DimensionError, I, J, K, Matrix, ONE, Quaternion, Singular, gauss_solve,
                        invert_matrix, rank, solve_center_linear)
from skewinterp import randgen as rg
from skewinterp.linalg import (apply_center_operator, gauss_solve_rows, krylov_dependence,
                               rational_dependence, realify_matrix)
from skewinterp.scalar import BASIS
from strategies import matrices, quaternions


def operator_rank(terms, shape):
    """Rank of the realified center-linear map, built column by column."""
    rows, cols = shape
    images = []
    for a in range(rows):
        for b in range(cols):
            for unit in BASIS:
                X = Matrix([[unit if (r, c) == (a, b) else 0 for c in range(cols)] for r in range(rows)])
                images.append(apply_center_operator(terms, X).components())
    return DomainMatrix([[QQ(x.numerator, x.denominator) for x in row] for row in images],
                        (len(images), len(images[0])), QQ).rank()


def test_gauss_examples():
    res = gauss_solve(Matrix([[1, I], [1, J]]), Matrix.column([0, 0]))
    assert res.particular == Matrix.column([0, 0]) and res.nullspace == ()
    res = gauss_solve(Matrix([[1, 1]]), Matrix.column([1]))
    assert res.particular == Matrix.column([1, 0])
    assert len(res.nullspace) == 1
    N = res.nullspace[0]
    assert N[0, 0] == -N[1, 0] and not N.is_zero()
    assert gauss_solve(Matrix([[I]]), Matrix.column([K])).particular == Matrix.column([J])


def test_gauss_inconsistent():
    assert gauss_solve(Matrix([[1, I], [1, I]]), Matrix.column([0, 1])).particular is None


def test_gauss_rows():
    A = Matrix([[1, I], [J, 2]])
    x = gauss_solve_rows(A, Matrix.row([1, K])).particular
    assert x @ A == Matrix.row([1, K])


def test_invert_examples():
    assert invert_matrix(Matrix.identity(3)) == Matrix.identity(3)
    assert invert_matrix(Matrix.diag([I, J])) == Matrix.diag([-I, -J])
    with pytest.raises(Singular):
        invert_matrix(Matrix([[1, 1], [I, I]]))


def test_invert_elementary_products():
    rng = random.Random(3)
    for _ in range(200):
        A = rg.invertible(rng, 3)
        assert invert_matrix(A) @ A == Matrix.identity(3)


def test_krylov_examples():
    e = [Matrix.unit(3, k) for k in range(3)]
    assert krylov_dependence([e[0], e[1], e[0]]) == (2, (Quaternion(-1), Quaternion(0)))
    assert krylov_dependence([e[0], e[1]]) == (2, ())
    assert krylov_dependence([e[0], e[0] * I]) == (1, (-I,))


def test_krylov_rows_use_left_coefficients():
    u = Matrix.row([1, J])
    d, (b0,) = krylov_dependence([u, I * u], orientation="row")
    assert d == 1 and b0 == -I


@given(st.integers(1, 3).flatmap(lambda n: st.lists(matrices(n, 1), min_size=1, max_size=n + 1)))
def test_krylov_minimal_and_correct(vectors):
    d, coeffs = krylov_dependence(vectors)
    if d < len(vectors):
        acc = vectors[d]
        for w, c in zip(vectors, coeffs):
            acc = acc + w * c
        assert acc.is_zero()
    prefix = Matrix.hstack(vectors[:d]) if d else None
    if prefix is not None:
        assert gauss_solve(prefix, Matrix.zeros(prefix.rows, 1)).nullspace == ()


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(matrices(n, n), matrices(n, 1))),
       st.lists(quaternions, min_size=4, max_size=4))
def test_gauss_consistency(Ab, cs):
    A, b = Ab
    res = gauss_solve(A, b)
    if res.particular is None:
        assert rank(Matrix.hstack([A, b])) > rank(A)
        return
    x = res.particular
    for N, c in zip(res.nullspace, cs):
        assert (A @ N).is_zero()
        x = x + N * c
    assert A @ x == b


def test_center_identity_map():
    res = solve_center_linear([(Matrix.identity(2), Matrix.identity(2))], Matrix.zeros(2, 2))
    assert res.particular.is_zero() and res.nullspace == ()


def test_center_sylvester_kernels():
    one = Matrix.identity(1)
    terms = [(Matrix([[I]]), one), (-one, Matrix([[J]]))]
    res = solve_center_linear(terms, Matrix.zeros(1, 1))
    assert len(res.nullspace) == 2 == 4 - operator_rank(terms, (1, 1))
    # 1 - k lies in the rational span of the basis
    target = Matrix([[ONE - K]])
    span = rational_dependence([N.components() for N in res.nullspace] + [target.components()])
    assert span[0] == 2
    terms = [(Matrix([[I]]), one), (-one, Matrix([[I]]))]
    res = solve_center_linear(terms, Matrix.zeros(1, 1))
    comps = {tuple(N[0, 0].components()[2:]) for N in res.nullspace}
    assert len(res.nullspace) == 2 and comps == {(0, 0)}


@given(st.integers(1, 2).flatmap(lambda n: st.tuples(matrices(n, n), matrices(n, n), matrices(n, n))))
def test_center_dimension_matches_oracle(ABC):
    A, B, C = ABC
    n = A.rows
    terms = [(A, Matrix.identity(n)), (-Matrix.identity(n), B)]
    res = solve_center_linear(terms, C)
    assert len(res.nullspace) == 4 * n * n - operator_rank(terms, (n, n))
    if res.particular is not None:
        assert A @ res.particular - res.particular @ B == C


def test_center_shape_errors():
    with pytest.raises(DimensionError):
        solve_center_linear([(Matrix.identity(2), Matrix.identity(2))], Matrix.zeros(3, 2))


def test_realify_matrix():
    assert sympy.Matrix(realify_matrix(Matrix.identity(2))) == sympy.eye(8)
    R = sympy.Matrix(realify_matrix(Matrix([[I]])))
    assert R * R == -sympy.eye(4)


@given(matrices(2, 2), matrices(2, 2))
def test_realify_multiplicative(A, B):
    assert sympy.Matrix(realify_matrix(A @ B)) == sympy.Matrix(realify_matrix(A)) * sympy.Matrix(realify_matrix(B))


def test_matrix_text():
    M = Matrix([[1, I], [1, J]])
    assert str(M) == "[[1, i], [1, j]]"
    assert M.conj_transpose() == Matrix([[1, 1], [-I, -J]])
