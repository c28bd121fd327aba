from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from skewinterp import I, J, K, Matrix, NotMonic, ONE, Quaternion, SkewPoly, ZERO
from skewinterp.pairs import central_minpoly
from skewinterp.poly import (MatrixPoly, backward_shift, companion, eval_matrix, eval_scalar,
                             eval_tangential, left_divide, parse_poly, quotient_operator, rho,
                             right_divide, two_sided_eval)
from strategies import matrices, polys, quaternions

z = SkewPoly.z()
P = SkewPoly.parse


def naive_left(v, f, A):
    acc, Ak = Matrix.zeros(*v.shape), Matrix.identity(A.rows)
    for c in f.coeffs:
        acc = acc + Ak @ v * c
        Ak = Ak @ A
    return acc


def naive_right(u, f, B):
    acc, Bk = Matrix.zeros(*u.shape), Matrix.identity(B.rows)
    for c in f.coeffs:
        acc = acc + c * (u @ Bk)
        Bk = Bk @ B
    return acc


def naive_two_sided(v, f, u, A, B):
    n, k = A.rows, B.rows
    acc = Matrix.zeros(n, k)
    for i in range(f.degree):
        for j in range(f.degree - i):
            acc = acc + A.power(i) @ v * f[i + j + 1] @ u @ B.power(j)
    return acc


def pair_sizes(max_n=4):
    return st.integers(1, max_n).flatmap(lambda n: st.tuples(matrices(n, n), matrices(n, 1)))


def test_multiplication_is_coefficientwise():
    assert (I * z) * (J * z) == K * z ** 2
    assert (z - I) * (z + I) == z ** 2 + 1
    assert z * I == I * z


def test_parse_and_print():
    f = P("z^3 + (1+2i)z + 3/2")
    assert f.coeffs == (Quaternion(Fraction(3, 2)), Quaternion(1, 2), ZERO, ONE)
    assert str(f) == "z^3 + (1+2i)z + 3/2"
    assert str(P("z - i")) == "z - i"
    assert str(P("-z^2 + 1/2z")) == "-z^2 + 1/2z"
    assert str(SkewPoly([])) == "0"
    assert str(SkewPoly([I - J])) == "i-j"


@given(polys())
def test_print_parse_roundtrip(f):
    assert parse_poly(str(f)) == f


def test_left_divide_examples():
    assert left_divide(z ** 2, z - I) == (z + I, SkewPoly([-1]))
    p = z ** 2 + I * z + J
    assert left_divide(p, p) == (SkewPoly([1]), SkewPoly([]))
    f = J * z + K
    assert left_divide(f, p) == (SkewPoly([]), f)


def test_right_divide_examples():
    assert right_divide(z ** 2, z - I) == (z + I, SkewPoly([-1]))
    assert right_divide((z - J) * (z - I), z - I) == (z - J, SkewPoly([]))
    assert right_divide(SkewPoly([1]), z) == (SkewPoly([]), SkewPoly([1]))


def test_divide_requires_monic():
    with pytest.raises(NotMonic):
        left_divide(z, 2 * z)


@given(polys(), polys(4, monic=True))
def test_division_identities(f, p):
    g, b = left_divide(f, p)
    assert p * g + b == f and b.degree < p.degree
    h, d = right_divide(f, p)
    assert h * p + d == f and d.degree < p.degree


@given(polys(), quaternions)
def test_scalar_eval_is_remainder(f, a):
    assert left_divide(f, rho(a))[1] == SkewPoly([eval_scalar(f, a, "left")])
    assert right_divide(f, rho(a))[1] == SkewPoly([eval_scalar(f, a, "right")])


def test_eval_scalar_examples():
    f = J * z
    assert eval_scalar(f, I, "left") == K
    assert eval_scalar(f, I, "right") == -K
    assert eval_scalar(z ** 2 + 1, I, "left") == ZERO == eval_scalar(z ** 2 + 1, I, "right")


def test_eval_matrix_examples():
    A = Matrix([[I, 1], [J, K]])
    assert eval_matrix(z, A) == A
    c = P("z^3 - 2z + 1/2")
    assert eval_matrix(c, A, "left") == eval_matrix(c, A, "right")
    mu = central_minpoly(A)
    assert eval_matrix(mu, A, "left").is_zero() and eval_matrix(mu, A, "right").is_zero()


@given(pair_sizes(), polys())
def test_tangential_matches_naive(Av, f):
    A, v = Av
    assert eval_tangential(v, f, A, "left") == naive_left(v, f, A)
    u = v.conj_transpose()
    assert eval_tangential(u, f, A, "right") == naive_right(u, f, A)


def test_tangential_companion_reads_coefficients():
    p = P("z^3 + iz + j")
    f = P("kz^2 + 2z - 1")
    assert eval_tangential(Matrix.unit(3, 0), f, companion(p)) == Matrix.column(f.coeffs)
    v = Matrix.column([I, 2])
    assert eval_tangential(v, SkewPoly([1]), Matrix([[1, 2], [3, 4]])) == v


@given(pair_sizes(3), polys(3), polys(3))
def test_product_rule(Av, g, f):
    A, v = Av
    inner = eval_tangential(v, g, A, "left")
    assert eval_tangential(v, g * f, A, "left") == eval_tangential(inner, f, A, "left")
    u = v.conj_transpose()
    inner = eval_tangential(u, f, A, "right")
    assert eval_tangential(u, g * f, A, "right") == eval_tangential(inner, g, A, "right")


@given(pair_sizes(3), polys())
def test_quotient_operator_factorization(Av, f):
    A, v = Av
    G = quotient_operator(v, f, A, "left")
    lhs = MatrixPoly.constant(v) @ f
    rhs = MatrixPoly.pencil(A) @ G + MatrixPoly.constant(eval_tangential(v, f, A, "left"))
    assert lhs == rhs
    u = v.conj_transpose()
    G = quotient_operator(u, f, A, "right")
    lhs = MatrixPoly.from_poly(f) @ MatrixPoly.constant(u)
    rhs = G @ MatrixPoly.pencil(A) + MatrixPoly.constant(eval_tangential(u, f, A, "right"))
    assert lhs == rhs


def test_quotient_operator_examples():
    A = Matrix([[I, 1], [0, J]])
    v = Matrix.column([1, K])
    assert quotient_operator(v, z, A).coeffs == (v,)
    assert quotient_operator(v, SkewPoly([I]), A).coeffs == ()
    assert quotient_operator(v, z ** 2, A).coeffs == (A @ v, v)


def test_zero_evaluation_means_factorization():
    A = Matrix([[I, 0], [0, J]])
    v = Matrix.column([1, 1])
    f = (z ** 2 + 1) * P("kz + 2")
    assert eval_tangential(v, f, A).is_zero()
    G = quotient_operator(v, f, A)
    assert MatrixPoly.constant(v) @ f == MatrixPoly.pencil(A) @ G


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_two_sided_sylvester_identity(n, k, data):
    A = data.draw(matrices(n, n))
    B = data.draw(matrices(k, k))
    v = data.draw(matrices(n, 1))
    u = data.draw(matrices(1, k))
    f = data.draw(polys())
    S = two_sided_eval(v, f, u, A, B)
    assert S == naive_two_sided(v, f, u, A, B)
    assert A @ S - S @ B == eval_tangential(v, f, A, "left") @ u - v @ eval_tangential(u, f, B, "right")
    assert two_sided_eval(v, f, u, A, B, route="left") == S == two_sided_eval(v, f, u, A, B, route="right")


def test_two_sided_examples():
    A, B = Matrix([[I]]), Matrix([[J, 1], [0, K]])
    v, u = Matrix.column([2]), Matrix.row([1, I])
    assert two_sided_eval(v, SkewPoly([K]), u, A, B).is_zero()
    assert two_sided_eval(v, z, u, A, B) == v @ u


def test_companion_examples():
    p = SkewPoly([I, J, 1])
    assert companion(p, "left") == Matrix([[0, -I], [1, -J]])
    assert companion(z - K, "left") == Matrix([[K]])
    assert companion(p, "right") == companion(p, "left").transpose()


def test_backward_shift():
    assert backward_shift(P("z^2 + iz + 1")) == P("z + i")
    p = P("z^3 + jz + k")
    assert backward_shift(p, 3) == SkewPoly([1])
    assert backward_shift(SkewPoly([I])) == SkewPoly([])
