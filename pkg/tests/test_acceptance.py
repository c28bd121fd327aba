"""Acceptance criteria 1-13, exact equality throughout.

Each criterion is one test; the terminal summary lists a PASS/FAIL line
per criterion (see conftest.py).
"""
import io
import json
import random
from pathlib import Path

import pytest

from skewinterp import (I, InputPair, J, K, Matrix, NoSolution, OutputPair, SkewPoly, TwoSidedData, invert_matrix, llcm, lrcm,
                        matrix_minpolys, minpoly_pair, p_independent, pairs_similar, polys_similar,
                        quasi_ideal_basis, solve_atsp, solve_left, solve_right, solve_sylvester,
                        solve_tsp)
from skewinterp import randgen as rg
from skewinterp.cli import COMMANDS, run
from skewinterp.interp import sylvester_closed_form, upsilon_by_columns, upsilon_by_rows
from skewinterp.linalg import rational_dependence, solve_center_linear
from skewinterp.pairs import central_minpoly, gamma_matrix, vandermonde
from skewinterp.poly import (MatrixPoly, companion, eval_matrix, eval_scalar, eval_tangential,
                             left_divide, quotient_operator, rho, right_divide, two_sided_eval)
from instances import sylvester_ranks, two_sided
from test_pairs import realified_invertible

z = SkewPoly.z()


def rho_product(gs):
    out = SkewPoly([1])
    for g in gs:
        out = out * rho(g)
    return out


def test_criterion_01_companion_identity():
    rng = random.Random(101)
    for _ in range(200):
        p = rg.poly(rng, rng.randint(1, 6), 9, monic=True)
        n = p.degree
        assert minpoly_pair(InputPair(companion(p, "left"), Matrix.unit(n, 0))).poly == p
        assert minpoly_pair(OutputPair(Matrix.unit(n, 0, "row"), companion(p, "right"))).poly == p


def test_criterion_02_two_diagonal_factorization():
    rng = random.Random(102)
    for _ in range(100):
        gs = [rg.quaternion(rng, 9) for _ in range(rng.randint(1, 5))]
        n = len(gs)
        G = gamma_matrix(gs)
        for k in range(n):
            assert minpoly_pair(InputPair(G, Matrix.unit(n, k))).poly == rho_product(gs[k:])
            assert minpoly_pair(OutputPair(Matrix.unit(n, k, "row"), G)).poly == rho_product(gs[:k + 1])
        mu_left, mu_right = matrix_minpolys(G)
        assert mu_left == lrcm([rho_product(gs[k:]) for k in range(n)])
        assert mu_right == llcm([rho_product(gs[:k + 1]) for k in range(n)])
        assert eval_matrix(mu_left, G, "left").is_zero()
        assert eval_matrix(mu_right, G, "right").is_zero()


def test_criterion_03_division_and_evaluation():
    rng = random.Random(103)
    for _ in range(200):
        f = rg.poly(rng, rng.randint(0, 6), 9)
        p = rg.poly(rng, rng.randint(1, 4), 9, monic=True)
        g, b = left_divide(f, p)
        assert p * g + b == f and b.degree < p.degree
        h, d = right_divide(f, p)
        assert h * p + d == f and d.degree < p.degree
        a = rg.quaternion(rng)
        assert left_divide(f, rho(a))[1] == SkewPoly([eval_scalar(f, a, "left")])
        assert right_divide(f, rho(a))[1] == SkewPoly([eval_scalar(f, a, "right")])
    for _ in range(200):
        n = rng.randint(1, 4)
        A, v, u = rg.matrix(rng, n, n, 5), rg.column(rng, n, 5), rg.row(rng, n, 5)
        f, g = rg.poly(rng, rng.randint(0, 6), 5), rg.poly(rng, rng.randint(0, 3), 5)
        # product rule
        assert eval_tangential(v, g * f, A, "left") == eval_tangential(eval_tangential(v, g, A, "left"), f, A, "left")
        assert eval_tangential(u, f * g, A, "right") == eval_tangential(eval_tangential(u, g, A, "right"), f, A, "right")
        # division by the pencil
        L = quotient_operator(v, f, A, "left")
        assert MatrixPoly.constant(v) @ f == MatrixPoly.pencil(A) @ L + MatrixPoly.constant(eval_tangential(v, f, A, "left"))
        R = quotient_operator(u, f, A, "right")
        assert MatrixPoly.from_poly(f) @ MatrixPoly.constant(u) == R @ MatrixPoly.pencil(A) + MatrixPoly.constant(eval_tangential(u, f, A, "right"))
        # zero evaluation <=> factorization through the pencil
        P = minpoly_pair(InputPair(A, v)).poly
        fz = P * g
        assert eval_tangential(v, fz, A, "left").is_zero()
        assert MatrixPoly.constant(v) @ fz == MatrixPoly.pencil(A) @ quotient_operator(v, fz, A, "left")
        Q = minpoly_pair(OutputPair(u, A)).poly
        fz = g * Q
        assert eval_tangential(u, fz, A, "right").is_zero()
        assert MatrixPoly.from_poly(fz) @ MatrixPoly.constant(u) == quotient_operator(u, fz, A, "right") @ MatrixPoly.pencil(A)


def _uncontrollable(rng, n1, n2):
    """(A, v, b) with b outside the controllability space; and the row mirror."""
    n = n1 + n2
    top = Matrix.hstack([rg.matrix(rng, n1, n1, 3), rg.matrix(rng, n1, n2, 3)])
    bot = Matrix.hstack([Matrix.zeros(n2, n1), rg.matrix(rng, n2, n2, 3)])
    M = Matrix.vstack([top, bot])
    T = rg.invertible(rng, n)
    Ti = invert_matrix(T)
    v = T @ Matrix.vstack([rg.column(rng, n1, 3), Matrix.zeros(n2, 1)])
    b = T @ Matrix.unit(n, n - 1)
    u = Matrix.hstack([Matrix.zeros(1, n1), rg.row(rng, n2, 3)]) @ Ti
    d = Matrix.unit(n, 0, "row") @ Ti
    return T @ M @ Ti, v, b, u, d


def test_criterion_04_one_sided_solvers():
    rng = random.Random(104)
    for _ in range(200):
        n = rng.randint(1, 5)
        A, v = rg.controllable_pair(rng, n)
        f0 = rg.poly(rng, rng.randint(0, 7), 5)
        b = eval_tangential(v, f0, A, "left")
        fam = solve_left(A, v, b)
        assert fam.particular.degree < n
        assert eval_tangential(v, fam.particular, A, "left") == b
        assert left_divide(f0 - fam.particular, fam.left_modulus)[1].is_zero()
        other = fam.member(rg.poly(rng, rng.randint(0, 3), 5))
        assert eval_tangential(v, other, A, "left") == b
        assert left_divide(other - f0, fam.left_modulus)[1].is_zero()

        u, B = rg.observable_pair(rng, n)
        dv = eval_tangential(u, f0, B, "right")
        fam = solve_right(u, B, dv)
        assert fam.particular.degree < n
        assert eval_tangential(u, fam.particular, B, "right") == dv
        assert right_divide(f0 - fam.particular, fam.right_modulus)[1].is_zero()
        other = fam.member(rg.poly(rng, rng.randint(0, 3), 5))
        assert right_divide(other - f0, fam.right_modulus)[1].is_zero()
    for _ in range(20):
        A, v, b, u, d = _uncontrollable(rng, rng.randint(1, 2), rng.randint(1, 2))
        with pytest.raises(NoSolution):
            solve_left(A, v, b)
        with pytest.raises(NoSolution):
            solve_right(u, A, d)


def _independent_nodes(rng, count, side):
    while True:
        nodes = [rg.quaternion(rng, 4) for _ in range(count)]
        V = vandermonde(nodes, side)
        if realified_invertible(V):
            return nodes


def test_criterion_05_lrcm_llcm():
    rng = random.Random(105)
    for _ in range(200):
        fs = [rg.poly(rng, rng.randint(1, 3), 5, monic=True) for _ in range(rng.randint(2, 3))]
        L, R = lrcm(fs), llcm(fs)
        assert L.is_monic() and R.is_monic()
        assert all(left_divide(L, f)[1].is_zero() for f in fs)
        assert all(right_divide(R, f)[1].is_zero() for f in fs)
    for _ in range(30):
        m = rng.randint(2, 4)
        for side, lcm in (("left", lrcm), ("right", llcm)):
            nodes = _independent_nodes(rng, m, side)
            cut = rng.randint(1, m - 1)
            f1, f2 = lcm([rho(a) for a in nodes[:cut]]), lcm([rho(a) for a in nodes[cut:]])
            assert f1.degree == cut and f2.degree == m - cut
            assert lcm([f1, f2]).degree == f1.degree + f2.degree
    assert lrcm([z - I, z - J]) == z ** 2 + 1
    assert lrcm([z - I, z - J, z - K]) == z ** 2 + 1


def test_criterion_06_two_sided_sylvester_identity():
    rng = random.Random(106)
    for _ in range(200):
        n, k = rng.randint(1, 4), rng.randint(1, 4)
        A, B = rg.matrix(rng, n, n, 5), rg.matrix(rng, k, k, 5)
        v, u = rg.column(rng, n, 5), rg.row(rng, k, 5)
        f = rg.poly(rng, rng.randint(0, 6), 5)
        S = two_sided_eval(v, f, u, A, B)
        assert A @ S - S @ B == eval_tangential(v, f, A, "left") @ u - v @ eval_tangential(u, f, B, "right")
    for _ in range(100):
        p = rg.poly(rng, rng.randint(1, 4), 5, monic=True)
        q = rg.poly(rng, rng.randint(1, 4), 5, monic=True)
        n, k = p.degree, q.degree
        f = rg.poly(rng, rng.randint(0, n + k - 1), 5)
        direct = two_sided_eval(Matrix.unit(n, 0), f, Matrix.unit(k, 0, "row"), companion(p), companion(q, "right"))
        assert upsilon_by_columns(f, p, q) == direct == upsilon_by_rows(f, p, q)


def test_criterion_07_atsp_roundtrip():
    rng = random.Random(107)
    for _ in range(100):
        f0, data = two_sided(rng, rng.randint(1, 4), rng.randint(1, 4))
        assert solve_atsp(data) == f0
        assert data.poly_left_form(data.S) == data.poly_right_form(data.S) == f0


def _tsp_brute_solvable(A, v, u, B, b, d):
    """Direct search for f (deg < n+k) as a center-linear system in its coefficients."""
    n, k = A.rows, B.rows
    m = n + k
    cols, Ak = [], v
    for _ in range(m):
        cols.append(Ak)
        Ak = A @ Ak
    kry = Matrix.hstack(cols)
    terms = [(Matrix.vstack([kry, Matrix.zeros(1, m)]), Matrix.hstack([Matrix.identity(1), Matrix.zeros(1, k)]))]
    uB = u
    for j in range(m):
        terms.append((Matrix.vstack([Matrix.zeros(n, m), Matrix.unit(m, j, "row")]),
                      Matrix.hstack([Matrix.zeros(1, 1), uB])))
        uB = uB @ B
    rhs = Matrix.vstack([Matrix.hstack([b, Matrix.zeros(n, k)]), Matrix.hstack([Matrix.zeros(1, 1), d])])
    return solve_center_linear(terms, rhs).particular is not None


def test_criterion_08_tsp():
    rng = random.Random(108)
    for t in range(100):
        n, k = rng.randint(1, 3), rng.randint(1, 3)
        if t % 2:
            f0, full = two_sided(rng, n, k)
            data = TwoSidedData(full.A, full.v, full.u, full.B, b=full.b, d=full.d)
        else:
            # right pair sharing the left minimal polynomial: singular Sylvester operator
            f0 = None
            A, v = rg.controllable_pair(rng, n)
            p = minpoly_pair(InputPair(A, v)).poly
            T = rg.invertible(rng, n)
            Ti = invert_matrix(T)
            u, B = Matrix.unit(n, 0, "row") @ Ti, T @ companion(p, "right") @ Ti
            b, d = rg.column(rng, n, 3), rg.row(rng, n, 3)
            if rng.random() < 0.5:
                g = rg.poly(rng, rng.randint(0, 2 * n - 1), 3)
                b, d = eval_tangential(v, g, A, "left"), eval_tangential(u, g, B, "right")
            data = TwoSidedData(A, v, u, B, b=b, d=d)
        sylv = solve_sylvester(data.A, data.B, data.b @ data.u - data.v @ data.d)
        solvable = _tsp_brute_solvable(data.A, data.v, data.u, data.B, data.b, data.d)
        assert (sylv.particular is not None) == solvable
        if not solvable:
            with pytest.raises(NoSolution):
                solve_tsp(data)
            continue
        fam = solve_tsp(data)
        if f0 is not None:
            assert fam.contains(f0)
        Y0 = sylv.particular
        Ys = [Y0] + [Y0 + N for N in sylv.nullspace] + [Y0 - N for N in sylv.nullspace]
        fs = []
        for Y in Ys:
            f = data.poly_left_form(Y)
            assert f == data.poly_right_form(Y) == data.poly_left_pencil(Y) == data.poly_right_pencil(Y)
            assert data.satisfies(f)
            fs.append(f)
        assert len(set(fs)) == len(Ys)
        nn, kk = data.n, data.k
        for N in sylv.nullspace:
            X = data.transformed(N)
            assert not (X.get_row(nn - 1).is_zero() and X.get_column(kk - 1).is_zero())
        # formulas read only the last row / last column of the transformed matrix
        E = Matrix([[rg.quaternion(rng, 3) if i < nn - 1 and j < kk - 1 else 0 for j in range(kk)]
                    for i in range(nn)])
        Ctrb = invert_matrix(data.C_inv)
        Obsv = invert_matrix(data.O_inv)
        Y1 = Y0 + Ctrb @ E @ Obsv
        assert data.poly_left_form(Y1) == fs[0] == data.poly_right_form(Y1)


def test_criterion_09_closed_form_sylvester():
    rng = random.Random(109)
    done = 0
    while done < 100:
        n, k = rng.randint(1, 3), rng.randint(1, 3)
        A, B, C = rg.matrix(rng, n, n, 5), rg.matrix(rng, k, k, 5), rg.matrix(rng, n, k, 5)
        Y = sylvester_closed_form(A, B, C)
        if Y is None:
            continue
        res = solve_sylvester(A, B, C, check_closed_form=False)
        assert res.particular == Y and res.nullspace == ()
        done += 1
    for _ in range(20):
        n = rng.randint(1, 2)
        A = rg.matrix(rng, n, n, 3)
        S = rg.invertible(rng, n)
        B = S @ A @ invert_matrix(S)
        mu = central_minpoly(A)
        assert eval_matrix(mu, B, "left").is_zero()
        C = rg.matrix(rng, n, n, 3) if rng.random() < 0.5 else A @ S - S @ B
        res = solve_sylvester(A, B, C)
        r_op, r_aug = sylvester_ranks(A, B, C)
        assert (res.particular is not None) == (r_op == r_aug)
        if res.particular is not None:
            assert A @ res.particular - res.particular @ B == C
        assert len(res.nullspace) == 4 * n * n - r_op


def _components(f, width):
    out = []
    for c in list(f.coeffs) + [I * 0] * (width - len(f.coeffs)):
        out += c.components()
    return out


def test_criterion_10_quasi_ideal_bijection():
    rng = random.Random(110)
    for _ in range(50):
        p = rg.poly(rng, rng.randint(1, 3), 3, monic=True)
        q = rg.poly(rng, rng.randint(1, 3), 3, monic=True)
        n, k = p.degree, q.degree
        basis = quasi_ideal_basis(p, q)
        for X, f in basis:
            g, r1 = left_divide(f, p)
            h, r2 = right_divide(f, q)
            assert r1.is_zero() and r2.is_zero() and f.degree < n + k
            assert p * g == f == h * q
        fs = [f for _, f in basis]
        if fs:
            vecs = [_components(f, n + k) for f in fs]
            assert rational_dependence(vecs)[0] == len(fs)


def test_criterion_11_p_independence():
    assert p_independent([I, J]) is True
    assert p_independent([I, I]) is False
    assert p_independent([I, J, K]) is False
    rng = random.Random(111)
    pool = [I, J, K, I + J, (I - K) * 2, J * 3]
    for t in range(100):
        m = rng.randint(1, 4)
        if t % 2:
            nodes = [rng.choice(pool) for _ in range(m)]
        else:
            nodes = [rg.quaternion(rng, 2) for _ in range(m)]
        for side in ("left", "right"):
            via_lcm = p_independent(nodes, side, "lrcm")
            via_vdm = p_independent(nodes, side, "vandermonde")
            assert via_lcm == via_vdm == realified_invertible(vandermonde(nodes, side))


def test_criterion_12_pair_similarity():
    rng = random.Random(112)
    for t in range(100):
        n = rng.randint(1, 4)
        S = rg.invertible(rng, n)
        Si = invert_matrix(S)
        if t % 2:
            A, v = rg.controllable_pair(rng, n)
            T = pairs_similar(InputPair(A, v), InputPair(S @ A @ Si, S @ v))
            assert T @ A == S @ A @ Si @ T and T @ v == S @ v
            assert invert_matrix(T) @ T == Matrix.identity(n)
        else:
            u, B = rg.observable_pair(rng, n)
            T = pairs_similar(OutputPair(u, B), OutputPair(u @ Si, S @ B @ Si))
            assert T @ B == S @ B @ Si @ T and u == u @ Si @ T
    res = polys_similar(z - I, z - J)
    assert res.verdict == "witness" and res.h == SkewPoly([I + J]) == res.h2
    assert (z - J) * res.h == res.h2 * (z - I)


def test_criterion_13_cli_golden_files():
    golden = Path(__file__).parent / "golden"
    manifest = json.loads((golden / "manifest.json").read_text())
    assert {c["argv"][0] for c in manifest} == set(COMMANDS)
    seen = set()
    for case in manifest:
        out, err = io.StringIO(), io.StringIO()
        code = run(case["argv"] + ["--seed", "0", str(golden / f"{case['name']}.json")],
                   stdout=out, stderr=err)
        assert code == case["exit"], case["name"]
        assert out.getvalue() == (golden / f"{case['name']}.out").read_text(), case["name"]
        assert (err.getvalue() != "") == (code == 2)
        seen.add(code)
    assert seen == {0, 1, 2}
