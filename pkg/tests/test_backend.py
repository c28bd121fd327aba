import os
import random
import subprocess
import sys

import pytest

from skewinterp import _backend, _kernels_py as pure

compiled = pytest.importorskip("skewinterp._kernels")


def rand_q(rng):
    den = rng.randint(1, 30)
    return pure.qnorm(*(rng.randint(-50, 50) for _ in range(4)), den)


def test_kernels_agree():
    rng = random.Random(50)
    for _ in range(500):
        x, y = rand_q(rng), rand_q(rng)
        assert compiled.qadd(x, y) == pure.qadd(x, y)
        assert compiled.qsub(x, y) == pure.qsub(x, y)
        assert compiled.qmul(x, y) == pure.qmul(x, y)
        if any(x[:4]):
            assert compiled.qinv(x) == pure.qinv(x)
        xs = [rand_q(rng) for _ in range(4)]
        ys = [rand_q(rng) for _ in range(4)]
        assert compiled.qdot(xs, ys) == pure.qdot(xs, ys)


def test_rref_agrees():
    from fractions import Fraction
    rng = random.Random(51)
    for _ in range(50):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(m)]
        assert compiled.rref(rows, n) == pure.rref(rows, n)


def test_backend_selected():
    assert _backend.BACKEND in ("cython", "python")


def test_pure_override():
    env = dict(os.environ, SKEWINTERP_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import skewinterp; print(skewinterp.BACKEND)"],
                         env=env, capture_output=True, text=True).stdout.strip()
    assert out == "python"
