"""Dense matrices over the rational quaternions.

Side conventions: column vectors carry coefficients on the RIGHT
(``sum_j w_j c_j``) and row vectors carry them on the LEFT.  Elimination for
``A x = b`` uses left row operations, which preserve that solution set.
Maps of the form ``X -> sum_t L_t X R_t`` are only linear over the center,
so they are solved after realification over the rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import _backend as _kb
from .errors import DimensionError, Singular, VerificationError
from .scalar import BASIS, Quaternion, QuaternionLike

_Z = _kb.ZERO
_BASIS_T = tuple(q._t for q in BASIS)


def _nz(t) -> bool:
    return t[0] != 0 or t[1] != 0 or t[2] != 0 or t[3] != 0


class Matrix:
    """Immutable ``rows x cols`` matrix with Quaternion entries (row-major)."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, data: Sequence[Sequence[QuaternionLike]]):
        rows = [list(r) for r in data]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = ncols
        self._e = tuple(Quaternion.coerce(x) for r in rows for x in r)

    @classmethod
    def _raw(cls, rows: int, cols: int, entries) -> "Matrix":
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._e = tuple(entries)
        return m

    @classmethod
    def _from_tuples(cls, rows: int, cols: int, tuples) -> "Matrix":
        wrap = Quaternion._wrap
        return cls._raw(rows, cols, (wrap(t) for t in tuples))

    # constructors
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(rows, cols, [Quaternion._wrap(_Z)] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one = Quaternion._wrap(_kb.ONE)
        zero = Quaternion._wrap(_Z)
        return cls._raw(n, n, [one if i == j else zero
                               for i in range(n) for j in range(n)])

    @classmethod
    def column(cls, values: Iterable[QuaternionLike]) -> "Matrix":
        vals = [Quaternion.coerce(v) for v in values]
        return cls._raw(len(vals), 1, vals)

    @classmethod
    def row(cls, values: Iterable[QuaternionLike]) -> "Matrix":
        vals = [Quaternion.coerce(v) for v in values]
        return cls._raw(1, len(vals), vals)

    @classmethod
    def diag(cls, values: Iterable[QuaternionLike]) -> "Matrix":
        vals = [Quaternion.coerce(v) for v in values]
        n = len(vals)
        zero = Quaternion._wrap(_Z)
        return cls._raw(n, n, [vals[i] if i == j else zero
                               for i in range(n) for j in range(n)])

    @classmethod
    def unit(cls, n: int, k: int, orientation: str = "column") -> "Matrix":
        """The standard basis vector e_k (0-based) of length n."""
        vals = [1 if i == k else 0 for i in range(n)]
        return cls.column(vals) if orientation == "column" else cls.row(vals)

    @staticmethod
    def hstack(blocks: Sequence["Matrix"]) -> "Matrix":
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise DimensionError("hstack needs equal row counts")
        out = []
        for i in range(rows):
            for b in blocks:
                out.extend(b._e[i * b.cols:(i + 1) * b.cols])
        return Matrix._raw(rows, sum(b.cols for b in blocks), out)

    @staticmethod
    def vstack(blocks: Sequence["Matrix"]) -> "Matrix":
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise DimensionError("vstack needs equal column counts")
        out = []
        for b in blocks:
            out.extend(b._e)
        return Matrix._raw(sum(b.rows for b in blocks), cols, out)

    @staticmethod
    def block_diag(blocks: Sequence["Matrix"]) -> "Matrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        grid = [[Quaternion._wrap(_Z)] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    grid[r0 + i][c0 + j] = b._e[i * b.cols + j]
            r0 += b.rows
            c0 += b.cols
        return Matrix._raw(n, m, [x for r in grid for x in r])

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx) -> Quaternion:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self._e[i * self.cols + j]

    def entries(self) -> tuple[Quaternion, ...]:
        return self._e

    def tolist(self) -> list[list[Quaternion]]:
        c = self.cols
        return [list(self._e[i * c:(i + 1) * c]) for i in range(self.rows)]

    def get_row(self, i: int) -> "Matrix":
        return Matrix._raw(1, self.cols, self._e[i * self.cols:(i + 1) * self.cols])

    def get_column(self, j: int) -> "Matrix":
        return Matrix._raw(self.rows, 1, self._e[j::self.cols])

    def _tuples(self):
        return [q._t for q in self._e]

    def components(self) -> list[Fraction]:
        """Row-major entries, four rational coordinates each."""
        out = []
        for q in self._e:
            out.extend(q.components())
        return out

    # structure
    def transpose(self) -> "Matrix":
        r, c = self.rows, self.cols
        return Matrix._raw(c, r, [self._e[i * c + j] for j in range(c) for i in range(r)])

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def conj_transpose(self) -> "Matrix":
        r, c = self.rows, self.cols
        return Matrix._raw(c, r, [self._e[i * c + j].conjugate()
                                  for j in range(c) for i in range(r)])

    def is_zero(self) -> bool:
        return all(q.is_zero() for q in self._e)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic
    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._from_tuples(self.rows, self.cols,
                                   (_kb.qadd(a._t, b._t) for a, b in zip(self._e, other._e)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._from_tuples(self.rows, self.cols,
                                   (_kb.qsub(a._t, b._t) for a, b in zip(self._e, other._e)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, (-q for q in self._e))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a = self._tuples()
        b = other._tuples()
        arows = [a[i * m:(i + 1) * m] for i in range(n)]
        bcols = [b[j::p] for j in range(p)]
        dot = _kb.qdot
        return Matrix._from_tuples(n, p, (dot(ar, bc) for ar in arows for bc in bcols))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.__matmul__(other)
        return self.scale_right(other)

    def __rmul__(self, other):
        return self.scale_left(other)

    def scale_left(self, q: QuaternionLike) -> "Matrix":
        t = Quaternion.coerce(q)._t
        return Matrix._from_tuples(self.rows, self.cols, (_kb.qmul(t, x._t) for x in self._e))

    def scale_right(self, q: QuaternionLike) -> "Matrix":
        t = Quaternion.coerce(q)._t
        return Matrix._from_tuples(self.rows, self.cols, (_kb.qmul(x._t, t) for x in self._e))

    def power(self, k: int) -> "Matrix":
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        result = Matrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __str__(self):
        return format_matrix(self)

    def __repr__(self):
        return f"Matrix({format_matrix(self)})"


def format_matrix(m: Matrix) -> str:
    rows = m.tolist()
    return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in rows) + "]"


def as_matrix(x) -> Matrix:
    return x if isinstance(x, Matrix) else Matrix(x)


# -- elimination over the quaternions ---------------------------------------

def _qrref(M: list, ncols: int, stop_at_free: bool = False):
    """Gauss-Jordan by left row operations on rows of 5-tuples (in place).

    Returns ``(M, pivots, first_free)`` where ``first_free`` is the first
    column without a pivot when ``stop_at_free`` is set, else None.
    """
    qmul, qsub, qinv = _kb.qmul, _kb.qsub, _kb.qinv
    m = len(M)
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        p = r
        while p < m and not _nz(M[p][c]):
            p += 1
        if p == m:
            if stop_at_free:
                return M, pivots, c
            continue
        if p != r:
            M[p], M[r] = M[r], M[p]
        inv = qinv(M[r][c])
        pr = [qmul(inv, x) for x in M[r]]
        M[r] = pr
        for i in range(m):
            if i == r:
                continue
            f = M[i][c]
            if not _nz(f):
                continue
            M[i] = [x if not _nz(y) else qsub(x, qmul(f, y)) for x, y in zip(M[i], pr)]
        pivots.append(c)
        r += 1
    return M, pivots, None


@dataclass(frozen=True)
class GaussResult:
    """Solution set ``particular + span_F(nullspace)`` of a linear system.

    ``particular`` is None when the system is inconsistent.  For column
    systems ``A x = b`` the nullspace is a right F-space; for row systems
    ``x A = b`` it is a left F-space.
    """
    particular: Optional[Matrix]
    nullspace: tuple[Matrix, ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def gauss_solve(A: Matrix, b: Matrix) -> GaussResult:
    """Solve ``A x = b`` (coefficients multiply unknowns on the left)."""
    if b.rows != A.rows or b.cols != 1:
        raise DimensionError(f"right-hand side {b.shape} does not fit {A.shape}")
    n, m = A.rows, A.cols
    a = A._tuples()
    bt = b._tuples()
    M = [a[i * m:(i + 1) * m] + [bt[i]] for i in range(n)]
    M, pivots, _ = _qrref(M, m + 1)
    zero = _Z
    one = _kb.ONE
    if m in pivots:
        particular = None
    else:
        x = [zero] * m
        for r, c in enumerate(pivots):
            x[c] = M[r][m]
        particular = Matrix._from_tuples(m, 1, x)
    free = [c for c in range(m) if c not in pivots]
    null = []
    for f in free:
        y = [zero] * m
        y[f] = one
        for r, c in enumerate(pivots):
            if c < m:
                t = M[r][f]
                y[c] = (-t[0], -t[1], -t[2], -t[3], t[4])
        null.append(Matrix._from_tuples(m, 1, y))
    return GaussResult(particular, tuple(null))


def gauss_solve_rows(A: Matrix, b: Matrix) -> GaussResult:
    """Solve ``x A = b`` for a row ``x`` (coefficients multiply on the right).

    Uses ``(x A)^* = A^* x^*`` with ``^*`` the conjugate transpose.
    """
    if b.cols != A.cols or b.rows != 1:
        raise DimensionError(f"right-hand side {b.shape} does not fit {A.shape}")
    res = gauss_solve(A.conj_transpose(), b.conj_transpose())
    part = res.particular.conj_transpose() if res.particular is not None else None
    return GaussResult(part, tuple(n.conj_transpose() for n in res.nullspace))


def rank(A: Matrix) -> int:
    a = A._tuples()
    M = [a[i * A.cols:(i + 1) * A.cols] for i in range(A.rows)]
    _, pivots, _ = _qrref(M, A.cols)
    return len(pivots)


def invert_matrix(A: Matrix) -> Matrix:
    """Two-sided inverse; raises Singular when rank < n."""
    if not A.is_square():
        raise DimensionError("only square matrices are invertible")
    n = A.rows
    a = A._tuples()
    one, zero = _kb.ONE, _Z
    M = [a[i * n:(i + 1) * n] + [one if i == j else zero for j in range(n)]
         for i in range(n)]
    M, pivots, _ = _qrref(M, n)
    if len(pivots) < n:
        raise Singular(f"matrix has rank {len(pivots)} < {n}")
    inv = Matrix._from_tuples(n, n, [t for row in M for t in row[n:]])
    if inv @ A != Matrix.identity(n):
        raise VerificationError("inverse check failed")
    return inv


def is_invertible(A: Matrix) -> bool:
    return A.is_square() and rank(A) == A.rows


def krylov_dependence(vectors: Sequence[Matrix],
                      orientation: Optional[str] = None) -> tuple[int, tuple[Quaternion, ...]]:
    """Least ``d`` with ``w_d`` in the span of ``w_0 .. w_{d-1}``.

    Columns are combined with right coefficients, rows with left ones.
    Returns ``(d, (b_0, .., b_{d-1}))`` such that
    ``w_d + sum_k w_k b_k = 0`` (columns) or ``w_d + sum_k b_k w_k = 0``
    (rows).  Without a dependence, returns ``(len(vectors), ())``.
    ``orientation`` ("column" or "row") is inferred from the shape unless
    given; 1 x 1 vectors default to columns.
    """
    if not vectors:
        raise ValueError("krylov_dependence needs at least one vector")
    shape = vectors[0].shape
    if any(v.shape != shape for v in vectors):
        raise DimensionError("vectors differ in shape")
    if orientation is None:
        orientation = "row" if shape[0] == 1 and shape[1] != 1 else "column"
    if orientation not in ("row", "column"):
        raise ValueError(f"orientation must be 'row' or 'column', got {orientation!r}")
    rows_mode = orientation == "row"
    if rows_mode:
        if shape[0] != 1:
            raise DimensionError("krylov_dependence expects row vectors")
        cols = [v.conj_transpose() for v in vectors]
    else:
        if shape[1] != 1:
            raise DimensionError("krylov_dependence expects vectors")
        cols = list(vectors)
    n = cols[0].rows
    w = [c._tuples() for c in cols]
    M = [[w[j][i] for j in range(len(w))] for i in range(n)]
    M, pivots, free = _qrref(M, len(w), stop_at_free=True)
    if free is None:
        return len(vectors), ()
    d = free
    coeffs = []
    for r in range(d):
        t = M[r][d]
        q = Quaternion._wrap((-t[0], -t[1], -t[2], -t[3], t[4]))
        coeffs.append(q.conjugate() if rows_mode else q)
    return d, tuple(coeffs)


# -- realification and center-linear solves ---------------------------------

def realify_matrix(M: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    """Block-wise left regular representation: a 4n x 4k rational matrix."""
    from .scalar import realify_scalar
    out = [[Fraction(0)] * (4 * M.cols) for _ in range(4 * M.rows)]
    for i in range(M.rows):
        for j in range(M.cols):
            blk = realify_scalar(M[i, j])
            for r in range(4):
                for c in range(4):
                    out[4 * i + r][4 * j + c] = blk[r][c]
    return tuple(tuple(r) for r in out)


@dataclass(frozen=True)
class CenterSolveResult:
    """Solutions of a center-linear equation: particular + Q-span(nullspace)."""
    particular: Optional[Matrix]
    nullspace: tuple[Matrix, ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def unique(self) -> bool:
        return self.particular is not None and not self.nullspace


def _sandwich_block(lt, rt):
    """Rational 4x4 matrix of ``x -> l x r`` as integer numerators + den."""
    qmul = _kb.qmul
    cols = [qmul(qmul(lt, e), rt) for e in _BASIS_T]
    return cols


def apply_center_operator(terms: Sequence[tuple[Matrix, Matrix]], X: Matrix) -> Matrix:
    out = None
    for L, R in terms:
        t = L @ X @ R
        out = t if out is None else out + t
    return out


def solve_center_linear(terms: Sequence[tuple[Matrix, Matrix]], rhs: Matrix) -> CenterSolveResult:
    """Solve ``sum_t L_t X R_t = rhs`` over the center.

    The unknown ``X`` has shape ``(L.cols, R.rows)``.  The operator is
    realified to a rational system of size ``4*rhs.rows*rhs.cols`` by
    ``4*X.rows*X.cols``; the returned nullspace basis spans the kernel over
    the rationals only.
    """
    if not terms:
        raise ValueError("no operator terms")
    n, p = terms[0][0].shape
    q, k = terms[0][1].shape
    for L, R in terms:
        if L.shape != (n, p) or R.shape != (q, k):
            raise DimensionError("operator terms disagree in shape")
    if rhs.shape != (n, k):
        raise DimensionError(f"rhs shape {rhs.shape} != {(n, k)}")
    nrows = 4 * n * k
    nunk = 4 * p * q
    acc: dict[tuple[int, int], Fraction] = {}
    cache: dict = {}
    for L, R in terms:
        lt = L._tuples()
        rt = R._tuples()
        lnz = [(i, a, lt[i * p + a]) for i in range(n) for a in range(p) if _nz(lt[i * p + a])]
        rnz = [(b, j, rt[b * k + j]) for b in range(q) for j in range(k) if _nz(rt[b * k + j])]
        for i, a, lq in lnz:
            for b, j, rq in rnz:
                key = (lq, rq)
                cols = cache.get(key)
                if cols is None:
                    cols = cache[key] = _sandwich_block(lq, rq)
                row0 = 4 * (i * k + j)
                col0 = 4 * (a * q + b)
                for c, t in enumerate(cols):
                    den = t[4]
                    for r in range(4):
                        if t[r]:
                            kk = (row0 + r, col0 + c)
                            acc[kk] = acc.get(kk, 0) + Fraction(t[r], den)
    rhs_c = rhs.components()
    rows = [[Fraction(0)] * (nunk + 1) for _ in range(nrows)]
    for (r, c), v in acc.items():
        rows[r][c] = v
    for r in range(nrows):
        rows[r][nunk] = rhs_c[r]
    red, pivots = _kb.rref(rows, nunk + 1)

    def to_matrix(vec):
        qs = [Quaternion(*vec[4 * s:4 * s + 4]) for s in range(p * q)]
        return Matrix._raw(p, q, qs)

    if nunk in pivots:
        particular = None
    else:
        x = [Fraction(0)] * nunk
        for r, c in enumerate(pivots):
            x[c] = red[r][nunk]
        particular = to_matrix(x)
    pivset = set(pivots)
    null = []
    for f in range(nunk):
        if f in pivset:
            continue
        y = [Fraction(0)] * nunk
        y[f] = Fraction(1)
        for r, c in enumerate(pivots):
            if c < nunk:
                y[c] = -red[r][f]
        null.append(to_matrix(y))
    result = CenterSolveResult(particular, tuple(null))
    _verify_center(terms, rhs, result)
    return result


def _verify_center(terms, rhs, result):
    if result.particular is not None:
        if apply_center_operator(terms, result.particular) != rhs:
            raise VerificationError("center-linear particular solution fails")
    for N in result.nullspace:
        if not apply_center_operator(terms, N).is_zero():
            raise VerificationError("center-linear kernel element fails")


def rational_dependence(vectors: Sequence[Sequence[Fraction]]):
    """First rational linear dependence ``w_d = sum_{k<d} w_k c_k``.

    Returns ``(d, (c_0, .., c_{d-1}))`` or ``(len(vectors), ())``.
    """
    m = len(vectors)
    n = len(vectors[0])
    rows = [[vectors[j][i] for j in range(m)] for i in range(n)]
    red, pivots = _kb.rref(rows, m)
    for d in range(m):
        if d >= len(pivots) or pivots[d] != d:
            return d, tuple(red[r][d] for r in range(d))
    return m, ()
