"""Polynomials in a central variable ``z`` over the rational quaternions.

Coefficients are stored densely, lowest degree first.  Because ``z`` is
central, ``(a z^i)(b z^j) = ab z^{i+j}`` while ``ab != ba`` in general, so
evaluation at a (matrix) argument comes in a left and a right flavour.
"""
from __future__ import annotations

import re
from typing import Iterable, Optional, Sequence, Union

from . import _backend as _kb
from .errors import DimensionError, NotMonic, ParseError, VerificationError
from .linalg import Matrix
from .scalar import ONE, ZERO, Quaternion, QuaternionLike, parse_quaternion

LEFT = "left"
RIGHT = "right"


def _side(side) -> str:
    s = str(side).lower()
    if s in ("left", "l"):
        return LEFT
    if s in ("right", "r"):
        return RIGHT
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


class SkewPoly:
    """``sum_j c_j z^j`` with Quaternion coefficients; the zero polynomial is empty."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[QuaternionLike] = ()):
        cs = [Quaternion.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self._c = tuple(cs)

    @classmethod
    def _raw(cls, coeffs) -> "SkewPoly":
        p = object.__new__(cls)
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        p._c = tuple(cs)
        return p

    @classmethod
    def coerce(cls, x) -> "SkewPoly":
        if isinstance(x, SkewPoly):
            return x
        if isinstance(x, str):
            return parse_poly(x)
        if isinstance(x, (list, tuple)):
            return cls(x)
        return cls([x])

    @classmethod
    def constant(cls, c: QuaternionLike) -> "SkewPoly":
        return cls([c])

    @classmethod
    def monomial(cls, c: QuaternionLike, k: int) -> "SkewPoly":
        return cls([0] * k + [c])

    @classmethod
    def z(cls) -> "SkewPoly":
        return cls([0, 1])

    @classmethod
    def parse(cls, text: str) -> "SkewPoly":
        return parse_poly(text)

    @property
    def coeffs(self) -> tuple[Quaternion, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    def __len__(self):
        return len(self._c)

    def __getitem__(self, k: int) -> Quaternion:
        if 0 <= k < len(self._c):
            return self._c[k]
        return ZERO

    def leading(self) -> Quaternion:
        return self._c[-1] if self._c else ZERO

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == ONE

    def is_central(self) -> bool:
        return all(c.is_central() for c in self._c)

    def __bool__(self):
        return bool(self._c)

    # arithmetic
    def __add__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        n = max(len(self._c), len(o._c))
        return SkewPoly._raw(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        n = max(len(self._c), len(o._c))
        return SkewPoly._raw(self[k] - o[k] for k in range(n))

    def __rsub__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return SkewPoly._raw(-c for c in self._c)

    def __mul__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        if not self._c or not o._c:
            return SkewPoly()
        a = [c._t for c in self._c]
        b = [c._t for c in o._c]
        out = []
        for s in range(len(a) + len(b) - 1):
            lo = max(0, s - len(b) + 1)
            hi = min(s, len(a) - 1)
            out.append(Quaternion._wrap(_kb.qdot(a[lo:hi + 1], [b[s - i] for i in range(lo, hi + 1)])))
        return SkewPoly._raw(out)

    def __rmul__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, n: int):
        result = SkewPoly([1])
        for _ in range(n):
            result = result * self
        return result

    def scale_left(self, c: QuaternionLike) -> "SkewPoly":
        q = Quaternion.coerce(c)
        return SkewPoly._raw(q * x for x in self._c)

    def scale_right(self, c: QuaternionLike) -> "SkewPoly":
        q = Quaternion.coerce(c)
        return SkewPoly._raw(x * q for x in self._c)

    def conjugate(self) -> "SkewPoly":
        """Coefficient-wise conjugate; an anti-automorphism: (fg)~ = g~ f~."""
        return SkewPoly._raw(c.conjugate() for c in self._c)

    def monic_right(self) -> "SkewPoly":
        """``self * lead^{-1}``; generates the same right ideal."""
        return self.scale_right(self.leading().inverse())

    def monic_left(self) -> "SkewPoly":
        """``lead^{-1} * self``; generates the same left ideal."""
        return self.scale_left(self.leading().inverse())

    def __eq__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        return hash(self._c)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"SkewPoly({format_poly(self)!r})"


def _as_poly(x) -> Optional[SkewPoly]:
    if isinstance(x, SkewPoly):
        return x
    if isinstance(x, (Quaternion, int)) or hasattr(x, "denominator"):
        return SkewPoly([x])
    return None


def rho(alpha: QuaternionLike) -> SkewPoly:
    """The linear polynomial ``z - alpha``."""
    return SkewPoly([-Quaternion.coerce(alpha), 1])


def backward_shift(f: SkewPoly, j: int = 1) -> SkewPoly:
    """``R_0^j f``: drop the ``j`` lowest coefficients and shift down."""
    return SkewPoly._raw(f.coeffs[j:])


# -- division ---------------------------------------------------------------

def _require_monic(p: SkewPoly):
    if not p.is_monic():
        raise NotMonic(f"divisor {p} is not monic")


def left_divide(f: SkewPoly, p: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """``(g, b)`` with ``f = p g + b`` and ``deg b < deg p``."""
    _require_monic(p)
    n = p.degree
    rem = list(f.coeffs)
    quot = [ZERO] * max(0, len(rem) - n)
    pc = p.coeffs
    for m in range(len(rem) - 1, n - 1, -1):
        c = rem[m]
        if c.is_zero():
            continue
        s = m - n
        quot[s] = c
        for i in range(n + 1):
            rem[s + i] = rem[s + i] - pc[i] * c
    return SkewPoly._raw(quot), SkewPoly._raw(rem[:n])


def right_divide(f: SkewPoly, q: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """``(h, d)`` with ``f = h q + d`` and ``deg d < deg q``."""
    _require_monic(q)
    n = q.degree
    rem = list(f.coeffs)
    quot = [ZERO] * max(0, len(rem) - n)
    qc = q.coeffs
    for m in range(len(rem) - 1, n - 1, -1):
        c = rem[m]
        if c.is_zero():
            continue
        s = m - n
        quot[s] = c
        for i in range(n + 1):
            rem[s + i] = rem[s + i] - c * qc[i]
    return SkewPoly._raw(quot), SkewPoly._raw(rem[:n])


# -- evaluations ------------------------------------------------------------

def eval_scalar(f: SkewPoly, alpha: QuaternionLike, side=LEFT) -> Quaternion:
    """Left: ``sum alpha^j f_j``.  Right: ``sum f_j alpha^j``."""
    side = _side(side)
    a = Quaternion.coerce(alpha)._t
    r = _kb.ZERO
    mul, add = _kb.qmul, _kb.qadd
    for c in reversed(f.coeffs):
        r = add(mul(a, r) if side == LEFT else mul(r, a), c._t)
    return Quaternion._wrap(r)


def eval_matrix(f: SkewPoly, A: Matrix, side=LEFT) -> Matrix:
    """Left: ``sum A^j f_j``.  Right: ``sum f_j A^j``."""
    side = _side(side)
    if not A.is_square():
        raise DimensionError("matrix evaluation needs a square matrix")
    n = A.rows
    eye = Matrix.identity(n)
    M = Matrix.zeros(n, n)
    for c in reversed(f.coeffs):
        M = (A @ M if side == LEFT else M @ A) + eye.scale_left(c)
    return M


def _check_tangential(vec: Matrix, A: Matrix, side: str):
    if not A.is_square():
        raise DimensionError("evaluation needs a square matrix")
    if side == LEFT and vec.shape != (A.rows, 1):
        raise DimensionError(f"left tangential evaluation needs a {A.rows}x1 column")
    if side == RIGHT and vec.shape != (1, A.rows):
        raise DimensionError(f"right tangential evaluation needs a 1x{A.rows} row")


def eval_tangential(vec: Matrix, f: SkewPoly, A: Matrix, side=LEFT) -> Matrix:
    """Left: ``(v f)(A) = sum A^j v f_j``.  Right: ``(f u)(A) = sum f_j u A^j``."""
    side = _side(side)
    _check_tangential(vec, A, side)
    w = Matrix.zeros(*vec.shape)
    for c in reversed(f.coeffs):
        if side == LEFT:
            w = A @ w + vec.scale_right(c)
        else:
            w = w @ A + vec.scale_left(c)
    return w


# -- polynomials with matrix coefficients ------------------------------------

class MatrixPoly:
    """``sum_k M_k z^k`` with constant matrices ``M_k`` of one shape.

    Used for vector polynomials, for the pencil ``z I - A`` and for the
    power rows ``[1 z ... z^{n-1}]`` that turn coefficient vectors into
    polynomials.
    """

    __slots__ = ("shape", "_m")

    def __init__(self, coeffs: Sequence[Matrix], shape: Optional[tuple[int, int]] = None):
        cs = list(coeffs)
        if shape is None:
            if not cs:
                raise ValueError("shape required for an empty matrix polynomial")
            shape = cs[0].shape
        if any(c.shape != shape for c in cs):
            raise DimensionError("matrix polynomial coefficients differ in shape")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.shape = tuple(shape)
        self._m = tuple(cs)

    @classmethod
    def constant(cls, M: Matrix) -> "MatrixPoly":
        return cls([M], M.shape)

    @classmethod
    def pencil(cls, A: Matrix) -> "MatrixPoly":
        """``z I - A``."""
        return cls([-A, Matrix.identity(A.rows)], A.shape)

    @classmethod
    def from_poly(cls, f: SkewPoly) -> "MatrixPoly":
        return cls([Matrix._raw(1, 1, [c]) for c in f.coeffs], (1, 1))

    @property
    def coeffs(self) -> tuple[Matrix, ...]:
        return self._m

    @property
    def degree(self) -> int:
        return len(self._m) - 1

    def coeff(self, k: int) -> Matrix:
        if 0 <= k < len(self._m):
            return self._m[k]
        return Matrix.zeros(*self.shape)

    def entry(self, i: int, j: int) -> SkewPoly:
        return SkewPoly._raw(M[i, j] for M in self._m)

    def entries(self) -> list[list[SkewPoly]]:
        return [[self.entry(i, j) for j in range(self.shape[1])] for i in range(self.shape[0])]

    def to_poly(self) -> SkewPoly:
        if self.shape != (1, 1):
            raise DimensionError(f"cannot view a {self.shape} matrix polynomial as a polynomial")
        return self.entry(0, 0)

    def __add__(self, other: "MatrixPoly") -> "MatrixPoly":
        if self.shape != other.shape:
            raise DimensionError("matrix polynomial shape mismatch")
        n = max(len(self._m), len(other._m))
        return MatrixPoly([self.coeff(k) + other.coeff(k) for k in range(n)], self.shape)

    def __sub__(self, other: "MatrixPoly") -> "MatrixPoly":
        if self.shape != other.shape:
            raise DimensionError("matrix polynomial shape mismatch")
        n = max(len(self._m), len(other._m))
        return MatrixPoly([self.coeff(k) - other.coeff(k) for k in range(n)], self.shape)

    def __matmul__(self, other) -> "MatrixPoly":
        if isinstance(other, Matrix):
            other = MatrixPoly.constant(other)
        elif isinstance(other, SkewPoly):
            other = MatrixPoly.from_poly(other)
        if self.shape[1] != other.shape[0]:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        shape = (self.shape[0], other.shape[1])
        if not self._m or not other._m:
            return MatrixPoly([], shape)
        out = []
        for s in range(len(self._m) + len(other._m) - 1):
            acc = Matrix.zeros(*shape)
            for i in range(max(0, s - len(other._m) + 1), min(s, len(self._m) - 1) + 1):
                acc = acc + self._m[i] @ other._m[s - i]
            out.append(acc)
        return MatrixPoly(out, shape)

    def __rmatmul__(self, other) -> "MatrixPoly":
        if isinstance(other, Matrix):
            return MatrixPoly.constant(other) @ self
        if isinstance(other, SkewPoly):
            return MatrixPoly.from_poly(other) @ self
        return NotImplemented

    def eval_left(self, A: Matrix) -> Matrix:
        """``sum_k A^k M_k``."""
        acc = Matrix.zeros(*self.shape)
        for M in reversed(self._m):
            acc = A @ acc + M
        return acc

    def eval_right(self, B: Matrix) -> Matrix:
        """``sum_k M_k B^k``."""
        acc = Matrix.zeros(*self.shape)
        for M in reversed(self._m):
            acc = acc @ B + M
        return acc

    def __eq__(self, other):
        if not isinstance(other, MatrixPoly):
            return NotImplemented
        return self.shape == other.shape and self._m == other._m

    def __hash__(self):
        return hash((self.shape, self._m))

    def __repr__(self):
        return f"MatrixPoly(shape={self.shape}, degree={self.degree})"


class VectorPoly(MatrixPoly):
    """A column (n x 1) or row (1 x k) of polynomials."""

    __slots__ = ()

    def __init__(self, coeffs: Sequence[Matrix], shape: Optional[tuple[int, int]] = None):
        super().__init__(coeffs, shape)
        if self.shape[0] != 1 and self.shape[1] != 1:
            raise DimensionError("vector polynomial must be a row or a column")

    @property
    def orientation(self) -> str:
        return "column" if self.shape[1] == 1 else "row"

    def polys(self) -> list[SkewPoly]:
        if self.orientation == "column":
            return [self.entry(i, 0) for i in range(self.shape[0])]
        return [self.entry(0, j) for j in range(self.shape[1])]


def powers_row(n: int) -> MatrixPoly:
    """``[1 z ... z^{n-1}]`` as a 1 x n matrix polynomial."""
    return MatrixPoly([Matrix.unit(n, k, "row") for k in range(n)], (1, n))


def powers_column(k: int) -> MatrixPoly:
    """``[1 z ... z^{k-1}]^T`` as a k x 1 matrix polynomial."""
    return MatrixPoly([Matrix.unit(k, j, "column") for j in range(k)], (k, 1))


def poly_from_column(col: Matrix) -> SkewPoly:
    """``[1 z ... z^{n-1}] col = sum_a z^a col_a``."""
    if col.cols != 1:
        raise DimensionError("expected a column")
    return SkewPoly._raw(col.entries())


def poly_from_row(row: Matrix) -> SkewPoly:
    """``row [1 z ... z^{k-1}]^T = sum_b row_b z^b``."""
    if row.rows != 1:
        raise DimensionError("expected a row")
    return SkewPoly._raw(row.entries())


def contract(M: Matrix) -> SkewPoly:
    """``[1 .. z^{n-1}] M [1 .. z^{k-1}]^T = sum_{a,b} M_{ab} z^{a+b}``."""
    out = [ZERO] * (M.rows + M.cols - 1) if M.rows and M.cols else []
    for a in range(M.rows):
        for b in range(M.cols):
            out[a + b] = out[a + b] + M[a, b]
    return SkewPoly._raw(out)


# -- quotient operators and two-sided evaluation ----------------------------

def quotient_operator(vec: Matrix, f: SkewPoly, A: Matrix, side=LEFT) -> VectorPoly:
    """``L_A(v f)`` (left) or ``R_A(f u)`` (right).

    Left: ``v f = (z I - A) L_A(v f) + (v f)(A)``.
    Right: ``f u = R_A(f u) (z I - A) + (f u)(A)``.
    """
    side = _side(side)
    _check_tangential(vec, A, side)
    N = f.degree
    if N < 1:
        return VectorPoly([], vec.shape)
    G = [None] * N
    if side == LEFT:
        G[N - 1] = vec.scale_right(f[N])
        for k in range(N - 1, 0, -1):
            G[k - 1] = A @ G[k] + vec.scale_right(f[k])
    else:
        G[N - 1] = vec.scale_left(f[N])
        for k in range(N - 1, 0, -1):
            G[k - 1] = G[k] @ A + vec.scale_left(f[k])
    return VectorPoly(G, vec.shape)


def _check_two_sided(v, u, A, B):
    if not A.is_square() or not B.is_square():
        raise DimensionError("two-sided evaluation needs square A and B")
    if v.shape != (A.rows, 1) or u.shape != (1, B.rows):
        raise DimensionError("v must be n x 1 and u must be 1 x k")


def two_sided_eval(v: Matrix, f: SkewPoly, u: Matrix, A: Matrix, B: Matrix,
                   route: str = "direct") -> Matrix:
    """``sum_{i+j <= deg f - 1} A^i v f_{i+j+1} u B^j`` (an n x k matrix).

    ``route`` selects the computation: ``"direct"`` (the double sum),
    ``"left"`` (``L_A(v f) u`` evaluated on the right at ``B``) or
    ``"right"`` (``v R_B(f u)`` evaluated on the left at ``A``).
    """
    _check_two_sided(v, u, A, B)
    n, k = A.rows, B.rows
    N = f.degree
    if route == "left":
        G = quotient_operator(v, f, A, LEFT)
        return MatrixPoly([g @ u for g in G.coeffs], (n, k)).eval_right(B)
    if route == "right":
        H = quotient_operator(u, f, B, RIGHT)
        return MatrixPoly([v @ h for h in H.coeffs], (n, k)).eval_left(A)
    if route != "direct":
        raise ValueError(f"unknown route {route!r}")
    out = Matrix.zeros(n, k)
    if N < 1:
        return out
    urows = [u]
    for _ in range(N - 1):
        urows.append(urows[-1] @ B)
    Av = v
    for i in range(N):
        row = Matrix.zeros(1, k)
        for j in range(N - i):
            row = row + urows[j].scale_left(f[i + j + 1])
        out = out + Av @ row
        Av = A @ Av
    return out


# -- companion matrices -----------------------------------------------------

def companion(p: SkewPoly, side=LEFT) -> Matrix:
    """Left companion: ones on the subdiagonal, ``-p_0 .. -p_{n-1}`` in the last column.

    The right companion is its transpose.
    """
    side = _side(side)
    _require_monic(p)
    n = p.degree
    if n < 1:
        raise DimensionError("companion matrix needs degree >= 1")
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -p[i]
    C = Matrix(rows)
    return C if side == LEFT else C.transpose()


def block_companion(ps: Sequence[SkewPoly], side=LEFT) -> Matrix:
    return Matrix.block_diag([companion(p, side) for p in ps])


# -- text format --------------------------------------------------------------
#   "z^3 + (1+2i)z + 3/2": terms from the top degree down; multi-term
#   coefficients are parenthesised, a negative single-term coefficient is
#   written with " - ".

def _coeff_terms(q: Quaternion) -> int:
    return sum(1 for x in q.components() if x != 0)


def format_poly(f: SkewPoly) -> str:
    if f.degree <= 0:
        return str(f[0]) if f.degree == 0 else "0"
    parts: list[tuple[str, str]] = []
    for m in range(f.degree, -1, -1):
        c = f[m]
        if c.is_zero():
            continue
        zpart = "" if m == 0 else ("z" if m == 1 else f"z^{m}")
        if _coeff_terms(c) > 1:
            sign, body = "+", f"({c})"
        else:
            s = str(c)
            sign, mag = ("-", s[1:]) if s.startswith("-") else ("+", s)
            body = mag
        if zpart and body == "1":
            body = ""
        parts.append((sign, body + zpart))
    out = []
    for idx, (sign, body) in enumerate(parts):
        if idx == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_ZPOW = re.compile(r"z(?:\^(\d+))?$")


def parse_poly(text: str) -> SkewPoly:
    """Inverse of ``format_poly``; also accepts any spacing."""
    if not isinstance(text, str):
        raise ParseError(f"polynomial must be a string, got {type(text).__name__}")
    s = "".join(text.split())
    if not s:
        raise ParseError("empty polynomial", text, 0)
    terms = []
    depth = 0
    start = 0
    for pos, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", s, pos)
        elif ch in "+-" and depth == 0 and pos > start and s[pos - 1] not in "+-":
            terms.append((start, s[start:pos]))
            start = pos
    if depth:
        raise ParseError("unbalanced '('", s, len(s))
    terms.append((start, s[start:]))
    coeffs: dict[int, Quaternion] = {}
    for pos, term in terms:
        deg, c = _parse_term(term, s, pos)
        coeffs[deg] = coeffs.get(deg, ZERO) + c
    top = max(coeffs) if coeffs else -1
    return SkewPoly([coeffs.get(m, ZERO) for m in range(top + 1)])


def _parse_term(term: str, text: str, pos: int) -> tuple[int, Quaternion]:
    sign = 1
    body = term
    if body[:1] in "+-":
        sign = -1 if body[0] == "-" else 1
        body = body[1:]
    if not body:
        raise ParseError("empty term", text, pos)
    zi = body.find("z")
    if zi == -1:
        coeff_s, zpart = body, ""
    else:
        coeff_s, zpart = body[:zi], body[zi:]
        m = _ZPOW.match(zpart)
        if not m:
            raise ParseError(f"bad power in term {term!r}", text, pos + zi)
    deg = 0
    if zpart:
        deg = int(_ZPOW.match(zpart).group(1) or 1)
    if coeff_s.startswith("(") and coeff_s.endswith(")"):
        inner = coeff_s[1:-1]
        try:
            c = parse_quaternion(inner)
        except ParseError as exc:
            raise ParseError(f"bad coefficient {inner!r}: {exc}", text, pos) from None
    elif coeff_s == "":
        if not zpart:
            raise ParseError("empty term", text, pos)
        c = ONE
    else:
        if "(" in coeff_s or ")" in coeff_s:
            raise ParseError(f"bad coefficient {coeff_s!r}", text, pos)
        try:
            c = parse_quaternion(coeff_s)
        except ParseError as exc:
            raise ParseError(f"bad coefficient {coeff_s!r}: {exc}", text, pos) from None
    return deg, (-c if sign < 0 else c)


def verify(condition: bool, message: str):
    if not condition:
        raise VerificationError(message)
