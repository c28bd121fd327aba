"""Text and JSON forms of quaternions, polynomials and matrices.

JSON carries every quaternion as a string literal; JSON numbers are
rejected so that no value can pass through a float.
"""
from __future__ import annotations

from typing import Any

from .errors import ParseError
from .linalg import Matrix, format_matrix
from .poly import SkewPoly, format_poly, parse_poly
from .scalar import Quaternion, format_quaternion, parse_quaternion

__all__ = [
    "format_quaternion", "parse_quaternion", "format_poly", "parse_poly",
    "format_matrix", "parse_matrix", "quaternion_from_json", "poly_from_json",
    "matrix_from_json", "column_from_json", "row_from_json", "to_json",
]


def parse_matrix(text: str) -> Matrix:
    """Parse ``"[[1, i], [1, j]]"`` (entries are quaternion literals)."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("matrix must be a bracketed list of rows", text, 0)
    inner = s[1:-1].strip()
    if not inner:
        return Matrix([])
    rows = []
    pos = 0
    while pos < len(inner):
        if inner[pos] in " ,":
            pos += 1
            continue
        if inner[pos] != "[":
            raise ParseError("expected '['", text, pos + 1)
        end = inner.find("]", pos)
        if end == -1:
            raise ParseError("unterminated row", text, pos + 1)
        body = inner[pos + 1:end]
        rows.append([parse_quaternion(x) for x in body.split(",")] if body.strip() else [])
        pos = end + 1
    return Matrix(rows)


def quaternion_from_json(x: Any) -> Quaternion:
    if not isinstance(x, str):
        raise ParseError(f"quaternion must be a JSON string, got {type(x).__name__}: {x!r}")
    return parse_quaternion(x)


def poly_from_json(x: Any) -> SkewPoly:
    """A display string or an array of coefficient literals (index = degree)."""
    if isinstance(x, str):
        return parse_poly(x)
    if isinstance(x, list):
        return SkewPoly([quaternion_from_json(c) for c in x])
    raise ParseError(f"polynomial must be a string or an array, got {type(x).__name__}")


def matrix_from_json(x: Any) -> Matrix:
    if isinstance(x, str):
        return parse_matrix(x)
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise ParseError("matrix must be an array of arrays")
    widths = {len(r) for r in x}
    if len(widths) > 1:
        raise ParseError("matrix rows differ in length")
    return Matrix([[quaternion_from_json(c) for c in r] for r in x])


def column_from_json(x: Any) -> Matrix:
    if not isinstance(x, list):
        raise ParseError("vector must be an array")
    return Matrix.column([quaternion_from_json(c) for c in x])


def row_from_json(x: Any) -> Matrix:
    if not isinstance(x, list):
        raise ParseError("vector must be an array")
    return Matrix.row([quaternion_from_json(c) for c in x])


def to_json(value: Any) -> Any:
    """Quaternions to strings, polynomials to coefficient arrays, matrices to nested arrays."""
    if isinstance(value, Quaternion):
        return str(value)
    if isinstance(value, SkewPoly):
        return [str(c) for c in value.coeffs]
    if isinstance(value, Matrix):
        return [[str(c) for c in row] for row in value.tolist()]
    if isinstance(value, dict):
        return {k: to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    return value
