"""Command-line front end.

Exit codes: 0 success, 1 well-posed problem without a solution (reason on
stdout), 2 malformed input (diagnostic on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Optional

from . import interp, pairs, poly
from .errors import (DimensionError, NoSolution, NotMonic, ParseError,
                     SkewInterpError)
from .linalg import Matrix, format_matrix
from .poly import SkewPoly, format_poly
from .textio import (column_from_json, matrix_from_json, poly_from_json,
                     quaternion_from_json, row_from_json, to_json)


class InputError(Exception):
    """Malformed problem document."""


def _get(doc: dict, key: str):
    if not isinstance(doc, dict):
        raise InputError("problem document must be a JSON object")
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    return doc[key]


class Result:
    def __init__(self, text: str, data: dict):
        self.text = text
        self.data = data


def _lines(label: str, items, fmt) -> list[str]:
    if not items:
        return [f"{label}: none"]
    return [f"{label}:"] + [f"  {fmt(x)}" for x in items]


def _pair(doc: dict):
    if "A" in doc and "v" in doc:
        return pairs.InputPair(matrix_from_json(doc["A"]), column_from_json(doc["v"]))
    if "u" in doc and "B" in doc:
        return pairs.OutputPair(row_from_json(doc["u"]), matrix_from_json(doc["B"]))
    raise InputError("expected an input pair {A, v} or an output pair {u, B}")


def _poly_list(doc) -> list[SkewPoly]:
    items = doc["polys"] if isinstance(doc, dict) and "polys" in doc else doc
    if not isinstance(items, list) or not items:
        raise InputError("expected a nonempty array of polynomials")
    return [poly_from_json(x) for x in items]


# -- commands ------------------------------------------------------------------

def cmd_eval(doc, args) -> Result:
    f = poly_from_json(_get(doc, "poly"))
    side = args.side
    if "at" in doc:
        val = poly.eval_scalar(f, quaternion_from_json(doc["at"]), side)
        return Result(str(val), {"value": to_json(val)})
    if "matrix" in doc:
        val = poly.eval_matrix(f, matrix_from_json(doc["matrix"]), side)
    elif all(k in doc for k in ("A", "v", "u", "B")):
        val = poly.two_sided_eval(column_from_json(doc["v"]), f, row_from_json(doc["u"]),
                                  matrix_from_json(doc["A"]), matrix_from_json(doc["B"]))
    elif "A" in doc and "v" in doc:
        val = poly.eval_tangential(column_from_json(doc["v"]), f, matrix_from_json(doc["A"]), "left")
    elif "u" in doc and "B" in doc:
        val = poly.eval_tangential(row_from_json(doc["u"]), f, matrix_from_json(doc["B"]), "right")
    else:
        raise InputError("eval needs 'at', 'matrix', {A, v}, {u, B} or all four")
    return Result(format_matrix(val), {"value": to_json(val)})


def cmd_divide(doc, args) -> Result:
    f = poly_from_json(_get(doc, "f"))
    p = poly_from_json(_get(doc, "p"))
    div = poly.left_divide if args.side == "left" else poly.right_divide
    q, r = div(f, p)
    return Result(f"quotient: {q}\nremainder: {r}", {"quotient": to_json(q), "remainder": to_json(r)})


def cmd_minpoly(doc, args) -> Result:
    if isinstance(doc, dict) and "A" in doc and "v" not in doc:
        A = matrix_from_json(doc["A"])
        if doc.get("central", False):
            mu = pairs.central_minpoly(A)
        else:
            left, right = pairs.matrix_minpolys(A)
            mu = left if args.side == "left" else right
        return Result(str(mu), {"poly": to_json(mu)})
    pr = _pair(doc)
    rep = pairs.minpoly_pair(pr)
    word = "controllable" if isinstance(pr, pairs.InputPair) else "observable"
    flag = "true" if rep.controllable_or_observable else "false"
    return Result(f"{rep.poly}\n{word}: {flag}",
                  {"poly": to_json(rep.poly), word: rep.controllable_or_observable})


def cmd_lrcm(doc, args) -> Result:
    m = pairs.lrcm(_poly_list(doc))
    return Result(str(m), {"poly": to_json(m)})


def cmd_llcm(doc, args) -> Result:
    m = pairs.llcm(_poly_list(doc))
    return Result(str(m), {"poly": to_json(m)})


def cmd_canonical(doc, args) -> Result:
    canon, T = pairs.canonical_form(_pair(doc))
    if isinstance(canon, pairs.InputPair):
        M, vec, key = canon.A, canon.v, "v"
    else:
        M, vec, key = canon.B, canon.u, "u"
    text = f"companion: {format_matrix(M)}\n{key}: {format_matrix(vec)}\nT: {format_matrix(T)}"
    return Result(text, {"companion": to_json(M), key: to_json(vec), "T": to_json(T)})


def cmd_similar_pairs(doc, args) -> Result:
    T = pairs.pairs_similar(_pair(_get(doc, "first")), _pair(_get(doc, "second")))
    return Result(f"T: {format_matrix(T)}", {"T": to_json(T)})


def cmd_similar_polys(doc, args) -> Result:
    f = poly_from_json(_get(doc, "f"))
    g = poly_from_json(_get(doc, "g"))
    res = pairs.polys_similar(f, g, trials=args.trials, seed=args.seed)
    if res.verdict == "trivially_not":
        raise NoSolution("polynomials are not similar")
    if res.verdict == "no_witness_found":
        raise NoSolution(f"no similarity witness found after {args.trials} random trials (inconclusive)")
    return Result(f"similar\nh: {res.h}\nh2: {res.h2}", {"h": to_json(res.h), "h2": to_json(res.h2)})


def cmd_pindep(doc, args) -> Result:
    nodes = doc["nodes"] if isinstance(doc, dict) and "nodes" in doc else doc
    if not isinstance(nodes, list) or not nodes:
        raise InputError("expected a nonempty array of nodes")
    ok = pairs.p_independent([quaternion_from_json(x) for x in nodes], args.side)
    return Result("true" if ok else "false", {"p_independent": ok})


def cmd_sylvester(doc, args) -> Result:
    res = interp.solve_sylvester(matrix_from_json(_get(doc, "A")), matrix_from_json(_get(doc, "B")),
                                 matrix_from_json(_get(doc, "C")))
    if res.particular is None:
        raise NoSolution("Sylvester equation is inconsistent")
    text = "\n".join([f"particular: {format_matrix(res.particular)}"]
                     + _lines("nullspace", res.nullspace, format_matrix))
    return Result(text, {"particular": to_json(res.particular), "nullspace": to_json(list(res.nullspace))})


def _family_result(fam: interp.SolutionFamily) -> Result:
    lines = [f"particular: {fam.particular}"]
    data: dict[str, Any] = {"particular": to_json(fam.particular)}
    if fam.left_modulus is not None:
        lines.append(f"modulus: {fam.left_modulus}")
        data["modulus"] = to_json(fam.left_modulus)
    elif fam.right_modulus is not None:
        lines.append(f"modulus: {fam.right_modulus}")
        data["modulus"] = to_json(fam.right_modulus)
    if fam.sylvester_nullspace is not None:
        lines += _lines("directions", fam.directions, format_poly)
        data["directions"] = to_json(list(fam.directions))
    if fam.free_constant:
        lines.append("plus: arbitrary constant")
        data["free_constant"] = True
    return Result("\n".join(lines), data)


def cmd_solve_left(doc, args) -> Result:
    A = matrix_from_json(_get(doc, "A"))
    if "target" in doc:
        return _family_result(interp.solve_matrix_target(A, matrix_from_json(doc["target"])))
    return _family_result(interp.solve_left(A, column_from_json(_get(doc, "v")),
                                            column_from_json(_get(doc, "b"))))


def cmd_solve_right(doc, args) -> Result:
    return _family_result(interp.solve_right(row_from_json(_get(doc, "u")), matrix_from_json(_get(doc, "B")),
                                             row_from_json(_get(doc, "d"))))


def _two_sided(doc, need_targets: bool, need_S: bool) -> interp.TwoSidedData:
    left = _get(doc, "left")
    right = _get(doc, "right")
    b = column_from_json(left["b"]) if "b" in left else None
    d = row_from_json(right["d"]) if "d" in right else None
    S = matrix_from_json(doc["S"]) if "S" in doc else None
    if need_targets and (b is None or d is None):
        raise InputError("targets 'b' (left) and 'd' (right) are required")
    if need_S and S is None:
        raise InputError("field 'S' is required")
    return interp.TwoSidedData(matrix_from_json(_get(left, "A")), column_from_json(_get(left, "v")),
                               row_from_json(_get(right, "u")), matrix_from_json(_get(right, "B")),
                               b=b, d=d, S=S)


def cmd_solve_two_sided(doc, args) -> Result:
    left = _get(doc, "left")
    right = _get(doc, "right")
    if "S" in doc and "b" not in left and "d" not in right:
        data = _two_sided(doc, False, True)
        fam = interp.solve_two_sided_only(data.A, data.v, data.u, data.B, data.S)
    else:
        fam = interp.solve_tsp(_two_sided(doc, True, False))
    return _family_result(fam)


def cmd_solve_atsp(doc, args) -> Result:
    f = interp.solve_atsp(_two_sided(doc, True, True))
    return Result(str(f), {"poly": to_json(f)})


def cmd_lagrange(doc, args) -> Result:
    def nodes(key):
        raw = doc.get(key, []) if isinstance(doc, dict) else None
        if not isinstance(raw, list) or any(not isinstance(x, list) or len(x) != 2 for x in raw):
            raise InputError(f"{key!r} must be an array of [node, value] pairs")
        return [(quaternion_from_json(a), quaternion_from_json(b)) for a, b in raw]
    fam = interp.lagrange_two_sided(nodes("left_nodes"), nodes("right_nodes"))
    return _family_result(fam)


def cmd_quasi_ideal(doc, args) -> Result:
    basis = interp.quasi_ideal_basis(poly_from_json(_get(doc, "p")), poly_from_json(_get(doc, "q")))
    lines = _lines("basis", basis, lambda xf: f"{format_matrix(xf[0])} -> {xf[1]}")
    data = {"basis": [{"X": to_json(X), "f": to_json(f)} for X, f in basis]}
    return Result("\n".join(lines), data)


COMMANDS: dict[str, Callable] = {
    "eval": cmd_eval,
    "divide": cmd_divide,
    "minpoly": cmd_minpoly,
    "lrcm": cmd_lrcm,
    "llcm": cmd_llcm,
    "canonical": cmd_canonical,
    "similar-pairs": cmd_similar_pairs,
    "similar-polys": cmd_similar_polys,
    "pindep": cmd_pindep,
    "sylvester": cmd_sylvester,
    "solve-left": cmd_solve_left,
    "solve-right": cmd_solve_right,
    "solve-two-sided": cmd_solve_two_sided,
    "solve-atsp": cmd_solve_atsp,
    "lagrange": cmd_lagrange,
    "quasi-ideal": cmd_quasi_ideal,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewinterp",
                                     description="Exact polynomial interpolation over the rational quaternions.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("input", nargs="?", default="-", help="problem file (JSON); '-' reads stdin")
    parser.add_argument("--output", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--side", choices=("left", "right"), default="left")
    return parser


def run(argv: Optional[list[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.input == "-":
            raw = stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                raw = fh.read()
        doc = json.loads(raw)
        result = COMMANDS[args.command](doc, args)
    except NoSolution as exc:
        if args.output == "json":
            stdout.write(json.dumps({"status": "no_solution", "reason": exc.reason}) + "\n")
        else:
            stdout.write(f"no solution: {exc.reason}\n")
        return 1
    except (OSError, json.JSONDecodeError, InputError, ParseError, DimensionError, NotMonic,
            KeyError, TypeError, ValueError, SkewInterpError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    if args.output == "json":
        stdout.write(json.dumps({"status": "ok", **result.data}) + "\n")
    else:
        stdout.write(result.text + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
