"""Exact polynomial interpolation over the rational quaternions."""
from ._backend import BACKEND, COMPILED
from .errors import (DimensionError, NodesNotPIndependent, NoSolution, NotControllable,
                     NotMonic, NotObservable, NotSimilar, ParseError, Singular,
                     SkewInterpError, VerificationError)
from .interp import (SolutionFamily, TwoSidedData, lagrange_two_sided, quasi_ideal_basis,
                     solve_atsp, solve_left, solve_matrix_target, solve_right, solve_sylvester,
                     solve_tsp, solve_two_sided_only, sylvester_closed_form)
from .linalg import Matrix, gauss_solve, invert_matrix, rank, solve_center_linear
from .pairs import (InputPair, OutputPair, canonical_form, central_minpoly, find_cyclic_vector,
                    llcm, lrcm, matrix_minpolys, minpoly_pair, p_independent, pairs_similar,
                    polys_similar)
from .poly import (SkewPoly, companion, eval_matrix, eval_scalar, eval_tangential, left_divide,
                   right_divide, two_sided_eval)
from .scalar import I, J, K, ONE, ZERO, Quaternion

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
