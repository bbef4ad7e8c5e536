"""Exact computation of bases of solutions of linear Mahler equations."""

from .errors import (DimensionOverflow, InputError, MahlerError, ParseError,
                     RamificationInsufficient, UnsupportedCharacteristic, UnsupportedExtension)
from .fields import QQ, Extension, FpFunctionField, adjoin_root, find_roots
from .parse import parse_expression
from .series import LaurentPoly, RationalFunction, Series
from .newton import (MahlerEquation, MahlerSystem, build_companion, newton_slopes,
                     ramification_index)
from .window import admissible_pair, build_Ml, check_admissible, extend_P, window_params
from .hahn import (ExpPolySeq, HahnExpression, XiTerm, coefficient_at, compute_H,
                   normalize_xi, seq_partial_sum, solve_basic, xi_phi)
from .constants import ConstElem, dunford, exp_constant, phi_const
from .solver import (BasisResult, SolutionExpression, basis_from_pair, entry_equation, solve_equation,
                     triangularize_theta, verify_basis)

__version__ = "0.1.0"

__all__ = [
    "DimensionOverflow", "InputError", "MahlerError", "ParseError", "RamificationInsufficient",
    "UnsupportedCharacteristic", "UnsupportedExtension",
    "QQ", "Extension", "FpFunctionField", "adjoin_root", "find_roots", "parse_expression",
    "LaurentPoly", "RationalFunction", "Series",
    "MahlerEquation", "MahlerSystem", "build_companion", "newton_slopes", "ramification_index",
    "admissible_pair", "build_Ml", "check_admissible", "extend_P", "window_params",
    "ExpPolySeq", "HahnExpression", "XiTerm", "coefficient_at", "compute_H", "normalize_xi",
    "seq_partial_sum", "solve_basic", "xi_phi",
    "ConstElem", "dunford", "exp_constant", "phi_const",
    "BasisResult", "SolutionExpression", "basis_from_pair", "entry_equation", "solve_equation",
    "triangularize_theta", "verify_basis",
]
