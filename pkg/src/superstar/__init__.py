"""Exact local super-Fedosov quantization: graded polynomials, Poisson brackets,
the Moyal-Weyl-Clifford star product and friends."""
from .graded import (
    ParityError,
    Signature,
    SignatureMismatch,
    SuperPolynomial,
    TruncationPolicy,
    Variable,
    multiply,
    partial_derivative,
    substitute_linear,
    truncate,
)
from .expression import ExpressionError, format_expression, parse_expression
from .poisson import PoissonContext, poisson_bracket, super_gradient
from .quantization import StarContext, bd1_defect, classical_limit, star, star_commutator

__version__ = "0.1.0"
