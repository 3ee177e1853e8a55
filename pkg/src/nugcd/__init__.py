"""Numerical GCD of univariate polynomials with inexact coefficients."""

from .poly import (NEG_INF_DEGREE, Polynomial, PolynomialPair, evaluate,
                   format_coefficients, multiply, norm, pair_distance,
                   parse_coefficients)
from .sylvester import SylvesterQrState, conv_matrix, qr_downdate, qr_init, sylvester
from .subspace import SingularPair, extract_cofactors, smallest_singular
from .refine import (DegenerateCandidate, GcdSystem, GcdTriplet, assemble_jacobian,
                     condition_estimate, gauss_newton, initial_gcd)
from .driver import GcdConfig, GcdResult, VerificationReport, uvgcd, verify_result

__version__ = "0.1.0"
