"""
Exact linear algebra over the rationals.

Matrices are ``sympy.Matrix`` objects with Rational entries; entries never
turn into floats.
"""
import logging
from fractions import Fraction

import sympy

logger = logging.getLogger(__name__)


def _rational(x):
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def fraction_matrix(rows, ncols=None):
    """Rational matrix from nested sequences (an empty list gives a 0 x ncols matrix)."""
    if not rows:
        return sympy.zeros(0, ncols or 0)
    return sympy.Matrix([[_rational(x) for x in row] for row in rows])


def row_reduce(matrix):
    """
    Reduced row echelon form.

    Parameters:
    -----------
    matrix : sympy.Matrix
        Rational matrix; not modified

    Returns:
    --------
    tuple
        (reduced matrix, list of pivot columns)
    """
    reduced, pivots = matrix.rref()
    return reduced, list(pivots)


def rank(matrix):
    if not matrix.rows or not matrix.cols:
        return 0
    return matrix.rank()


def nullity(matrix):
    if not matrix.rows:
        return matrix.cols
    return len(matrix.nullspace())


def pivot_rows(matrix):
    """
    Indices of a maximal set of linearly independent rows, the first
    independent ones in row order.
    """
    if not matrix.rows or not matrix.cols:
        return []
    return list(matrix.T.rref()[1])


def inverse_matrix(matrix):
    """
    Inverse of a square rational matrix.

    Raises:
    -------
    ZeroDivisionError
        If the matrix is singular
    """
    try:
        return matrix.inv()
    except ValueError as exc:
        raise ZeroDivisionError("matrix is not invertible") from exc
