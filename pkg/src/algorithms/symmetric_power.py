import logging
from math import comb

from src.models.representation import as_matrix, matrix_inverse


def _binomial_power(first, second, exponent):
    """Coefficients of (first*z1 + second*z2)^exponent, indexed by the power of z2."""
    return [first ** (exponent - i) * second ** i * comb(exponent, i) for i in range(exponent + 1)]


def symmetric_power_matrix(matrix, n):
    """
    Matrix of P acting on homogeneous polynomials of degree n - 1 by f(z) -> f(P^-1 z).

    The basis is z1^(n-1), z1^(n-2) z2, ..., z2^(n-1); column k holds the image of the k-th
    basis polynomial.

    Args:
        matrix (ndarray): A 2 x 2 matrix of determinant 1.
        n (int): Target dimension, at least 1.

    Returns:
        ndarray: The n x n matrix.
    """
    if n < 1:
        raise ValueError(f"Symmetric power dimension must be at least 1, got {n}")
    if matrix.shape != (2, 2):
        raise ValueError("symmetric_power needs a 2-dimensional representation")
    field = matrix[0, 0].field
    inverse = matrix_inverse(matrix)
    a, b = inverse[0, 0], inverse[0, 1]
    c, d = inverse[1, 0], inverse[1, 1]
    columns = []
    for k in range(n):
        left = _binomial_power(a, b, n - 1 - k)
        right = _binomial_power(c, d, k)
        column = [field.zero()] * n
        for i, u in enumerate(left):
            if not u:
                continue
            for j, v in enumerate(right):
                if v:
                    column[i + j] = column[i + j] + u * v
        columns.append(column)
    return as_matrix([[columns[k][m] for k in range(n)] for m in range(n)], field)


def symmetric_power(representation, n):
    """
    Lifts a 2-dimensional representation to SL(n) through the n-dimensional irreducible representation of SL(2).

    Args:
        representation (Representation): A representation of dimension 2.
        n (int): Target dimension.

    Returns:
        Representation: The lifted representation with the same abelianization.
    """
    if representation.dim != 2:
        raise ValueError(f"symmetric_power needs a 2-dimensional representation, got dimension {representation.dim}")
    if n < 1:
        raise ValueError(f"Symmetric power dimension must be at least 1, got {n}")
    logging.debug(f"Lifting {representation} to dimension {n}")
    return representation.map_images(lambda m: symmetric_power_matrix(m, n))
