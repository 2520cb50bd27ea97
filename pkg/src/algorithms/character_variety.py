"""
SL(2) representations of torus-link groups built from trace coordinates, and the reverse map.

X always carries the eigenvalue alpha = exp(i*pi*a/p) in its (1,1) entry. The three
constructions cover the irreducible cases: X and Y generic (Case11), the degenerate
u = 0 locus where X and Y share an eigenvector (Case12), and commuting X, Y (Case21).
"""
import logging

import numpy as np

from src.models.representation import (CaseTag, CharacterPoint, MatrixTriple, as_matrix,
                                        matrix_inverse, matrix_product, matrix_trace)
from src.models.scalars import solve_quadratic

MATCH_TOLERANCE = 1e-10
RANK_TOLERANCE = 1e-8


class DegenerateCharacterError(ValueError):
    """Raised when a point lies on a locus the requested construction cannot handle."""


class ReducibleCharacterError(ValueError):
    """Raised when the irreducibility condition of a construction fails."""


def eigenvalue(field, n, k):
    """exp(i*pi*k/n) as a scalar of ``field``."""
    return field.root_of_unity(2 * n, k)


def u_condition(t_x, t_y, t_xy):
    """t_xy^2 - t_x t_y t_xy + t_x^2 + t_y^2 - 4; zero exactly when X and Y share an eigenvector."""
    return t_xy * t_xy - t_x * t_y * t_xy + t_x * t_x + t_y * t_y - 4


def trace_quadratic(t_x, t_y, t_i, t_xy, t_xi, t_yi, t_xyi):
    """Value of the Fricke-type quadratic relation between seven traces."""
    linear = t_x * t_yi + t_y * t_xi + t_i * t_xy - t_x * t_y * t_i
    constant = (t_x * t_x + t_y * t_y + t_i * t_i + t_xy * t_xy + t_xi * t_xi + t_yi * t_yi
                + t_xy * t_xi * t_yi - t_x * t_y * t_xy - t_x * t_i * t_xi - t_y * t_i * t_yi - 4)
    return t_xyi * t_xyi - linear * t_xyi + constant


def check_trace_quadratic(point, i):
    """
    Residual of the trace relation for the i-th quadruple (0-based).

    Args:
        point (CharacterPoint): The point.
        i (int): Quadruple index.

    Returns:
        Scalar: Zero (up to tolerance) exactly when the quadruple is on the variety.
    """
    t_i, t_xi, t_yi, t_xyi = point.quads[i]
    return trace_quadratic(point.t_x, point.t_y, t_i, point.t_xy, t_xi, t_yi, t_xyi)


def _close(a, b):
    field = a.field
    if field.exact:
        return a == b
    scale = max(1.0, a.magnitude(), b.magnitude())
    return (a - b).magnitude() <= MATCH_TOLERANCE * scale


def _labels(point, p, q):
    if point.a is None or point.b is None:
        raise ValueError("The point needs eigenvalue labels a and b")
    if not (0 <= point.a <= p and 0 <= point.b <= q):
        raise ValueError(f"Labels a={point.a}, b={point.b} out of range for p={p}, q={q}")
    return point.a, point.b


def _gamma_zeta(alpha, t_i, t_xi):
    gamma = (t_xi - alpha.inverse() * t_i) / (alpha - alpha.inverse())
    return gamma, t_i - gamma


def from_character_case11(p, q, point):
    """
    Reconstructs X, Y and M_i from a generic point (u != 0).

    X = diag(alpha, alpha^-1), Y = [[s, 1], [u, v]], and each M_i = [[gamma, theta/u], [theta', zeta]]
    where theta, theta' are the roots of the quadratic fixed by tr(Y M_i) and det M_i, assigned so
    that tr(X Y M_i) reproduces t_xyi.

    Args:
        p (int): Exponent of x in the torus relation.
        q (int): Exponent of y in the torus relation.
        point (CharacterPoint): Labelled point with 0 < a < p and 0 < b < q.

    Returns:
        MatrixTriple: The matrices with aux entries s, u, v, gamma, delta, epsilon, zeta, theta.
    """
    a, b = _labels(point, p, q)
    if not (0 < a < p and 0 < b < q):
        raise DegenerateCharacterError("Case 1.1 needs 0 < a < p and 0 < b < q")
    field = point.field
    alpha = eigenvalue(field, p, a)
    t_x, t_y, t_xy = point.t_x, point.t_y, point.t_xy
    if u_condition(t_x, t_y, t_xy).is_zero():
        raise DegenerateCharacterError("degenerate u=0 (Case 1.2 point)")
    s = (t_xy - alpha.inverse() * t_y) / (alpha - alpha.inverse())
    v = t_y - s
    u = s * v - 1
    X = as_matrix([[alpha, 0], [0, alpha.inverse()]], field)
    Y = as_matrix([[s, 1], [u, v]], field)
    XY = matrix_product(X, Y)

    aux = {"s": s, "u": u, "v": v, "gamma": [], "delta": [], "epsilon": [], "zeta": [], "theta": []}
    Ms = []
    for k, (t_i, t_xi, t_yi, t_xyi) in enumerate(point.quads, start=1):
        gamma, zeta = _gamma_zeta(alpha, t_i, t_xi)
        linear = t_yi - v * t_i - (s - v) * gamma
        theta1, theta2 = solve_quadratic(-linear, u * (gamma * zeta - 1))
        chosen = None
        for upper, lower in ((theta1, theta2), (theta2, theta1)):
            M = as_matrix([[gamma, upper / u], [lower, zeta]], field)
            if _close(matrix_trace(matrix_product(XY, M)), t_xyi):
                chosen = (M, upper, lower)
                break
        if chosen is None:
            raise ValueError(f"t_xy{k} matches neither root assignment")
        M, upper, lower = chosen
        Ms.append(M)
        aux["gamma"].append(gamma)
        aux["zeta"].append(zeta)
        aux["delta"].append(upper / u)
        aux["epsilon"].append(lower)
        aux["theta"].append((theta1, theta2))
    logging.debug(f"Case 1.1 triple built for p={p}, q={q}, a={a}, b={b} with {len(Ms)} meridians")
    aux.update(a=a, b=b, case=CaseTag.CASE11)
    return MatrixTriple(X, Y, Ms, aux)


def from_character_case12(p, q, sign, point):
    """
    Builds the triple on the u = 0 locus: X diagonal, Y = [[beta^sign, 1], [0, beta^-sign]].

    The gauge entry delta of M_i is (gamma*zeta - 1)/epsilon when epsilon != 0 and 0 otherwise.

    Args:
        p (int): Exponent of x.
        q (int): Exponent of y.
        sign (int): +1 or -1, the exponent of beta in Y[0][0].
        point (CharacterPoint): Labelled point with 0 < a < p and 0 < b < q.

    Returns:
        MatrixTriple: The matrices.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    a, b = _labels(point, p, q)
    if not (0 < a < p and 0 < b < q):
        raise DegenerateCharacterError("Case 1.2 needs 0 < a < p and 0 < b < q")
    field = point.field
    alpha = eigenvalue(field, p, a)
    beta = eigenvalue(field, q, b) ** sign
    expected_xy = alpha * beta + alpha.inverse() * beta.inverse()
    if not _close(point.t_xy, expected_xy):
        raise ValueError(f"t_xy does not match the triangular form for sign {sign:+d}")
    X = as_matrix([[alpha, 0], [0, alpha.inverse()]], field)
    Y = as_matrix([[beta, 1], [0, beta.inverse()]], field)
    XY = matrix_product(X, Y)

    Ms = []
    aux = {"gamma": [], "delta": [], "epsilon": [], "zeta": []}
    witnessed = False
    for k, (t_i, t_xi, t_yi, t_xyi) in enumerate(point.quads, start=1):
        gamma, zeta = _gamma_zeta(alpha, t_i, t_xi)
        epsilon = t_yi - beta * gamma - beta.inverse() * zeta
        if epsilon.is_zero():
            if not _close(gamma * zeta, field.one()):
                raise ValueError(f"No determinant-one M_{k} exists with epsilon = 0")
            epsilon = field.zero()
            delta = field.zero()
        else:
            witnessed = True
            delta = (gamma * zeta - 1) / epsilon
        M = as_matrix([[gamma, delta], [epsilon, zeta]], field)
        if not _close(matrix_trace(matrix_product(XY, M)), t_xyi):
            raise ValueError(f"t_xy{k} is not the value forced by the other coordinates")
        Ms.append(M)
        for key, value in (("gamma", gamma), ("delta", delta), ("epsilon", epsilon), ("zeta", zeta)):
            aux[key].append(value)
    if not witnessed:
        raise ReducibleCharacterError("reducible point (condition (2) fails for all i)")
    aux.update(a=a, b=b, sign=sign, case=CaseTag.CASE12)
    return MatrixTriple(X, Y, Ms, aux)


def from_character_case21(p, q, point):
    """
    Builds a triple with commuting X, Y = diag(beta^sign, beta^-sign) and one extra meridian.

    The sign is the one whose tr(XY) equals t_xy; M_1 takes delta = 1, epsilon = gamma*zeta - 1.

    Args:
        p (int): Exponent of x.
        q (int): Exponent of y.
        point (CharacterPoint): Labelled two-component point with 0 < a < p.

    Returns:
        MatrixTriple: The matrices.
    """
    a, b = _labels(point, p, q)
    if len(point.quads) != 1:
        raise ValueError("Case 2.1 is available for two-component links only")
    if not 0 < a < p:
        raise DegenerateCharacterError("Case 2.1 needs X != +-I, i.e. 0 < a < p")
    field = point.field
    alpha = eigenvalue(field, p, a)
    base = eigenvalue(field, q, b)
    for sign in (1, -1):
        beta = base ** sign
        if _close(point.t_xy, alpha * beta + alpha.inverse() * beta.inverse()):
            break
    else:
        raise ValueError("t_xy matches neither diagonal form of Y")

    t_i, t_xi, t_yi, t_xyi = point.quads[0]
    condition = t_xi * t_xi - t_xi * point.t_x * t_i + t_i * t_i + point.t_x * point.t_x - 4
    if (t_i - 2).is_zero() or (t_i + 2).is_zero() or condition.is_zero():
        raise ReducibleCharacterError("reducible point (condition (3) fails)")
    gamma, zeta = _gamma_zeta(alpha, t_i, t_xi)
    delta = field.one()
    epsilon = gamma * zeta - 1
    if not _close(t_yi, beta * gamma + beta.inverse() * zeta):
        raise ValueError("t_y1 is not the value forced by the other coordinates")
    X = as_matrix([[alpha, 0], [0, alpha.inverse()]], field)
    Y = as_matrix([[beta, 0], [0, beta.inverse()]], field)
    M = as_matrix([[gamma, delta], [epsilon, zeta]], field)
    if not _close(matrix_trace(matrix_product(matrix_product(X, Y), M)), t_xyi):
        raise ValueError("t_xy1 is not the value forced by the other coordinates")
    aux = {"gamma": [gamma], "delta": [delta], "epsilon": [epsilon], "zeta": [zeta],
           "a": a, "b": b, "sign": sign, "case": CaseTag.CASE21}
    return MatrixTriple(X, Y, [M], aux)


def _commute(A, B):
    AB = matrix_product(A, B)
    BA = matrix_product(B, A)
    return all(x == y for x, y in zip(AB.flat, BA.flat))


def extract_coordinates(triple):
    """
    Trace coordinates of a triple.

    The case tag is Case11 when the u-condition is nonzero, Case21 when X and Y commute and
    Case12 otherwise. Labels a, b are carried over from the construction when known.

    Args:
        triple (MatrixTriple): The matrices.

    Returns:
        CharacterPoint: The coordinates.
    """
    X, Y = triple.X, triple.Y
    XY = matrix_product(X, Y)
    t_x, t_y, t_xy = matrix_trace(X), matrix_trace(Y), matrix_trace(XY)
    quads = []
    for M in triple.Ms:
        quads.append((matrix_trace(M), matrix_trace(matrix_product(X, M)),
                      matrix_trace(matrix_product(Y, M)), matrix_trace(matrix_product(XY, M))))
    if not u_condition(t_x, t_y, t_xy).is_zero():
        tag = CaseTag.CASE11
    elif _commute(X, Y):
        tag = CaseTag.CASE21
    else:
        tag = CaseTag.CASE12
    return CharacterPoint(t_x, t_y, t_xy, quads, tag, triple.aux.get("a"), triple.aux.get("b"))


def _exact_rank(vectors):
    rows = [list(v) for v in vectors]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if not rows[i][col].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        for i in range(rank + 1, len(rows)):
            factor = rows[i][col] * inv
            if factor:
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def is_irreducible(matrices, tolerance=RANK_TOLERANCE):
    """
    Burnside test: the matrices generate all of M_2 exactly when no common eigenvector exists.

    The exact backend first looks for a pair with tr[A, B] != 2; otherwise the span of I, A_i
    and A_i A_j is measured (numpy rank at ``tolerance`` for numeric matrices).

    Args:
        matrices (list): 2 x 2 object arrays over one field.
        tolerance (float): Relative singular-value cutoff for the numeric rank.

    Returns:
        bool: Whether the tuple is irreducible.
    """
    if not matrices:
        return False
    field = matrices[0][0, 0].field
    if field.exact:
        for i, A in enumerate(matrices):
            for B in matrices[i + 1:]:
                commutator = matrix_product(matrix_product(A, B), matrix_product(matrix_inverse(A), matrix_inverse(B)))
                if not matrix_trace(commutator) == 2:
                    return True
    identity = as_matrix([[1, 0], [0, 1]], field)
    words = [identity] + list(matrices) + [matrix_product(A, B) for A in matrices for B in matrices]
    if field.exact:
        return _exact_rank([list(w.flat) for w in words]) == 4
    stack = np.array([[z.to_complex() for z in w.flat] for w in words], dtype=complex)
    scale = max(1.0, float(np.abs(stack).max()))
    return int(np.linalg.matrix_rank(stack, tol=tolerance * scale)) == 4
