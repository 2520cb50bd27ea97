import logging
import time
from dataclasses import dataclass

import numpy as np

from src.algorithms.fox import fox_derivative
from src.models.laurent import (ALL_MONOMIALS, EVEN_MONOMIALS, RationalFn, equal_up_to_unit,
                                rational_reduce)
from src.models.poly_matrix import PolyMatrix, determinant
from src.models.representation import phi_map
from src.models.word import GroupRingElement, Word

ZERO_TOLERANCE = 1e-12


@dataclass(frozen=True)
class WadaInvariant:
    """
    Twisted Alexander polynomial of a presentation and representation.

    Attributes:
        value (RationalFn): det A_j / det Phi(x_j - 1) in mu variables, unreduced.
        removed_column (int): Index j of the generator whose block column was removed.
        polynomial_flag (bool): Whether the reduced single-variable form has a unit denominator.
        backend (str): ``cyclotomic`` or ``complex``.
        reduced_in_t (RationalFn): value after t_i -> t and gcd reduction.
        reduced (RationalFn): value reduced in the mu variables (left unreduced when unsupported).
    """
    value: RationalFn
    removed_column: int
    polynomial_flag: bool
    backend: str
    reduced_in_t: RationalFn
    reduced: RationalFn


@dataclass(frozen=True)
class ComparisonReport:
    """
    Outcome of comparing the engine with a closed formula.

    Attributes:
        equal (bool): Verdict.
        unit_sign (int): Scalar part of the witness unit.
        unit_exponent (tuple): Exponent of the witness unit.
        mode (str): Unit mode used for the comparison.
        engine (RationalFn): Reduced engine output in t.
        formula (RationalFn): Reduced formula.
        invariant (WadaInvariant): Full engine result.
    """
    equal: bool
    unit_sign: int
    unit_exponent: tuple
    mode: str
    engine: RationalFn
    formula: RationalFn
    invariant: WadaInvariant

    def __bool__(self):
        return self.equal


def default_column(presentation):
    """Index of the generator named ``y`` when present, else the last generator."""
    if "y" in presentation.generator_names:
        return presentation.generator_names.index("y")
    return presentation.num_generators - 1


def _resolve_column(presentation, column):
    if column is None:
        return default_column(presentation)
    if isinstance(column, str):
        return presentation.generator_index(column)
    if not 0 <= column < presentation.num_generators:
        raise ValueError(f"Column {column} out of range for {presentation.num_generators} generators")
    return column


class TwistedAlexanderEngine:
    """
    Computes Wada's invariant from Fox derivatives pushed through abelianization and a representation.

    Args:
        presentation (Presentation): The group presentation.
        representation (Representation): A representation of the presented group.
        zero_tolerance (float, optional): Relative size below which a numeric denominator counts as zero.
    """
    def __init__(self, presentation, representation, zero_tolerance=ZERO_TOLERANCE):
        representation.check_relators(presentation)
        self.presentation = presentation
        self.representation = representation
        self.zero_tolerance = zero_tolerance

    def alexander_matrix(self):
        """
        Block matrix with block (i, j) equal to Phi(d r_i / d x_j).

        Returns:
            PolyMatrix: A n(l-1) x nl matrix for l generators and l - 1 relators.
        """
        pres = self.presentation
        rep = self.representation
        n = rep.dim
        l = pres.num_generators
        field = rep.field
        nv = pres.num_link_components
        if not pres.relators:
            return PolyMatrix(field, nv, [], n * l)
        blocks = []
        for relator in pres.relators:
            blocks.append([phi_map(fox_derivative(relator, j, l), rep, pres) for j in range(l)])
        matrix = PolyMatrix.from_blocks(field, nv, blocks, n)
        logging.debug(f"Alexander matrix of size {matrix.rows}x{matrix.cols}")
        return matrix

    def denominator_matrix(self, column):
        """Phi(x_j - 1)."""
        generator = GroupRingElement.from_word(Word.generator(column)) - 1
        return phi_map(generator, self.representation, self.presentation)

    def compute(self, column=None):
        """
        Wada's invariant with the given block column removed.

        Args:
            column (int | str, optional): Generator index or name; defaults to ``y``.

        Returns:
            WadaInvariant: The invariant and its reductions.
        """
        column = _resolve_column(self.presentation, column)
        start = time.perf_counter()
        n = self.representation.dim
        block = self.denominator_matrix(column)
        denominator = determinant(block).pruned()
        if _vanishes(denominator, self.zero_tolerance, _determinant_scale(block)):
            raise ValueError(f"denominator identically zero for column {column} - choose another column")
        matrix = self.alexander_matrix()
        minor = matrix.remove_columns(column * n, (column + 1) * n)
        if minor.rows != minor.cols:
            raise ValueError(f"Removing one column leaves a {minor.rows}x{minor.cols} matrix; "
                             f"expected one relator fewer than generators")
        numerator = determinant(minor).pruned()
        value = RationalFn(numerator, denominator)
        reduced = rational_reduce(value)
        reduced_in_t = rational_reduce(value.substitute_product())
        if not reduced_in_t.is_polynomial:
            logging.warning(f"Twisted Alexander polynomial for column {column} is not a Laurent polynomial")
        logging.info(f"Wada invariant for column {self.presentation.generator_names[column]} "
                     f"computed in {time.perf_counter() - start:.2f}s")
        return WadaInvariant(value, column, reduced_in_t.is_polynomial, self.representation.backend,
                             reduced_in_t, reduced)


def _determinant_scale(matrix):
    """Largest coefficient magnitude among the entries of ``matrix``, raised to its size."""
    largest = max((entry.max_magnitude() for row in matrix.entries for entry in row), default=0.0)
    return largest ** matrix.rows


def _vanishes(poly, tolerance, scale=1.0):
    """
    Zero test for a denominator.

    Numeric coefficients are divided by ``scale`` so that the largest entry of the source matrix
    counts as 1, then compared with ``tolerance``.
    """
    if poly.is_zero():
        return True
    if poly.field.exact:
        return False
    return poly.max_magnitude() < tolerance * scale


def alexander_matrix(presentation, representation):
    """Alexander matrix of ``presentation`` twisted by ``representation``."""
    return TwistedAlexanderEngine(presentation, representation).alexander_matrix()


def wada_invariant(presentation, representation, column=None, zero_tolerance=ZERO_TOLERANCE):
    """
    Wada's twisted Alexander polynomial det A_j / det Phi(x_j - 1).

    Args:
        presentation (Presentation): The presentation.
        representation (Representation): The representation; its relators are checked first.
        column (int | str, optional): Removed generator; defaults to ``y``.
        zero_tolerance (float, optional): Zero cutoff for numeric denominators.

    Returns:
        WadaInvariant: The invariant.
    """
    return TwistedAlexanderEngine(presentation, representation, zero_tolerance).compute(column)


def compare_invariants(first, second, allowed_unit=ALL_MONOMIALS):
    """Compares two invariants in the mu variables up to units."""
    return equal_up_to_unit(first.value, second.value, allowed_unit)


def compare_with_closed_form(presentation, representation, formula, column=None, allowed_unit=None,
                             zero_tolerance=ZERO_TOLERANCE):
    """
    Compares the engine output, collapsed to t, against a closed formula in t.

    Even-dimensional representations are compared up to even monomials, odd ones up to any
    monomial and sign.

    Args:
        presentation (Presentation): The presentation.
        representation (Representation): The representation.
        formula (RationalFn): Single-variable rational function.
        column (int | str, optional): Removed generator.
        allowed_unit (str, optional): Overrides the unit mode.
        zero_tolerance (float, optional): Zero cutoff for numeric denominators.

    Returns:
        ComparisonReport: Verdict, witness and both reduced forms.
    """
    if formula.num_vars != 1:
        raise ValueError("The closed formula must be a function of the single variable t")
    invariant = wada_invariant(presentation, representation, column, zero_tolerance)
    mode = allowed_unit or (EVEN_MONOMIALS if representation.dim % 2 == 0 else ALL_MONOMIALS)
    reduced_formula = rational_reduce(formula)
    match = equal_up_to_unit(invariant.reduced_in_t, reduced_formula, mode)
    if match:
        logging.info(f"Engine agrees with the closed form up to the unit {match.sign:+d}*t^{match.exponent[0]}")
    else:
        logging.info(f"Engine {invariant.reduced_in_t} disagrees with the closed form {reduced_formula}")
    return ComparisonReport(match.equal, match.sign, match.exponent, mode,
                            invariant.reduced_in_t, reduced_formula, invariant)


def _aligned_coefficients(poly):
    """Coefficients of a univariate polynomial as complex numbers, lowest exponent shifted to 0."""
    return np.array([c.to_complex() for c in poly.coefficient_list()[1]], dtype=complex)


def max_pairwise_deviation(polys):
    """
    Largest coefficient difference between polynomials after aligning them up to +-t^k.

    Each polynomial is shifted to lowest exponent 0 and multiplied by the sign that brings it
    closest to the first one.

    Args:
        polys (list): Univariate LaurentPoly values.

    Returns:
        float: The maximum over all pairs (inf when lengths differ).
    """
    if len(polys) < 2:
        return 0.0
    vectors = [_aligned_coefficients(p) for p in polys]
    reference = vectors[0]
    aligned = []
    for vector in vectors:
        if vector.shape != reference.shape:
            return float("inf")
        plus = np.abs(vector - reference).max(initial=0.0)
        minus = np.abs(-vector - reference).max(initial=0.0)
        aligned.append(vector if plus <= minus else -vector)
    return max(float(np.abs(u - v).max(initial=0.0)) for i, u in enumerate(aligned) for v in aligned[i + 1:])
