"""
Matrix representations of finitely presented groups and the Phi map into Laurent matrices.

Scalar matrices are read-only numpy object arrays whose entries are scalars of one field.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from types import MappingProxyType

import numpy as np

from src.models.laurent import LaurentPoly
from src.models.poly_matrix import PolyMatrix
from src.models.word import GroupRingElement, Word


class RelatorViolation(ValueError):
    """Raised when a representation does not send a relator to the identity."""


def as_matrix(rows, field):
    """
    Builds a read-only object array of field scalars.

    Args:
        rows (sequence): Square nested sequence of ints, Fractions or scalars.
        field (ScalarField): Target field.
    """
    rows = [list(r) for r in rows]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("Representation matrices must be square")
    matrix = np.empty((n, n), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            matrix[i, j] = field.coerce(value)
    matrix.setflags(write=False)
    return matrix


def identity_matrix(field, n):
    return as_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)


def matrix_product(a, b):
    product = np.dot(a, b)
    product.setflags(write=False)
    return product


def matrix_trace(matrix):
    total = matrix[0, 0]
    for i in range(1, matrix.shape[0]):
        total = total + matrix[i, i]
    return total


def _pivot_index(column, start, field):
    """Row index of the largest-magnitude nonzero entry (exact fields take the first nonzero)."""
    best = None
    for i in range(start, len(column)):
        value = column[i]
        if value.is_zero():
            continue
        if field.exact:
            return i
        if best is None or value.magnitude() > column[best].magnitude():
            best = i
    return best


def matrix_determinant(matrix):
    """Determinant over the field by Gaussian elimination."""
    n = matrix.shape[0]
    field = matrix[0, 0].field
    a = [list(row) for row in matrix]
    det = field.one()
    for k in range(n):
        pivot = _pivot_index([a[i][k] for i in range(n)], k, field)
        if pivot is None:
            return field.zero()
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det = det * a[k][k]
        inv = a[k][k].inverse()
        for i in range(k + 1, n):
            factor = a[i][k] * inv
            if factor:
                for j in range(k + 1, n):
                    a[i][j] = a[i][j] - factor * a[k][j]
    return det


def matrix_inverse(matrix):
    """Inverse over the field by Gauss-Jordan elimination."""
    n = matrix.shape[0]
    field = matrix[0, 0].field
    a = [list(row) + [field.one() if i == j else field.zero() for j in range(n)] for i, row in enumerate(matrix)]
    for k in range(n):
        pivot = _pivot_index([a[i][k] for i in range(n)], k, field)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[pivot] = a[pivot], a[k]
        inv = a[k][k].inverse()
        a[k] = [v * inv for v in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                factor = a[i][k]
                a[i] = [v - factor * w for v, w in zip(a[i], a[k])]
    return as_matrix([row[n:] for row in a], field)


def matrix_power(matrix, inverse, exponent):
    """matrix^exponent, using the precomputed inverse for negative exponents."""
    base = matrix if exponent >= 0 else inverse
    exponent = abs(exponent)
    result = identity_matrix(matrix[0, 0].field, matrix.shape[0])
    while exponent:
        if exponent & 1:
            result = matrix_product(result, base)
        exponent >>= 1
        if exponent:
            base = matrix_product(base, base)
    return result


def matrices_equal(a, b):
    """Entrywise equality (exact, or within the field tolerance)."""
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


class Representation:
    """
    A homomorphism from a presented group to SL(n) over a scalar field.

    Args:
        generator_names (sequence): Generator names in presentation order.
        images (sequence): One n x n matrix per generator (nested lists or object arrays).
        abelianization (sequence): One integer vector per generator.
        field (ScalarField): Field of the matrix entries.
    """
    def __init__(self, generator_names, images, abelianization, field):
        self.generator_names = tuple(generator_names)
        self.field = field
        self.images = tuple(as_matrix(m, field) for m in images)
        self.abelianization = tuple(tuple(v) for v in abelianization)
        if len(self.images) != len(self.generator_names) or len(self.abelianization) != len(self.generator_names):
            raise ValueError("One image and one abelianization vector are needed per generator")
        dims = {m.shape[0] for m in self.images}
        if len(dims) > 1:
            raise ValueError(f"Images have differing dimensions {sorted(dims)}")
        self.dim = dims.pop() if dims else 0
        for name, image in zip(self.generator_names, self.images):
            det = matrix_determinant(image)
            if not det == 1:
                raise ValueError(f"image of {name} has determinant {det}, expected 1")
        self._inverses = tuple(matrix_inverse(m) for m in self.images)

    @classmethod
    def from_presentation(cls, presentation, images, field):
        """
        Builds a representation from a name -> matrix mapping for the generators of ``presentation``.
        """
        missing = [n for n in presentation.generator_names if n not in images]
        if missing:
            raise ValueError(f"No image given for generator {missing[0]!r}")
        extra = sorted(set(images) - set(presentation.generator_names))
        if extra:
            raise ValueError(f"Image given for unknown generator {extra[0]!r}")
        return cls(presentation.generator_names,
                   [images[n] for n in presentation.generator_names],
                   presentation.abelianization, field)

    @property
    def backend(self):
        return self.field.name

    @property
    def num_vars(self):
        return len(self.abelianization[0]) if self.abelianization else 0

    def image(self, name_or_index):
        index = name_or_index if isinstance(name_or_index, int) else self.generator_names.index(name_or_index)
        return self.images[index]

    def evaluate_word(self, word):
        """Matrix of a word: the product of syllable images raised to their exponents."""
        result = identity_matrix(self.field, self.dim)
        for gen, exp in word.syllables:
            if gen >= len(self.images):
                raise ValueError(f"Generator index {gen} outside the alphabet of the representation")
            result = matrix_product(result, matrix_power(self.images[gen], self._inverses[gen], exp))
        return result

    def check_relators(self, presentation):
        """
        Raises RelatorViolation naming the first relator not sent to the identity.
        """
        if presentation.generator_names != self.generator_names:
            raise ValueError("alphabet mismatch between presentation and representation")
        identity = identity_matrix(self.field, self.dim)
        for k, relator in enumerate(presentation.relators, start=1):
            if not matrices_equal(self.evaluate_word(relator), identity):
                raise RelatorViolation(f"relator r_{k} violated")
        logging.debug(f"All {len(presentation.relators)} relators hold for the {self.dim}-dimensional representation")

    def conjugate(self, g):
        """The representation w -> g rho(w) g^-1."""
        g = as_matrix(g, self.field)
        g_inv = matrix_inverse(g)
        images = [matrix_product(matrix_product(g, m), g_inv) for m in self.images]
        return Representation(self.generator_names, images, self.abelianization, self.field)

    def map_images(self, function):
        """Applies ``function`` to every image, keeping names and abelianization."""
        return Representation(self.generator_names, [function(m) for m in self.images],
                              self.abelianization, self.field)

    def __repr__(self):
        return f"Representation(dim={self.dim}, generators={list(self.generator_names)}, backend={self.backend})"


def phi_map(element, representation, presentation):
    """
    Pushes a group-ring element through abelianization tensor representation.

    A word w goes to t^{alpha(w)} * rho(w); the map is extended Z-linearly.

    Args:
        element (GroupRingElement | Word): The element.
        representation (Representation): rho, over the presentation's alphabet.
        presentation (Presentation): Supplies the abelianization.

    Returns:
        PolyMatrix: An n x n matrix of Laurent polynomials in mu variables.
    """
    if representation.generator_names != presentation.generator_names:
        raise ValueError("alphabet mismatch between presentation and representation")
    if isinstance(element, Word):
        element = GroupRingElement.from_word(element)
    field = representation.field
    n = representation.dim
    nv = presentation.num_link_components
    by_exponent = {}
    for word, coefficient in element.items():
        for gen in word.generators():
            if gen >= presentation.num_generators:
                raise ValueError(f"alphabet mismatch: generator index {gen} not in the presentation")
        exponent = presentation.word_abelianization(word)
        matrix = representation.evaluate_word(word)
        contribution = [[matrix[i, j] * coefficient for j in range(n)] for i in range(n)]
        current = by_exponent.get(exponent)
        if current is None:
            by_exponent[exponent] = contribution
        else:
            by_exponent[exponent] = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(current, contribution)]
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            poly = LaurentPoly(field, nv, {exp: m[i][j] for exp, m in by_exponent.items()})
            row.append(poly.pruned())
        entries.append(row)
    return PolyMatrix(field, nv, entries, n)


class CaseTag(str, Enum):
    """Which construction produced (or fits) a character point."""
    CASE11 = "Case11"
    CASE12 = "Case12"
    CASE21 = "Case21"


@dataclass(frozen=True)
class CharacterPoint:
    """
    Trace coordinates of a triple (X, Y, M_1..M_{mu-1}).

    Attributes:
        t_x, t_y, t_xy: Traces of X, Y and XY.
        quads: One (t_i, t_xi, t_yi, t_xyi) tuple per extra meridian.
        case_tag (CaseTag): Construction case.
        a, b: Eigenvalue labels when known (t_x = 2cos(a pi/p), t_y = 2cos(b pi/q)).
    """
    t_x: object
    t_y: object
    t_xy: object
    quads: tuple = ()
    case_tag: CaseTag = CaseTag.CASE11
    a: int = None
    b: int = None

    def __post_init__(self):
        object.__setattr__(self, "quads", tuple(tuple(q) for q in self.quads))
        for quad in self.quads:
            if len(quad) != 4:
                raise ValueError("Each quadruple holds t_i, t_xi, t_yi, t_xyi")
        if self.a is not None and self.b is not None and (self.a - self.b) % 2:
            raise ValueError(f"Labels must satisfy a = b mod 2, got a={self.a}, b={self.b}")
        object.__setattr__(self, "case_tag", CaseTag(self.case_tag))

    @property
    def mu(self):
        return len(self.quads) + 1

    @property
    def field(self):
        return self.t_xy.field


@dataclass(frozen=True)
class MatrixTriple:
    """
    Matrices X, Y and M_1..M_{mu-1} with the auxiliary values of their construction.

    Attributes:
        X, Y: 2 x 2 object arrays.
        Ms: Tuple of 2 x 2 object arrays.
        aux: Read-only mapping of intermediate values (s, u, v, gamma, ...).
    """
    X: object
    Y: object
    Ms: tuple = ()
    aux: dict = dataclass_field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "Ms", tuple(self.Ms))
        object.__setattr__(self, "aux", MappingProxyType(dict(self.aux)))

    @property
    def field(self):
        return self.X[0, 0].field

    def matrices(self):
        """All matrices in presentation order: M_1..M_{mu-1}, X, Y."""
        return list(self.Ms) + [self.X, self.Y]

    def to_representation(self, presentation):
        """Representation of the reduced torus presentation with these images."""
        if presentation.num_generators != len(self.Ms) + 2:
            raise ValueError("Presentation does not match the number of matrices")
        return Representation(presentation.generator_names, self.matrices(),
                              presentation.abelianization, self.field)
