import pytest
import numpy as np
from src.data_generator import random_word_syllables
from src.models.laurent import LaurentPoly
from src.models.presentation import TorusLinkParams, torus_link_presentation
from src.models.representation import (CaseTag, CharacterPoint, MatrixTriple, RelatorViolation, Representation,
                                       as_matrix, matrices_equal, matrix_determinant, matrix_inverse,
                                       matrix_product, matrix_trace, phi_map)
from src.models.scalars import cyclotomic_field
from src.models.word import GroupRingElement, Word

# Define fixtures for the trefoil and an exact representation of it

@pytest.fixture
def field():
    return cyclotomic_field(12)

@pytest.fixture
def trefoil():
    return torus_link_presentation(TorusLinkParams(1, 2, 3))

@pytest.fixture
def images(field):
    # X = diag(i, -i) has order 4; Y is the companion matrix of Z^2 - Z + 1 and Y^3 = -I = X^2
    i = field.root_of_unity(4, 1)
    return {"x": [[i, 0], [0, -i]], "y": [[0, 1], [-1, 1]]}

@pytest.fixture
def representation(trefoil, images, field):
    return Representation.from_presentation(trefoil, images, field)

# Test the scalar matrix helpers
def test_matrix_helpers(field):
    a = as_matrix([[2, 1], [1, 1]], field)
    assert matrix_determinant(a) == 1
    assert matrix_trace(a) == 3
    assert matrices_equal(matrix_product(a, matrix_inverse(a)), as_matrix([[1, 0], [0, 1]], field))
    with pytest.raises(ValueError):
        a[0, 0] = field.zero()
    with pytest.raises(ZeroDivisionError):
        matrix_inverse(as_matrix([[1, 2], [2, 4]], field))

# Test that the trefoil relator holds
def test_check_relators(representation, trefoil):
    representation.check_relators(trefoil)
    assert representation.dim == 2
    assert representation.backend == "cyclotomic"
    assert representation.num_vars == 1

# Test that a wrong image is detected
def test_relator_violation(trefoil, field):
    rep = Representation.from_presentation(trefoil, {"x": [[1, 1], [0, 1]], "y": [[0, 1], [-1, 1]]}, field)
    with pytest.raises(RelatorViolation, match="relator r_1 violated"):
        rep.check_relators(trefoil)

# Test validation of images
def test_image_validation(trefoil, field):
    with pytest.raises(ValueError, match="image of x has determinant"):
        Representation.from_presentation(trefoil, {"x": [[2, 0], [0, 1]], "y": [[0, 1], [-1, 1]]}, field)
    with pytest.raises(ValueError):
        Representation.from_presentation(trefoil, {"x": [[1, 0], [0, 1]]}, field)

# Test word evaluation with negative exponents
def test_evaluate_word(representation, field):
    w = Word.from_syllables([(0, 3), (1, -2), (0, -3), (1, 2)])
    product = representation.evaluate_word(w)
    x, y = representation.image("x"), representation.image(1)
    expected = matrix_product(matrix_product(matrix_product(matrix_product(x, x), x), matrix_inverse(y)),
                              matrix_inverse(y))
    expected = matrix_product(matrix_product(expected, matrix_inverse(matrix_product(matrix_product(x, x), x))),
                              matrix_product(y, y))
    assert matrices_equal(product, expected)

# Test conjugation keeps the relators
def test_conjugate(representation, trefoil):
    conjugated = representation.conjugate([[1, 2], [1, 3]])
    conjugated.check_relators(trefoil)
    assert matrix_trace(conjugated.image("x")) == matrix_trace(representation.image("x"))

# Test the Phi map on x - 1
def test_phi_map(representation, trefoil, field):
    element = GroupRingElement.from_word(Word.generator(0)) - 1
    matrix = phi_map(element, representation, trefoil)
    t = LaurentPoly.variable(field, 1, 0)
    i = field.root_of_unity(4, 1)
    assert matrix[0, 0] == t ** 3 * i - 1
    assert matrix[1, 1] == -(t ** 3 * i) - 1
    assert matrix[0, 1].is_zero()

# Test the Phi map on a single word and the alphabet check
def test_phi_map_word(representation, trefoil, field):
    matrix = phi_map(Word.generator(1, -1), representation, trefoil)
    t = LaurentPoly.variable(field, 1, 0)
    assert matrix[0, 0] == t ** -2
    other = torus_link_presentation(TorusLinkParams(2, 2, 3))
    with pytest.raises(ValueError, match="alphabet mismatch"):
        phi_map(Word.generator(0), representation, other)

# Test the character point container
def test_character_point(field):
    point = CharacterPoint(field.one(), field.zero(), field.one(), [(1, 2, 3, 4)], "Case12", a=1, b=3)
    assert point.mu == 2
    assert point.case_tag is CaseTag.CASE12
    assert point.field == field
    with pytest.raises(ValueError):
        CharacterPoint(field.one(), field.zero(), field.one(), a=1, b=2)
    with pytest.raises(ValueError):
        CharacterPoint(field.one(), field.zero(), field.one(), [(1, 2)])

# Test the matrix triple container
def test_matrix_triple(representation, trefoil):
    triple = MatrixTriple(representation.image("x"), representation.image("y"), [], {"a": 1})
    assert triple.aux["a"] == 1
    assert len(triple.matrices()) == 2
    rebuilt = triple.to_representation(trefoil)
    rebuilt.check_relators(trefoil)
    with pytest.raises(TypeError):
        triple.aux["b"] = 2

# Test that the Phi map is multiplicative on random words
@pytest.mark.parametrize("seed", range(5))
def test_phi_map_multiplicative(representation, trefoil, seed):
    rng = np.random.default_rng(seed)
    for _ in range(4):
        u = Word.from_syllables(random_word_syllables(rng, 2, 6))
        v = Word.from_syllables(random_word_syllables(rng, 2, 6))
        product = phi_map(u, representation, trefoil) @ phi_map(v, representation, trefoil)
        assert phi_map(u * v, representation, trefoil) == product
