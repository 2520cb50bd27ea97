import pytest
import numpy as np
from fractions import Fraction
from src.algorithms.character_variety import (DegenerateCharacterError, ReducibleCharacterError, check_trace_quadratic,
                                              extract_coordinates, from_character_case11, from_character_case12,
                                              from_character_case21, is_irreducible, u_condition)
from src.data_generator import random_sl2, sample_case11_points
from src.models.presentation import TorusLinkParams, torus_link_presentation
from src.models.representation import CaseTag, MatrixTriple, as_matrix, matrices_equal
from src.models.scalars import complex_field, cyclotomic_field

# Define fixtures for the exact field of T(4, 6) with a = b = 1

@pytest.fixture
def field():
    return cyclotomic_field(12)

@pytest.fixture
def X(field):
    i = field.root_of_unity(4, 1)
    return as_matrix([[i, 0], [0, -i]], field)

@pytest.fixture
def M(field):
    return as_matrix([[2, 1], [1, 1]], field)

@pytest.fixture
def presentation():
    return torus_link_presentation(TorusLinkParams(2, 2, 3))

def same_point(first, second):
    values = [(first.t_x, second.t_x), (first.t_y, second.t_y), (first.t_xy, second.t_xy)]
    for q1, q2 in zip(first.quads, second.quads):
        values.extend(zip(q1, q2))
    return all(u == v for u, v in values)

# Test the exact Case 1.1 reconstruction of a generic triple
def test_case11_exact_roundtrip(field, X, M, presentation):
    Y = as_matrix([[2, 1], [-3, -1]], field)
    point = extract_coordinates(MatrixTriple(X, Y, [M], {"a": 1, "b": 1}))
    assert point.case_tag is CaseTag.CASE11
    triple = from_character_case11(2, 3, point)
    assert triple.aux["s"] == 2
    assert triple.aux["u"] == -3
    assert matrices_equal(triple.Y, Y)
    assert same_point(extract_coordinates(triple), point)
    triple.to_representation(presentation).check_relators(presentation)

# Test the exact Case 1.1 reconstruction when the discriminant is a non-rational square
def test_case11_exact_field_discriminant(field, X, presentation):
    w = field.root_of_unity(12, 1)
    Y = as_matrix([[2, 1], [-3, -1]], field)
    M = as_matrix([[2, w], [w.inverse(), 1]], field)
    point = extract_coordinates(MatrixTriple(X, Y, [M], {"a": 1, "b": 1}))
    triple = from_character_case11(2, 3, point)
    theta1, theta2 = triple.aux["theta"][0]
    assert not ((theta1 - theta2) ** 2).is_rational()
    assert matrices_equal(triple.Ms[0], M)
    assert same_point(extract_coordinates(triple), point)
    triple.to_representation(presentation).check_relators(presentation)

# Test the numeric Case 1.1 reconstruction of sampled triples
def test_case11_numeric_roundtrip():
    params = TorusLinkParams(3, 2, 5)
    cfield = complex_field(128, 1e-20)
    presentation = torus_link_presentation(params)
    for point, triple in sample_case11_points(params, 1, 3, 3, 5, cfield):
        rebuilt = extract_coordinates(triple)
        assert same_point(rebuilt, point)
        triple.to_representation(presentation).check_relators(presentation)
        assert is_irreducible(triple.matrices())

# Test the extraction and reconstruction roundtrip on 100 seeded points
def test_case11_roundtrip_seeded_points():
    params = TorusLinkParams(2, 2, 3)
    cfield = complex_field(128, 1e-20)
    samples = sample_case11_points(params, 1, 1, 100, 42, cfield)
    assert len(samples) == 100
    for point, triple in samples:
        assert same_point(extract_coordinates(triple), point)

# Test the Fricke residual on 100 random triples
def test_trace_quadratic_residual():
    cfield = complex_field(128, 1e-20)
    rng = np.random.default_rng(5)
    for _ in range(100):
        triple = MatrixTriple(random_sl2(rng, cfield), random_sl2(rng, cfield), [random_sl2(rng, cfield)])
        residual = check_trace_quadratic(extract_coordinates(triple), 0)
        assert residual.magnitude() < 1e-20

# Test that the u = 0 locus is rejected by Case 1.1
def test_case11_degenerate(field, X, M):
    beta = field.root_of_unity(6, 1)
    Y = as_matrix([[beta, 1], [0, beta.inverse()]], field)
    point = extract_coordinates(MatrixTriple(X, Y, [M], {"a": 1, "b": 1}))
    assert u_condition(point.t_x, point.t_y, point.t_xy).is_zero()
    with pytest.raises(DegenerateCharacterError, match="degenerate u=0"):
        from_character_case11(2, 3, point)

# Test the Case 1.2 construction on a triangular pair
def test_case12_roundtrip(field, X, M, presentation):
    beta = field.root_of_unity(6, 1)
    Y = as_matrix([[beta, 1], [0, beta.inverse()]], field)
    point = extract_coordinates(MatrixTriple(X, Y, [M], {"a": 1, "b": 1}))
    assert point.case_tag is CaseTag.CASE12
    triple = from_character_case12(2, 3, 1, point)
    assert matrices_equal(triple.Ms[0], M)
    assert triple.aux["delta"][0] == 1
    triple.to_representation(presentation).check_relators(presentation)
    with pytest.raises(ValueError):
        from_character_case12(2, 3, -1, point)

# Test that Case 1.2 detects a reducible point
def test_case12_reducible(field, X):
    beta = field.root_of_unity(6, 1)
    Y = as_matrix([[beta, 1], [0, beta.inverse()]], field)
    upper = as_matrix([[2, 1], [0, Fraction(1, 2)]], field)
    point = extract_coordinates(MatrixTriple(X, Y, [upper], {"a": 1, "b": 1}))
    with pytest.raises(ReducibleCharacterError, match="condition \\(2\\) fails"):
        from_character_case12(2, 3, 1, point)

# Test the Case 2.1 construction with commuting X and Y
def test_case21_roundtrip(field, X, M, presentation):
    beta = field.root_of_unity(6, 1)
    Y = as_matrix([[beta.inverse(), 0], [0, beta]], field)
    point = extract_coordinates(MatrixTriple(X, Y, [M], {"a": 1, "b": 1}))
    assert point.case_tag is CaseTag.CASE21
    triple = from_character_case21(2, 3, point)
    assert triple.aux["sign"] == -1
    assert matrices_equal(triple.Y, Y)
    assert matrices_equal(triple.Ms[0], M)
    triple.to_representation(presentation).check_relators(presentation)

# Test that Case 2.1 detects a reducible point
def test_case21_reducible(field, X):
    beta = field.root_of_unity(6, 1)
    Y = as_matrix([[beta, 0], [0, beta.inverse()]], field)
    unipotent = as_matrix([[1, 1], [0, 1]], field)
    point = extract_coordinates(MatrixTriple(X, Y, [unipotent], {"a": 1, "b": 1}))
    with pytest.raises(ReducibleCharacterError, match="condition \\(3\\) fails"):
        from_character_case21(2, 3, point)

# Test label validation
def test_boundary_labels(field, X, M):
    Y = as_matrix([[-1, 0], [0, -1]], field)
    point = extract_coordinates(MatrixTriple(X, Y, [M], {"a": 1, "b": 3}))
    with pytest.raises(DegenerateCharacterError):
        from_character_case11(2, 3, point)
    unlabelled = extract_coordinates(MatrixTriple(X, Y, [M]))
    with pytest.raises(ValueError):
        from_character_case11(2, 3, unlabelled)

# Test the irreducibility check on both backends
def test_is_irreducible(field, X):
    beta = field.root_of_unity(6, 1)
    generic = as_matrix([[2, 1], [-3, -1]], field)
    triangular = as_matrix([[beta, 1], [0, beta.inverse()]], field)
    assert is_irreducible([X, generic])
    assert not is_irreducible([X, triangular])
    assert not is_irreducible([X])
    cfield = complex_field(128, 1e-20)
    rng = np.random.default_rng(3)
    assert is_irreducible([random_sl2(rng, cfield), random_sl2(rng, cfield)])
    diagonal = as_matrix([[2, 0], [0, Fraction(1, 2)]], cfield)
    upper = as_matrix([[1, 5], [0, 1]], cfield)
    assert not is_irreducible([diagonal, upper])
