import pytest
import numpy as np
from src.algorithms.symmetric_power import symmetric_power, symmetric_power_matrix
from src.data_generator import random_sl2
from src.models.presentation import TorusLinkParams, torus_link_presentation
from src.models.representation import (Representation, as_matrix, matrices_equal, matrix_determinant,
                                       matrix_inverse, matrix_product, matrix_trace)
from src.models.scalars import complex_field, cyclotomic_field

# Define fixtures for an exact field and a numeric field

@pytest.fixture
def field():
    return cyclotomic_field(12)

@pytest.fixture
def cfield():
    return complex_field(128, 1e-20)

# Test that the lift of a diagonal matrix is diagonal with the expected powers
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_diagonal_lift(field, n):
    alpha = field.root_of_unity(12, 1)
    lifted = symmetric_power_matrix(as_matrix([[alpha, 0], [0, alpha.inverse()]], field), n)
    for i in range(n):
        for j in range(n):
            expected = alpha ** (2 * i - (n - 1)) if i == j else field.zero()
            assert lifted[i, j] == expected

# Test the two-dimensional lift is the inverse transpose
def test_lift_of_dimension_two(field):
    m = as_matrix([[2, 3], [1, 2]], field)
    assert matrices_equal(symmetric_power_matrix(m, 2), as_matrix([[2, -1], [-3, 2]], field))
    assert matrices_equal(symmetric_power_matrix(m, 1), as_matrix([[1]], field))

# Test that the lift is a homomorphism into SL(n)
@pytest.mark.parametrize("n", [3, 4, 5])
def test_homomorphism(cfield, n):
    rng = np.random.default_rng(n)
    a = random_sl2(rng, cfield)
    b = random_sl2(rng, cfield)
    lifted_product = symmetric_power_matrix(matrix_product(a, b), n)
    product_of_lifts = matrix_product(symmetric_power_matrix(a, n), symmetric_power_matrix(b, n))
    assert matrices_equal(lifted_product, product_of_lifts)
    assert matrix_determinant(symmetric_power_matrix(a, n)) == 1
    assert matrices_equal(symmetric_power_matrix(matrix_inverse(a), n), matrix_inverse(symmetric_power_matrix(a, n)))

# Test the homomorphism property and determinant one on 100 random pairs
def test_homomorphism_random_pairs(cfield):
    rng = np.random.default_rng(100)
    for k in range(100):
        n = 2 + k % 5
        a = random_sl2(rng, cfield)
        b = random_sl2(rng, cfield)
        lifted_a = symmetric_power_matrix(a, n)
        assert matrices_equal(symmetric_power_matrix(matrix_product(a, b), n),
                              matrix_product(lifted_a, symmetric_power_matrix(b, n)))
        assert matrix_determinant(lifted_a) == 1

# Test the trace of the lift of a unipotent matrix
def test_unipotent_trace(field):
    lifted = symmetric_power_matrix(as_matrix([[1, 1], [0, 1]], field), 4)
    assert matrix_trace(lifted) == 4

# Test lifting a representation keeps the relators
def test_symmetric_power_representation(field):
    pres = torus_link_presentation(TorusLinkParams(1, 2, 3))
    i = field.root_of_unity(4, 1)
    rep = Representation.from_presentation(pres, {"x": [[i, 0], [0, -i]], "y": [[0, 1], [-1, 1]]}, field)
    lifted = symmetric_power(rep, 3)
    assert lifted.dim == 3
    lifted.check_relators(pres)
    with pytest.raises(ValueError):
        symmetric_power(lifted, 2)
    with pytest.raises(ValueError):
        symmetric_power(rep, 0)
