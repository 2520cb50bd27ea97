import json
import logging

import numpy as np
import pandas as pd

from src.algorithms.character_variety import (eigenvalue, extract_coordinates, from_character_case11,
                                              is_irreducible)
from src.models.presentation import torus_link_presentation
from src.models.representation import MatrixTriple, as_matrix, matrix_inverse, matrix_product

DEFAULT_CONFIG = {
    "backend": "cyclotomic",
    "precision_bits": 128,
    "scalar_tolerance": 1e-20,
    "sample_tolerance": 1e-6,
    "zero_tolerance": 1e-12,
    "seed": 42,
    "max_verify_n": 6,
    "sample_count": 10,
    "growth_n_max": 200,
}

MAX_ATTEMPTS = 100


def load_config(path="config.json"):
    """
    Loads run defaults, filling missing keys from DEFAULT_CONFIG.

    Args:
        path (str, optional): JSON file; None skips the file.

    Returns:
        dict: The merged configuration.
    """
    config = dict(DEFAULT_CONFIG)
    if path is not None:
        with open(path, "r", encoding="utf-8") as file:
            loaded = json.load(file)
        unknown = sorted(set(loaded) - set(DEFAULT_CONFIG))
        if unknown:
            raise ValueError(f"Unknown configuration key {unknown[0]!r} in {path}")
        config.update(loaded)
    return config


def _random_complex(rng, field):
    re, im = rng.standard_normal(2)
    return field.from_parts(float(re), float(im))


def random_sl2(rng, field):
    """
    Random matrix of determinant 1 with complex normal entries.

    a, b, c are drawn and d = (1 + bc)/a is solved for.

    Args:
        rng (numpy.random.Generator): Seeded generator.
        field (ComplexField): Target field.
    """
    while True:
        a = _random_complex(rng, field)
        if a.magnitude() > 1e-3:
            break
    b = _random_complex(rng, field)
    c = _random_complex(rng, field)
    return as_matrix([[a, b], [c, (1 + b * c) / a]], field)


def random_word_syllables(rng, num_generators, max_length):
    """Random (generator, exponent) pairs with total letter length at most ``max_length``."""
    length = int(rng.integers(0, max_length + 1))
    syllables = []
    while length > 0:
        exp = int(rng.integers(1, min(length, 4) + 1))
        length -= exp
        sign = 1 if rng.random() < 0.5 else -1
        syllables.append((int(rng.integers(0, num_generators)), sign * exp))
    return syllables


def exact_torus_triple(data):
    """
    An exact representation with the given eigenvalue labels.

    X = diag(alpha, alpha^-1); Y is the companion matrix [[0, 1], [-1, t_y]] when 0 < b < q and
    beta * I otherwise; M_i = [[1, i], [1, 1 + i]].

    Args:
        data (TorusEigenData): Labels; ``data.field`` holds every entry.

    Returns:
        MatrixTriple: The matrices.
    """
    field = data.field
    alpha, beta = data.alpha, data.beta
    X = as_matrix([[alpha, 0], [0, alpha.inverse()]], field)
    if 0 < data.b < data.params.q:
        Y = as_matrix([[0, 1], [-1, beta + beta.inverse()]], field)
    else:
        Y = as_matrix([[beta, 0], [0, beta]], field)
    Ms = [as_matrix([[1, i], [1, 1 + i]], field) for i in range(1, data.params.mu)]
    return MatrixTriple(X, Y, Ms, {"a": data.a, "b": data.b})


def exact_torus_representation(data):
    """Representation of the reduced torus presentation built from exact_torus_triple."""
    return exact_torus_triple(data).to_representation(torus_link_presentation(data.params))


def sample_case11_triple(rng, params, a, b, field):
    """
    Random irreducible triple with X = diag(alpha, alpha^-1) and Y conjugate to diag(beta, beta^-1).

    Y = g diag(beta, beta^-1) g^-1 for a random g, redrawn until both off-diagonal entries are nonzero;
    the extra meridians are random SL(2) matrices.
    """
    alpha = eigenvalue(field, params.p, a)
    beta = eigenvalue(field, params.q, b)
    X = as_matrix([[alpha, 0], [0, alpha.inverse()]], field)
    D = as_matrix([[beta, 0], [0, beta.inverse()]], field)
    for _ in range(MAX_ATTEMPTS):
        g = random_sl2(rng, field)
        Y = matrix_product(matrix_product(g, D), matrix_inverse(g))
        if Y[0, 1].magnitude() < 1e-6 or Y[1, 0].magnitude() < 1e-6:
            continue
        Ms = [random_sl2(rng, field) for _ in range(params.mu - 1)]
        if is_irreducible([X, Y] + Ms):
            return MatrixTriple(X, Y, Ms, {"a": a, "b": b})
    raise RuntimeError(f"No irreducible sample found in {MAX_ATTEMPTS} attempts")


def sample_case11_points(params, a, b, count, seed, field):
    """
    Seeded Case 1.1 samples: random matrices, their trace coordinates, and the reconstruction.

    Args:
        params (TorusLinkParams): The link.
        a (int): Label with 0 < a < p.
        b (int): Label with 0 < b < q.
        count (int): Number of samples.
        seed (int): Seed of the single random generator.
        field (ComplexField): Numeric field.

    Returns:
        list: (CharacterPoint, MatrixTriple) pairs, the triple rebuilt from the point.
    """
    if not (0 < a < params.p and 0 < b < params.q):
        raise ValueError("boundary label not irreducible Case 1.1")
    if (a - b) % 2:
        raise ValueError(f"a and b must have equal parity, got a={a}, b={b}")
    rng = np.random.default_rng(seed)
    samples = []
    for index in range(count):
        triple = sample_case11_triple(rng, params, a, b, field)
        point = extract_coordinates(triple)
        samples.append((point, from_character_case11(params.p, params.q, point)))
        logging.debug(f"Sample {index}: t_xy = {point.t_xy}")
    return samples


def save_to_csv(frame, filename):
    """
    Saves a table to CSV without the index.

    Args:
        frame (pandas.DataFrame): The table.
        filename (str | file-like): Target path or open text buffer.
    """
    pd.DataFrame(frame).to_csv(filename, index=False)
