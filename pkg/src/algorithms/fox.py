from src.models.word import GroupRingElement, Word


def _check_index(j, num_generators):
    if not 0 <= j < num_generators:
        raise ValueError(f"generator index {j} out of range for {num_generators} generators")


def _word_derivative(word, j, terms):
    """Adds the Fox derivative of ``word`` with respect to generator ``j`` into ``terms``."""
    prefix = Word()
    for gen, exp in word.syllables:
        if gen == j:
            if exp > 0:
                # d(x^e)/dx = 1 + x + ... + x^(e-1)
                for k in range(exp):
                    w = prefix * Word.generator(j, k) if k else prefix
                    terms[w] = terms.get(w, 0) + 1
            else:
                # d(x^-e)/dx = -(x^-1 + ... + x^-e)
                for k in range(1, -exp + 1):
                    w = prefix * Word.generator(j, -k)
                    terms[w] = terms.get(w, 0) - 1
        prefix = prefix * Word.generator(gen, exp)


def fox_derivative(element, j, num_generators):
    """
    Fox free derivative with respect to generator ``j``.

    Each syllable x^e contributes a geometric block in closed form, so large powers are cheap.

    Args:
        element (Word | GroupRingElement): The word or group-ring element to differentiate.
        j (int): Generator index.
        num_generators (int): Size of the ambient alphabet.

    Returns:
        GroupRingElement: The derivative.
    """
    _check_index(j, num_generators)
    if isinstance(element, Word):
        element = GroupRingElement.from_word(element)
    terms = {}
    for word, coefficient in element.items():
        for gen in word.generators():
            _check_index(gen, num_generators)
        partial = {}
        _word_derivative(word, j, partial)
        for w, c in partial.items():
            terms[w] = terms.get(w, 0) + coefficient * c
    return GroupRingElement(terms)


def fox_fundamental_check(word, num_generators=None):
    """
    Checks sum_j (dw/dx_j)(x_j - 1) = w - 1 exactly in the integral group ring.

    Args:
        word (Word): The word.
        num_generators (int, optional): Alphabet size; defaults to one more than the largest index used.

    Returns:
        bool: Whether the identity holds.
    """
    if num_generators is None:
        num_generators = max(word.generators(), default=-1) + 1
    total = GroupRingElement.zero()
    for j in range(num_generators):
        total = total + fox_derivative(word, j, num_generators) * (GroupRingElement.from_word(Word.generator(j)) - 1)
    return total == GroupRingElement.from_word(word) - 1


def fox_jacobian(relators, num_generators):
    """Rows of Fox derivatives, one row per relator and one column per generator."""
    return [[fox_derivative(r, j, num_generators) for j in range(num_generators)] for r in relators]
