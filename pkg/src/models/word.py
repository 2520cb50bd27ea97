from dataclasses import dataclass


def _reduce(syllables):
    """Freely reduces a sequence of (generator, exponent) pairs."""
    stack = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            merged = stack[-1][1] + exp
            stack.pop()
            if merged:
                stack.append((gen, merged))
        else:
            stack.append((gen, exp))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """
    A freely reduced word in a free group, stored as syllables.

    Attributes:
        syllables (tuple): (generator index, nonzero exponent) pairs; neighbours use distinct generators.
    """
    syllables: tuple = ()

    def __post_init__(self):
        syllables = tuple((int(g), int(e)) for g, e in self.syllables)
        for gen, exp in syllables:
            if gen < 0:
                raise ValueError(f"Negative generator index {gen}")
            if exp == 0:
                raise ValueError("Word syllables must have nonzero exponents")
        for (g1, _), (g2, _) in zip(syllables, syllables[1:]):
            if g1 == g2:
                raise ValueError("Adjacent syllables share a generator; use Word.from_syllables to reduce")
        object.__setattr__(self, "syllables", syllables)

    @classmethod
    def from_syllables(cls, syllables):
        """
        Builds a word from any sequence of (generator, exponent) pairs, reducing it freely.

        Args:
            syllables (iterable): Pairs (generator index, exponent); zero exponents are dropped.

        Returns:
            Word: The reduced word.
        """
        return cls(_reduce(syllables))

    @classmethod
    def identity(cls):
        return cls(())

    @classmethod
    def generator(cls, index, exponent=1):
        return cls.from_syllables([(index, exponent)])

    def is_identity(self):
        return not self.syllables

    def inverse(self):
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return word_multiply(self, other)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** -k
        result = Word()
        for _ in range(k):
            result = result * self
        return result

    def __len__(self):
        """Letter length of the word."""
        return sum(abs(e) for _, e in self.syllables)

    def generators(self):
        """Set of generator indices occurring in the word."""
        return {g for g, _ in self.syllables}

    def format(self, names=None):
        """
        Formats the word as ``x^2*m1*x^-2*m1^-1``; the empty word is ``1``.

        Args:
            names (list, optional): Generator names; defaults to ``g0, g1, ...``.
        """
        if not self.syllables:
            return "1"
        parts = []
        for gen, exp in self.syllables:
            name = names[gen] if names is not None else f"g{gen}"
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return "*".join(parts)

    def __str__(self):
        return self.format()


def word_multiply(a, b):
    """
    Multiplies two words, cancelling at the junction only.

    Args:
        a (Word): Left factor.
        b (Word): Right factor.

    Returns:
        Word: The freely reduced product.
    """
    left = list(a.syllables)
    right = list(b.syllables)
    while left and right and left[-1][0] == right[0][0]:
        gen = left[-1][0]
        merged = left[-1][1] + right[0][1]
        left.pop()
        right.pop(0)
        if merged:
            left.append((gen, merged))
            break
    return Word(tuple(left + right))


class GroupRingElement:
    """
    A finite integer combination of words, an element of the integral group ring Z[F].

    Args:
        terms (dict, optional): Map from Word to integer coefficient; zero coefficients are dropped.
    """
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = {w: int(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def from_word(cls, word, coefficient=1):
        return cls({word: coefficient})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({Word(): 1})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def _combine(self, other, sign):
        terms = dict(self._terms)
        for word, coef in other._terms.items():
            terms[word] = terms.get(word, 0) + sign * coef
        return GroupRingElement(terms)

    @staticmethod
    def _lift(value):
        if isinstance(value, GroupRingElement):
            return value
        if isinstance(value, Word):
            return GroupRingElement.from_word(value)
        if isinstance(value, int):
            return GroupRingElement({Word(): value})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other._combine(self, -1)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self._terms.items()})

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 * w2
                terms[w] = terms.get(w, 0) + c1 * c2
        return GroupRingElement(terms)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def format(self, names=None):
        if not self._terms:
            return "0"
        ordered = sorted(self._terms.items(), key=lambda item: (len(item[0]), item[0].syllables))
        parts = []
        for word, coef in ordered:
            text = word.format(names)
            if coef == 1:
                parts.append(f"+ {text}")
            elif coef == -1:
                parts.append(f"- {text}")
            else:
                parts.append(f"{'+' if coef > 0 else '-'} {abs(coef)}*{text}")
        result = " ".join(parts)
        return result[2:] if result.startswith("+ ") else "-" + result[2:]

    def __repr__(self):
        return f"GroupRingElement({self.format()})"
