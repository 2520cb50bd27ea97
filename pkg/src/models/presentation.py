import math
import re
from dataclasses import dataclass

from src.models.word import Word

GENERATOR_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class Presentation:
    """
    A finite group presentation together with its abelianization to Z^mu.

    Args:
        generator_names (list): Unique generator names matching ``[A-Za-z][A-Za-z0-9_]*``.
        relators (list): Words equal to the identity in the group.
        num_link_components (int): mu, the rank of the abelianization target.
        abelianization (list): One integer vector of length mu per generator.
    """
    def __init__(self, generator_names, relators, num_link_components, abelianization):
        names = tuple(generator_names)
        for name in names:
            if not GENERATOR_NAME.match(name):
                raise ValueError(f"Invalid generator name {name!r}")
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ValueError(f"duplicate generator name {duplicates[0]!r}")
        if num_link_components < 1:
            raise ValueError(f"mu must be at least 1, got {num_link_components}")
        abelianization = tuple(tuple(int(e) for e in vector) for vector in abelianization)
        if len(abelianization) != len(names):
            raise ValueError(f"Expected {len(names)} abelianization vectors, got {len(abelianization)}")
        for name, vector in zip(names, abelianization):
            if len(vector) != num_link_components:
                raise ValueError(f"Abelianization of {name} has length {len(vector)}, expected {num_link_components}")

        self.generator_names = names
        self.num_link_components = num_link_components
        self.abelianization = abelianization
        self.relators = tuple(relators)

        for k, relator in enumerate(self.relators, start=1):
            for gen in relator.generators():
                if gen >= len(names):
                    raise ValueError(f"Relator r_{k} uses generator index {gen} outside the alphabet")
            if any(self.word_abelianization(relator)):
                raise ValueError(f"relator r_{k} not in kernel of abelianization")

    @property
    def num_generators(self):
        return len(self.generator_names)

    @property
    def mu(self):
        return self.num_link_components

    def generator_index(self, name):
        try:
            return self.generator_names.index(name)
        except ValueError:
            raise ValueError(f"Unknown generator {name!r}") from None

    def word_abelianization(self, word):
        """Image of a word in Z^mu."""
        total = [0] * self.num_link_components
        for gen, exp in word.syllables:
            for i, e in enumerate(self.abelianization[gen]):
                total[i] += exp * e
        return tuple(total)

    def format_word(self, word):
        return word.format(self.generator_names)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.generator_names == other.generator_names and self.relators == other.relators
                and self.num_link_components == other.num_link_components
                and self.abelianization == other.abelianization)

    def __hash__(self):
        return hash((self.generator_names, self.relators, self.num_link_components, self.abelianization))

    def __repr__(self):
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"Presentation(<{' '.join(self.generator_names)} | {rels}>, mu={self.num_link_components})"


@dataclass(frozen=True)
class TorusLinkParams:
    """
    Parameters of the torus link T(mu*p, mu*q).

    When r and s are omitted they are chosen with 1 <= s <= q and p*s + q*r = 1.
    """
    mu: int
    p: int
    q: int
    r: int = None
    s: int = None

    def __post_init__(self):
        if self.mu < 1:
            raise ValueError(f"mu must be at least 1, got {self.mu}")
        if self.p < 1 or self.q < 1:
            raise ValueError(f"p and q must be positive, got p={self.p}, q={self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError("p,q not coprime")
        r, s = self.r, self.s
        if r is None and s is None:
            s = pow(self.p, -1, self.q) if self.q > 1 else 0
            if s == 0:
                s = self.q
            r = (1 - self.p * s) // self.q
        elif r is None or s is None:
            raise ValueError("r and s must be given together")
        if self.p * s + self.q * r != 1:
            raise ValueError(f"p*s + q*r must equal 1 (p={self.p}, q={self.q}, r={r}, s={s})")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)


def _torus_abelianization(params, extra_meridians):
    """Vectors for m_1..m_k (unit vectors), then x and y."""
    mu = params.mu
    vectors = []
    for i in range(extra_meridians):
        e = [0] * mu
        e[i] = 1
        vectors.append(tuple(e))
    vectors.append((params.q,) * mu)
    vectors.append((params.p,) * mu)
    return vectors


def torus_link_presentation(params):
    """
    The reduced presentation <m_1..m_{mu-1}, x, y | [x^p, m_i], x^p = y^q>.

    Args:
        params (TorusLinkParams): The torus link.

    Returns:
        Presentation: Generators m1..m{mu-1}, x, y in this order.
    """
    mu, p, q = params.mu, params.p, params.q
    names = [f"m{i + 1}" for i in range(mu - 1)] + ["x", "y"]
    x = mu - 1
    y = mu
    relators = [Word.from_syllables([(x, p), (i, 1), (x, -p), (i, -1)]) for i in range(mu - 1)]
    relators.append(Word.from_syllables([(x, p), (y, -q)]))
    return Presentation(names, relators, mu, _torus_abelianization(params, mu - 1))


def torus_link_presentation_full(params):
    """
    The unreduced presentation with generators m_1..m_mu, x, y, l.

    Relators: m_mu...m_1 (x^r y^s)^-1, [l, m_i] for every i, l x^-p, x^p y^-q.
    """
    mu, p, q, r, s = params.mu, params.p, params.q, params.r, params.s
    names = [f"m{i + 1}" for i in range(mu)] + ["x", "y", "l"]
    x, y, ell = mu, mu + 1, mu + 2
    product = Word.from_syllables([(i, 1) for i in reversed(range(mu))])
    relators = [product * Word.from_syllables([(x, r), (y, s)]).inverse()]
    for i in range(mu):
        relators.append(Word.from_syllables([(ell, 1), (i, 1), (ell, -1), (i, -1)]))
    relators.append(Word.from_syllables([(ell, 1), (x, -p)]))
    relators.append(Word.from_syllables([(x, p), (y, -q)]))
    abelianization = _torus_abelianization(params, mu) + [(p * q,) * mu]
    return Presentation(names, relators, mu, abelianization)
