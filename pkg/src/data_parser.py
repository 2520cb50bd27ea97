"""
Readers and writers for presentations, scalars, polynomials and representations.
"""
import json
import logging
import math
from fractions import Fraction

import pyparsing as pp

from src.models.laurent import LaurentPoly, RationalFn
from src.models.presentation import Presentation
from src.models.representation import Representation
from src.models.scalars import ComplexField, CyclotomicField, CyclotomicScalar, cyclotomic_field
from src.models.word import Word


class PresentationSyntaxError(ValueError):
    """Raised for malformed presentation text; the message carries line and column."""


def _presentation_grammar():
    name = pp.Regex(r"[A-Za-z][A-Za-z0-9_]*") + ~pp.FollowedBy(":")
    integer = pp.Regex(r"[+-]?\d+").set_parse_action(lambda t: int(t[0]))

    def section(keyword):
        return pp.Suppress(pp.Keyword(keyword) + pp.Literal(":"))

    gens = section("gens") + pp.Group(pp.OneOrMore(name))("gens")
    mu = section("mu") + integer("mu")
    vector = pp.Suppress("(") - pp.Group(pp.DelimitedList(integer)) + pp.Suppress(")")
    abel_entry = pp.Group(name + pp.Suppress("=") - vector)
    abel = section("abel") + pp.Group(pp.ZeroOrMore(abel_entry))("abel")
    syllable = pp.Group(name + pp.Optional(pp.Suppress("^") - integer, default=1))
    empty_word = pp.Suppress(pp.Regex(r"1(?![0-9])"))
    word = pp.Group(empty_word | pp.DelimitedList(syllable, delim="*"))
    relation = pp.Group(word + pp.Optional(pp.Suppress("=") - word))
    rels = section("rels") + pp.Group(pp.Optional(pp.DelimitedList(relation, delim=",")))("rels")
    grammar = gens + mu + abel + rels + pp.StringEnd()
    grammar.ignore(pp.python_style_comment)
    return grammar


PRESENTATION_GRAMMAR = _presentation_grammar()


def parse_presentation(text):
    """
    Parses the presentation text format.

    Example::

        gens: x y
        mu: 1
        abel: x=(3) y=(2)
        rels: x^2*y^-3

    Args:
        text (str): The presentation text.

    Returns:
        Presentation: The validated presentation.

    Raises:
        PresentationSyntaxError: The text does not follow the grammar.
        ValueError: Validation failed (unknown or duplicate names, abelianization mismatch).
    """
    try:
        parsed = PRESENTATION_GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as error:
        raise PresentationSyntaxError(f"line {error.lineno}, column {error.col}: {error.msg}") from None

    names = list(parsed["gens"])
    index = {}
    for name in names:
        if name in index:
            raise ValueError(f"duplicate generator name {name!r}")
        index[name] = len(index)
    mu = parsed["mu"]

    abel = {}
    for entry in parsed["abel"]:
        gen, vector = entry[0], list(entry[1])
        if gen not in index:
            raise ValueError(f"Abelianization given for unknown generator {gen!r}")
        if gen in abel:
            raise ValueError(f"Abelianization of {gen!r} given twice")
        abel[gen] = vector
    missing = [n for n in names if n not in abel]
    if missing:
        raise ValueError(f"No abelianization given for generator {missing[0]!r}")

    def to_word(syllables, k):
        pairs = []
        for gen, exp in syllables:
            if gen not in index:
                raise ValueError(f"Unknown generator {gen!r} in relator r_{k}")
            pairs.append((index[gen], exp))
        return Word.from_syllables(pairs)

    relators = []
    for k, relation in enumerate(parsed["rels"], start=1):
        word = to_word(relation[0], k)
        if len(relation) > 1:
            word = word * to_word(relation[1], k).inverse()
        relators.append(word)

    presentation = Presentation(names, relators, mu, [abel[n] for n in names])
    logging.debug(f"Parsed {presentation}")
    return presentation


def format_presentation(presentation):
    """Writes a presentation in the text format read by parse_presentation."""
    abel = " ".join(f"{n}=({','.join(str(e) for e in v)})"
                    for n, v in zip(presentation.generator_names, presentation.abelianization))
    rels = ", ".join(presentation.format_word(r) for r in presentation.relators)
    return (f"gens: {' '.join(presentation.generator_names)}\n"
            f"mu: {presentation.num_link_components}\n"
            f"abel: {abel}\n"
            f"rels: {rels}\n")


def read_presentation(path):
    with open(path, encoding="utf-8") as handle:
        return parse_presentation(handle.read())


def scalar_to_json(value):
    """Cyclotomic scalars as ``{"N", "coeffs"}``, complex ones as ``{"re", "im"}`` decimal strings."""
    if isinstance(value, CyclotomicScalar):
        return {"N": value.field.order, "coeffs": [str(c) for c in value.coeffs]}
    ctx = value.field.ctx
    digits = value.field.digits
    return {"re": ctx.nstr(value.re, digits), "im": ctx.nstr(value.im, digits)}


def scalar_from_json(obj, field):
    """
    Reads a scalar into ``field``.

    Accepts integers, rational strings such as ``"1/2"``, cyclotomic objects (whose order must
    divide the order of a cyclotomic target) and complex objects (complex targets only).
    """
    if isinstance(obj, bool):
        raise ValueError(f"Invalid scalar {obj!r}")
    if isinstance(obj, int):
        return field.from_int(obj)
    if isinstance(obj, str):
        return field.from_fraction(Fraction(obj))
    if not isinstance(obj, dict):
        raise ValueError(f"Invalid scalar {obj!r}")
    if "N" in obj:
        source = cyclotomic_field(int(obj["N"]))
        value = source.from_coefficients([Fraction(c) for c in obj["coeffs"]])
        if isinstance(field, CyclotomicField):
            if field.order % source.order:
                raise ValueError(f"Q(zeta_{source.order}) does not embed in {field}")
            step = field.order // source.order
            total = field.zero()
            for k, c in enumerate(value.coeffs):
                if c:
                    total = total + field.generator_power(k * step) * c
            return total
        total = field.zero()
        for k, c in enumerate(value.coeffs):
            if c:
                total = total + field.root_of_unity(source.order, k) * c
        return total
    if "re" in obj:
        if not isinstance(field, ComplexField):
            raise ValueError("Complex values cannot be read into the cyclotomic backend")
        return field.from_parts(obj["re"], obj.get("im", "0"))
    raise ValueError(f"Invalid scalar {obj!r}")


def poly_to_json(poly):
    terms = [{"exp": list(exp), "coef": scalar_to_json(poly.terms[exp])}
             for exp in sorted(poly.terms, reverse=True)]
    return {"vars": poly.variable_names(), "terms": terms}


def poly_from_json(obj, field):
    num_vars = len(obj["vars"])
    return LaurentPoly(field, num_vars, {tuple(t["exp"]): scalar_from_json(t["coef"], field) for t in obj["terms"]})


def rational_to_json(f):
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def rational_from_json(obj, field):
    return RationalFn(poly_from_json(obj["num"], field), poly_from_json(obj["den"], field))


def representation_to_json(representation):
    data = {
        "dim": representation.dim,
        "backend": representation.backend,
        "generators": {name: [[scalar_to_json(v) for v in row] for row in image]
                       for name, image in zip(representation.generator_names, representation.images)},
        "abel": {name: list(v) for name, v in zip(representation.generator_names, representation.abelianization)},
    }
    if isinstance(representation.field, CyclotomicField):
        data["order"] = representation.field.order
    return data


def _orders(obj):
    if isinstance(obj, dict):
        if "N" in obj:
            yield int(obj["N"])
        for value in obj.values():
            yield from _orders(value)
    elif isinstance(obj, list):
        for value in obj:
            yield from _orders(value)


def representation_from_json(obj, presentation, field=None):
    """
    Reads a representation of ``presentation``.

    For the cyclotomic backend the field order is ``order`` when present, else the lcm of the
    orders used by the entries. A complex ``field`` must be passed for the complex backend.
    """
    backend = obj.get("backend", "cyclotomic")
    if field is None:
        if backend != "cyclotomic":
            raise ValueError("A complex field must be supplied for complex representation files")
        order = obj.get("order") or math.lcm(1, *_orders(obj["generators"]))
        field = cyclotomic_field(int(order))
    generators = obj["generators"]
    images = {name: [[scalar_from_json(v, field) for v in row] for row in matrix]
              for name, matrix in generators.items()}
    abel = obj.get("abel")
    if abel is not None:
        for name, vector in zip(presentation.generator_names, presentation.abelianization):
            if name in abel and tuple(abel[name]) != vector:
                raise ValueError(f"Abelianization of {name!r} in the representation file disagrees with the presentation")
    representation = Representation.from_presentation(presentation, images, field)
    if obj.get("dim", representation.dim) != representation.dim:
        raise ValueError(f"Declared dimension {obj['dim']} does not match the matrices")
    return representation


def read_json(path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def dump_json(data):
    """Serialises with sorted keys and two-space indentation."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_json(path, data):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dump_json(data))
