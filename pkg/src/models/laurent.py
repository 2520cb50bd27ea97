"""
Multivariate Laurent polynomials over a scalar field, and rational functions of them.

A LaurentPoly maps exponent vectors (entries may be negative) to nonzero scalars.
Division and gcd shift operands into the ordinary polynomial ring by factoring out
the lowest exponent vector, work there, and shift back.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from src.models.scalars import Scalar


class InexactDivisionError(ArithmeticError, ValueError):
    """Raised when a polynomial division leaves a nonzero remainder."""


def _add_exp(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


def _sub_exp(e1, e2):
    return tuple(a - b for a, b in zip(e1, e2))


class LaurentPoly:
    """
    A Laurent polynomial in ``num_vars`` variables over a scalar field.

    Args:
        field (ScalarField): Coefficient field.
        num_vars (int): Number of variables.
        terms (dict, optional): Map from exponent vector to coefficient (ints, Fractions or scalars).
    """
    __slots__ = ("field", "num_vars", "_terms")

    def __init__(self, field, num_vars, terms=None):
        if num_vars < 0:
            raise ValueError(f"Variable count must be non-negative, got {num_vars}")
        clean = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != num_vars:
                raise ValueError(f"Exponent {exp} does not have {num_vars} entries")
            coef = field.coerce(coef)
            if exp in clean:
                coef = clean[exp] + coef
            clean[exp] = coef
        self.field = field
        self.num_vars = num_vars
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _from_clean(cls, field, num_vars, terms):
        poly = cls.__new__(cls)
        poly.field = field
        poly.num_vars = num_vars
        poly._terms = terms
        return poly

    @classmethod
    def zero(cls, field, num_vars):
        return cls._from_clean(field, num_vars, {})

    @classmethod
    def one(cls, field, num_vars):
        return cls.constant(field, num_vars, 1)

    @classmethod
    def constant(cls, field, num_vars, value):
        return cls(field, num_vars, {(0,) * num_vars: value})

    @classmethod
    def monomial(cls, field, num_vars, exponent, coefficient=1):
        return cls(field, num_vars, {tuple(exponent): coefficient})

    @classmethod
    def variable(cls, field, num_vars, index):
        exponent = [0] * num_vars
        exponent[index] = 1
        return cls.monomial(field, num_vars, exponent)

    @classmethod
    def from_coefficients(cls, field, coefficients, low=0):
        """Univariate polynomial sum(c_k t^(low+k)) from a coefficient list, lowest degree first."""
        return cls(field, 1, {(low + k,): c for k, c in enumerate(coefficients)})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def _check(self, other):
        if other.field != self.field or other.num_vars != self.num_vars:
            raise ValueError(
                f"backend/variable-count mismatch: ({self.field}, {self.num_vars}) "
                f"and ({other.field}, {other.num_vars})")

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return LaurentPoly.constant(self.field, self.num_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for exp, coef in other._terms.items():
            current = terms.get(exp)
            value = coef if current is None else current + coef
            if value:
                terms[exp] = value
            else:
                terms.pop(exp, None)
        return LaurentPoly._from_clean(self.field, self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._from_clean(self.field, self.num_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, value):
        """Multiplies every coefficient by a scalar."""
        value = self.field.coerce(value)
        if not value:
            return LaurentPoly.zero(self.field, self.num_vars)
        return LaurentPoly._from_clean(self.field, self.num_vars, {e: c * value for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = _add_exp(e1, e2)
                product = c1 * c2
                current = terms.get(exp)
                terms[exp] = product if current is None else current + product
        return LaurentPoly._from_clean(self.field, self.num_vars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("Only monomials have Laurent inverses")
            (exp, coef), = self._terms.items()
            return LaurentPoly._from_clean(
                self.field, self.num_vars, {tuple(e * k for e in exp): coef ** k})
        result = LaurentPoly.one(self.field, self.num_vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exponent):
        """Multiplies by the monomial t^exponent."""
        exponent = tuple(exponent)
        return LaurentPoly._from_clean(
            self.field, self.num_vars, {_add_exp(e, exponent): c for e, c in self._terms.items()})

    def leading_term(self):
        """(exponent, coefficient) of the lexicographically largest exponent."""
        if not self._terms:
            raise ValueError("The zero polynomial has no leading term")
        exp = max(self._terms)
        return exp, self._terms[exp]

    def min_exponents(self):
        if not self._terms:
            return (0,) * self.num_vars
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponents(self):
        if not self._terms:
            return (0,) * self.num_vars
        return tuple(max(col) for col in zip(*self._terms))

    def max_magnitude(self):
        return max((c.magnitude() for c in self._terms.values()), default=0.0)

    def pruned(self, scale=None):
        """
        Drops coefficients that are rounding noise relative to ``scale``.

        Exact fields return the polynomial unchanged.
        """
        if self.field.exact:
            return self
        if scale is None:
            scale = self.max_magnitude()
        return LaurentPoly._from_clean(
            self.field, self.num_vars,
            {e: c for e, c in self._terms.items() if not self.field.is_negligible(c, scale)})

    def is_close(self, other, tolerance=None):
        """Coefficientwise comparison, relative to the largest coefficient of either side."""
        other = self._lift(other)
        if tolerance is None:
            tolerance = self.field.tolerance
        scale = max(1.0, self.max_magnitude(), other.max_magnitude())
        zero = self.field.zero()
        for exp in set(self._terms) | set(other._terms):
            diff = self._terms.get(exp, zero) - other._terms.get(exp, zero)
            if diff.magnitude() > tolerance * scale:
                return False
        return True

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = LaurentPoly.constant(self.field, self.num_vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.field != self.field or other.num_vars != self.num_vars:
            return False
        if self.field.exact:
            return self._terms == other._terms
        return self.is_close(other)

    __hash__ = None

    def substitute_product(self):
        """Collapses t_1, ..., t_mu to a single variable t; each exponent becomes the total degree."""
        terms = {}
        for exp, coef in self._terms.items():
            key = (sum(exp),)
            current = terms.get(key)
            terms[key] = coef if current is None else current + coef
        return LaurentPoly._from_clean(self.field, 1, {e: c for e, c in terms.items() if c})

    def evaluate(self, values):
        """
        Evaluates at a point.

        Args:
            values (sequence): One scalar (or int) per variable; nonzero where negative exponents occur.

        Returns:
            Scalar: The value.
        """
        if len(values) != self.num_vars:
            raise ValueError(f"Expected {self.num_vars} values, got {len(values)}")
        values = [self.field.coerce(v) for v in values]
        total = self.field.zero()
        for exp, coef in self._terms.items():
            term = coef
            for v, e in zip(values, exp):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    def coefficient_list(self):
        """Univariate coefficients from the lowest exponent upwards, with that exponent."""
        if self.num_vars != 1:
            raise ValueError("coefficient_list needs a univariate polynomial")
        if not self._terms:
            return 0, []
        low = self.min_exponents()[0]
        high = self.max_exponents()[0]
        zero = self.field.zero()
        return low, [self._terms.get((k,), zero) for k in range(low, high + 1)]

    def variable_names(self):
        if self.num_vars == 1:
            return ["t"]
        return [f"t{i + 1}" for i in range(self.num_vars)]

    def format(self, names=None):
        """Human-readable form such as ``t^2 + 1`` or ``t1^2*t2^2 + 1``."""
        if not self._terms:
            return "0"
        names = names or self.variable_names()
        parts = []
        for exp in sorted(self._terms, reverse=True):
            coef = self._terms[exp]
            monomial = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, exp) if e)
            if self.field.exact and coef.is_rational():
                value = coef.rational_value()
                sign = "-" if value < 0 else "+"
                magnitude = abs(value)
                if monomial:
                    text = monomial if magnitude == 1 else f"{magnitude}*{monomial}"
                else:
                    text = str(magnitude)
            else:
                sign = "+"
                text = f"({coef})*{monomial}" if monomial else f"({coef})"
            parts.append((sign, text))
        first_sign, first_text = parts[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentPoly({self.format()})"


def substitute_product(p):
    """Collapses all variables of ``p`` to the single variable t = t_1 ... t_mu."""
    return p.substitute_product()


def poly_divexact(a, b):
    """
    Exact division in the Laurent ring.

    Args:
        a (LaurentPoly): Dividend.
        b (LaurentPoly): Divisor, nonzero.

    Returns:
        LaurentPoly: q with q * b == a.

    Raises:
        InexactDivisionError: b does not divide a.
        ZeroDivisionError: b is zero.
    """
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    field = a.field
    nv = a.num_vars
    if a.is_zero():
        return LaurentPoly.zero(field, nv)
    if b.is_monomial():
        (b_exp, b_coef), = b.terms.items()
        inv = b_coef.inverse()
        return LaurentPoly._from_clean(
            field, nv, {_sub_exp(e, b_exp): c * inv for e, c in a.terms.items()})

    a_shift = a.min_exponents()
    b_shift = b.min_exponents()
    remainder = {_sub_exp(e, a_shift): c for e, c in a.terms.items()}
    divisor = [(_sub_exp(e, b_shift), c) for e, c in b.terms.items()]
    lead_exp, lead_coef = max(divisor)
    divisor = [(e, c) for e, c in divisor if e != lead_exp]
    inv_lead = lead_coef.inverse()
    scale = None if field.exact else max(a.max_magnitude(), 1e-300)

    quotient = {}
    while remainder:
        exp = max(remainder)
        coef = remainder.pop(exp)
        if scale is not None and field.is_negligible(coef, scale):
            continue
        q_exp = _sub_exp(exp, lead_exp)
        if any(e < 0 for e in q_exp):
            raise InexactDivisionError(f"inexact division of {a} by {b}")
        q_coef = coef * inv_lead
        quotient[q_exp] = q_coef
        for d_exp, d_coef in divisor:
            key = _add_exp(q_exp, d_exp)
            current = remainder.get(key)
            value = -(q_coef * d_coef) if current is None else current - q_coef * d_coef
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)

    offset = _sub_exp(a_shift, b_shift)
    result = LaurentPoly._from_clean(field, nv, {_add_exp(e, offset): c for e, c in quotient.items()})
    return result if field.exact else result.pruned()


def _dense(p):
    """Coefficients of a univariate polynomial after removing its lowest power, lowest first."""
    return p.coefficient_list()[1]


def _trim(coeffs, field, scale):
    coeffs = list(coeffs)
    while coeffs and (not coeffs[-1] or (not field.exact and field.is_negligible(coeffs[-1], scale))):
        coeffs.pop()
    return coeffs


def _dense_remainder(dividend, divisor, field):
    remainder = list(dividend)
    inv = divisor[-1].inverse()
    d = len(divisor) - 1
    for k in range(len(remainder) - 1, d - 1, -1):
        c = remainder[k]
        if not c:
            continue
        q = c * inv
        base = k - d
        for i in range(d):
            if divisor[i]:
                remainder[base + i] = remainder[base + i] - q * divisor[i]
        remainder[k] = field.zero()
    scale = max((c.magnitude() for c in dividend), default=0.0)
    return _trim(remainder[:d], field, scale)


def poly_gcd(a, b):
    """
    Monic gcd of two univariate Laurent polynomials (normalised to lowest exponent 0).

    Monomial factors are units in the Laurent ring and are not part of the result.
    """
    a._check(b)
    if a.num_vars != 1:
        raise ValueError("multivariate reduction unsupported")
    field = a.field
    x = _trim(_dense(a), field, a.max_magnitude())
    y = _trim(_dense(b), field, b.max_magnitude())
    while y:
        x, y = y, _dense_remainder(x, y, field)
    if not x:
        return LaurentPoly.zero(field, 1)
    inv = x[-1].inverse()
    return LaurentPoly.from_coefficients(field, [c * inv for c in x]).pruned()


class RationalFn:
    """
    A quotient num / den of Laurent polynomials.

    Args:
        num (LaurentPoly): Numerator.
        den (LaurentPoly, optional): Nonzero denominator; defaults to 1.
        reduced (bool): True once a gcd reduction has been applied.
    """
    __slots__ = ("num", "den", "reduced")

    def __init__(self, num, den=None, reduced=False):
        if den is None:
            den = LaurentPoly.one(num.field, num.num_vars)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den
        self.reduced = reduced

    @property
    def field(self):
        return self.num.field

    @property
    def num_vars(self):
        return self.num.num_vars

    @property
    def is_polynomial(self):
        """True when the denominator is a unit (a single monomial)."""
        return self.den.is_monomial()

    def as_polynomial(self):
        """The Laurent polynomial num / den; requires a monomial denominator."""
        if not self.is_polynomial:
            raise ValueError(f"{self} is not a Laurent polynomial")
        return poly_divexact(self.num, self.den)

    def substitute_product(self):
        return RationalFn(self.num.substitute_product(), self.den.substitute_product())

    def evaluate(self, values):
        den = self.den.evaluate(values)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.evaluate(values) / den

    def __mul__(self, other):
        if isinstance(other, RationalFn):
            return RationalFn(self.num * other.num, self.den * other.den)
        return RationalFn(self.num * other, self.den)

    def __truediv__(self, other):
        if isinstance(other, RationalFn):
            return RationalFn(self.num * other.den, self.den * other.num)
        return RationalFn(self.num, self.den * other)

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def format(self):
        if self.den == LaurentPoly.one(self.field, self.num_vars):
            return self.num.format()
        return f"({self.num.format()}) / ({self.den.format()})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFn({self.format()})"


def _common_direction(polys):
    """Primitive vector v with every exponent an integer multiple of v, or None."""
    exponents = [e for p in polys for e in p.terms if any(e)]
    if not exponents:
        return None
    first = exponents[0]
    g = 0
    for e in first:
        g = math.gcd(g, e)
    direction = tuple(e // g for e in first)
    pivot = next(i for i, e in enumerate(direction) if e)
    if direction[pivot] < 0:
        direction = tuple(-e for e in direction)
    for exp in exponents:
        if exp[pivot] % direction[pivot]:
            return None
        k = exp[pivot] // direction[pivot]
        if tuple(k * d for d in direction) != exp:
            return None
    return direction


def _restrict(p, direction):
    pivot = next(i for i, e in enumerate(direction) if e)
    return LaurentPoly._from_clean(
        p.field, 1, {(e[pivot] // direction[pivot],): c for e, c in p.terms.items()})


def _extend(p, direction):
    return LaurentPoly._from_clean(
        p.field, len(direction), {tuple(e[0] * d for d in direction): c for e, c in p.terms.items()})


def _normalize(num, den):
    """Makes den monic with lowest exponent 0, adjusting num by the same unit."""
    _, lead = den.leading_term()
    inv = lead.inverse()
    shift = tuple(-e for e in den.min_exponents())
    return num.scale(inv).shift(shift), den.scale(inv).shift(shift)


def rational_reduce(f):
    """
    Cancels the gcd of numerator and denominator.

    Succeeds when the denominator is a monomial, or when every exponent of numerator and
    denominator is a multiple of one primitive vector (in particular for univariate input).
    Other inputs are returned unchanged with ``reduced`` left False.

    Args:
        f (RationalFn): The rational function.

    Returns:
        RationalFn: The reduced form; a polynomial has denominator 1.
    """
    field = f.field
    nv = f.num_vars
    num = f.num.pruned()
    den = f.den.pruned()
    one = LaurentPoly.one(field, nv)
    if num.is_zero():
        return RationalFn(num, one, reduced=True)
    if den.is_monomial():
        return RationalFn(poly_divexact(num, den), one, reduced=True)
    direction = (1,) if nv == 1 else _common_direction([num, den])
    if direction is None:
        logging.warning("multivariate reduction unsupported; returning the input unreduced")
        return RationalFn(f.num, f.den, reduced=False)
    u_num = _restrict(num, direction)
    u_den = _restrict(den, direction)
    g = poly_gcd(u_num, u_den)
    u_num = poly_divexact(u_num, g)
    u_den = poly_divexact(u_den, g).pruned()
    if u_den.is_monomial():
        u_num = poly_divexact(u_num, u_den)
        u_den = LaurentPoly.one(field, 1)
    else:
        u_num, u_den = _normalize(u_num, u_den)
    logging.debug(f"Reduced rational function by a gcd of degree {len(_dense(g)) - 1}")
    if nv == 1:
        return RationalFn(u_num, u_den, reduced=True)
    return RationalFn(_extend(u_num, direction), _extend(u_den, direction), reduced=True)


@dataclass(frozen=True)
class UnitMatch:
    """
    Outcome of a comparison up to units.

    Attributes:
        equal (bool): Whether the two rational functions agree up to an allowed unit.
        sign (int): The scalar factor c in f = c * t^k * g (1 or -1).
        exponent (tuple): The exponent vector k of the witness monomial.
    """
    equal: bool
    sign: int = 1
    exponent: tuple = ()

    def __bool__(self):
        return self.equal

    def witness(self, field):
        """The witness unit as a Laurent polynomial."""
        return LaurentPoly.monomial(field, len(self.exponent), self.exponent, self.sign)


EVEN_MONOMIALS = "even-monomials"
ALL_MONOMIALS = "all-monomials"


def equal_up_to_unit(f, g, allowed_unit=EVEN_MONOMIALS):
    """
    Decides whether f = c * t^k * g as rational functions.

    In ``even-monomials`` mode every entry of k must be even and c = 1; in ``all-monomials``
    mode k is arbitrary and c is 1 or -1.

    Args:
        f (RationalFn): First function.
        g (RationalFn): Second function.
        allowed_unit (str): ``even-monomials`` or ``all-monomials``.

    Returns:
        UnitMatch: The verdict and the witness unit.
    """
    if allowed_unit not in (EVEN_MONOMIALS, ALL_MONOMIALS):
        raise ValueError(f"Unknown unit mode {allowed_unit!r}")
    f.num._check(g.num)
    nv = f.num_vars
    left = (f.num * g.den).pruned()
    right = (g.num * f.den).pruned()
    zero_exp = (0,) * nv
    if left.is_zero() or right.is_zero():
        return UnitMatch(left.is_zero() and right.is_zero(), 1, zero_exp)
    l_exp, l_coef = left.leading_term()
    r_exp, r_coef = right.leading_term()
    exponent = _sub_exp(l_exp, r_exp)
    ratio = l_coef / r_coef
    if ratio == 1:
        sign = 1
    elif ratio == -1 and allowed_unit == ALL_MONOMIALS:
        sign = -1
    else:
        return UnitMatch(False, 1, exponent)
    if allowed_unit == EVEN_MONOMIALS and any(e % 2 for e in exponent):
        return UnitMatch(False, sign, exponent)
    candidate = right.shift(exponent)
    if sign < 0:
        candidate = -candidate
    return UnitMatch(left == candidate, sign, exponent)
