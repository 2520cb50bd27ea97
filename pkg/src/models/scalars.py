"""
Field backends for the polynomial and matrix code.

Two interchangeable fields share one arithmetic contract:

* ``CyclotomicField(N)`` holds exact elements of Q(zeta_N), stored as integer
  coefficient vectors over a common denominator, reduced modulo the N-th
  cyclotomic polynomial so that equality is decidable.
* ``ComplexField(precision)`` holds arbitrary-precision complex floats backed
  by a private mpmath context; equality is tolerance based.
"""
import functools
import logging
import math
from abc import ABC, abstractmethod
from fractions import Fraction

import mpmath
import sympy

_X = sympy.Symbol("x")
_Z = sympy.Symbol("z")


class IrrationalDiscriminantError(ValueError):
    """Raised when an exact field cannot represent a requested square root."""


class ScalarField(ABC):
    """
    Common contract of the scalar backends.

    Attributes:
        exact (bool): True when equality and zero tests are exact.
        tolerance (float): Equality tolerance of the numeric backend (0 for exact fields).
    """
    exact = True
    tolerance = 0.0

    @property
    @abstractmethod
    def name(self):
        """Backend name used in files and reports."""

    @abstractmethod
    def from_int(self, value):
        """Returns the image of an integer."""

    @abstractmethod
    def from_fraction(self, value):
        """Returns the image of a rational number."""

    @abstractmethod
    def root_of_unity(self, n, k):
        """Returns exp(2*pi*i*k/n)."""

    @abstractmethod
    def sqrt(self, value):
        """Returns a square root of ``value``."""

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def coerce(self, value):
        """
        Converts integers, fractions and scalars of this field into scalars of this field.

        Args:
            value (int | Fraction | Scalar): The value to convert.

        Returns:
            Scalar: The converted value.
        """
        if isinstance(value, Scalar):
            if value.field != self:
                raise ValueError(f"Scalar of {value.field} used where {self} was expected")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        raise TypeError(f"Cannot convert {type(value).__name__} into {self}")

    def is_negligible(self, value, scale):
        """
        Tells whether ``value`` is rounding noise relative to ``scale``.

        Exact fields only treat an exact zero as negligible.
        """
        if self.exact:
            return value.is_zero()
        return value.magnitude() <= self.tolerance * max(scale, 1.0)


class Scalar(ABC):
    """Base class of field elements; arithmetic accepts ints and Fractions on either side."""
    __slots__ = ()

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError(f"Backend mismatch: {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    @abstractmethod
    def _add(self, other):
        pass

    @abstractmethod
    def _mul(self, other):
        pass

    @abstractmethod
    def __neg__(self):
        pass

    @abstractmethod
    def inverse(self):
        """Returns the multiplicative inverse; raises ZeroDivisionError on zero."""

    @abstractmethod
    def is_zero(self):
        """Zero test (tolerance based for numeric backends)."""

    @abstractmethod
    def magnitude(self):
        """Absolute value of the complex image, as a float."""

    @abstractmethod
    def to_complex(self):
        """Python complex approximation."""

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._add(other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._add(-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other._add(-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._mul(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._mul(other.inverse())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other._mul(self.inverse())

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** -exponent
        result = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result._mul(base)
            exponent >>= 1
            if exponent:
                base = base._mul(base)
        return result


def _rational_sqrt(value):
    """Square root of a non-negative Fraction when it is rational, else None."""
    if value < 0:
        return None
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


class CyclotomicField(ScalarField):
    """
    The cyclotomic field Q(zeta_N) presented as Q[x]/(Phi_N).

    Args:
        order (int): N >= 1.
    """
    exact = True
    tolerance = 0.0

    def __init__(self, order):
        if order < 1:
            raise ValueError(f"Cyclotomic order must be positive, got {order}")
        self.order = order
        self._phi_poly = sympy.Poly(sympy.cyclotomic_poly(order, _X), _X, domain=sympy.QQ)
        # low -> high, monic
        self.phi = tuple(int(c) for c in reversed(self._phi_poly.all_coeffs()))
        self.degree = len(self.phi) - 1
        if self.degree != int(sympy.totient(order)):
            raise ArithmeticError(f"Phi_{order} has unexpected degree {self.degree}")
        logging.debug(f"Initialised Q(zeta_{order}) of degree {self.degree}")

    @property
    def name(self):
        return "cyclotomic"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self):
        return hash(("cyclotomic", self.order))

    def __repr__(self):
        return f"CyclotomicField({self.order})"

    def reduce(self, coeffs):
        """
        Reduces an integer coefficient list (constant term first) modulo Phi_N.

        Returns:
            tuple: The reduced coefficient vector of length phi(N).
        """
        coeffs = list(coeffs)
        d = self.degree
        phi = self.phi
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k]
            if c:
                base = k - d
                for i in range(d):
                    coeffs[base + i] -= c * phi[i]
                coeffs[k] = 0
        if len(coeffs) < d:
            coeffs.extend([0] * (d - len(coeffs)))
        return tuple(coeffs[:d])

    def from_int(self, value):
        return CyclotomicScalar(self, (value,) + (0,) * (self.degree - 1), 1)

    def from_fraction(self, value):
        value = Fraction(value)
        return CyclotomicScalar(self, (value.numerator,) + (0,) * (self.degree - 1), value.denominator)

    def from_coefficients(self, coeffs):
        """Builds an element from rational coefficients of 1, zeta, zeta^2, ... (reduced if longer)."""
        coeffs = [Fraction(c) for c in coeffs]
        if not coeffs:
            return self.zero()
        common = math.lcm(*(c.denominator for c in coeffs))
        nums = [c.numerator * (common // c.denominator) for c in coeffs]
        return CyclotomicScalar(self, self.reduce(nums), common)

    def generator_power(self, j):
        """Returns zeta_N^j for any integer j."""
        j %= self.order
        coeffs = [0] * (j + 1)
        coeffs[j] = 1
        return CyclotomicScalar(self, self.reduce(coeffs), 1)

    def root_of_unity(self, n, k):
        if n < 1 or self.order % n:
            raise ValueError(f"zeta_{n} does not lie in Q(zeta_{self.order})")
        return self.generator_power(k * (self.order // n))

    def sqrt(self, value):
        value = self.coerce(value)
        if value.is_zero():
            return value
        if value.is_rational():
            r = value.rational_value()
            root = _rational_sqrt(r)
            if root is not None:
                return self.from_fraction(root)
            root = _rational_sqrt(-r)
            if root is not None and self.order % 4 == 0:
                return self.root_of_unity(4, 1) * root
        root = self._field_sqrt(value)
        if root is None:
            raise IrrationalDiscriminantError(f"irrational discriminant over exact field: {value}")
        return root

    def _field_sqrt(self, value):
        """
        Square root of ``value`` inside Q(zeta_N), or None when Z^2 - value is irreducible.

        A root w is sought as w = u - k*zeta: u is a root of the norm
        Res_x((Z - k*x)^2 - value(x), Phi_N(x)), and each rational factor g of the norm is
        reduced modulo W^2 - value. A linear remainder A*W + B with A != 0 yields the candidate
        -B/A. A shift k separates the two roots for all but at most phi(N) values, so
        k = 0..phi(N) suffices.
        """
        d_expr = sum(sympy.Rational(c.numerator, c.denominator) * _X ** k for k, c in enumerate(value.coeffs) if c)
        zeta = self.generator_power(1)
        for shift in range(self.degree + 1):
            shifted = sympy.expand((_Z - shift * _X) ** 2 - d_expr)
            norm = sympy.resultant(shifted, self._phi_poly.as_expr(), _X)
            _, factors = sympy.factor_list(norm, _Z)
            lam = zeta * shift
            for factor, _ in factors:
                a, b = self.zero(), self.zero()
                for c in sympy.Poly(factor, _Z).all_coeffs():
                    # (a W + b)(W + lam) + c, reduced with W^2 = value
                    a, b = a * lam + b, a * value + b * lam + Fraction(int(c.p), int(c.q))
                if a.is_zero():
                    continue
                root = -b / a
                if root * root == value:
                    logging.debug(f"Square root of {value} in Q(zeta_{self.order}) found with shift {shift}")
                    return root
        return None


class CyclotomicScalar(Scalar):
    """
    An exact element of Q(zeta_N).

    Stored as integer numerators over one positive denominator in lowest terms, so two
    elements are equal exactly when their stored vectors are equal.
    """
    __slots__ = ("field", "_nums", "_den")

    def __init__(self, field, nums, den=1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        g = den
        for n in nums:
            g = math.gcd(g, n)
        if den < 0:
            g = -g
        self.field = field
        self._nums = tuple(n // g for n in nums)
        self._den = den // g

    @property
    def order(self):
        return self.field.order

    @property
    def coeffs(self):
        """Rational coefficients of 1, zeta, ..., zeta^(phi(N)-1)."""
        return tuple(Fraction(n, self._den) for n in self._nums)

    def is_zero(self):
        return not any(self._nums)

    def __bool__(self):
        return any(self._nums)

    def is_rational(self):
        return not any(self._nums[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._nums[0], self._den)

    def _add(self, other):
        da, db = self._den, other._den
        if da == db:
            return CyclotomicScalar(self.field, tuple(a + b for a, b in zip(self._nums, other._nums)), da)
        return CyclotomicScalar(self.field, tuple(a * db + b * da for a, b in zip(self._nums, other._nums)), da * db)

    def _mul(self, other):
        a, b = self._nums, other._nums
        if not any(a[1:]):
            return CyclotomicScalar(self.field, tuple(a[0] * x for x in b), self._den * other._den)
        if not any(b[1:]):
            return CyclotomicScalar(self.field, tuple(b[0] * x for x in a), self._den * other._den)
        conv = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return CyclotomicScalar(self.field, self.field.reduce(conv), self._den * other._den)

    def __neg__(self):
        return CyclotomicScalar(self.field, tuple(-n for n in self._nums), self._den)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self.field.from_fraction(1 / self.rational_value())
        poly = sympy.Poly(list(reversed(self._nums)), _X, domain=sympy.QQ)
        inv = poly.invert(self.field._phi_poly)
        coeffs = list(reversed(inv.all_coeffs()))
        common = math.lcm(*(int(c.q) for c in coeffs))
        nums = [int(c.p) * (common // int(c.q)) * self._den for c in coeffs]
        return CyclotomicScalar(self.field, self.field.reduce(nums), common)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.coerce(other)
        if not isinstance(other, CyclotomicScalar):
            return NotImplemented
        return self.field == other.field and self._nums == other._nums and self._den == other._den

    def __hash__(self):
        return hash((self.field.order, self._nums, self._den))

    def to_complex(self):
        n = self.field.order
        total = 0j
        for k, c in enumerate(self._nums):
            if c:
                total += c * complex(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
        return total / self._den

    def magnitude(self):
        return abs(self.to_complex())

    def embed(self, precision=128):
        """Numerical image under zeta_N -> exp(2*pi*i/N)."""
        return embed_complex(self, precision)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                power = f"z{self.field.order}" if k == 1 else f"z{self.field.order}^{k}"
                parts.append(power if c == 1 else f"-{power}" if c == -1 else f"{c}*{power}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"CyclotomicScalar({self.field.order}, {self})"


class ComplexField(ScalarField):
    """
    Arbitrary-precision complex numbers on a private mpmath context.

    Args:
        precision (int): Working precision in bits.
        tolerance (float): Equality / zero-test tolerance.
    """
    exact = False

    def __init__(self, precision=128, tolerance=1e-20):
        self.precision = precision
        self.tolerance = tolerance
        self.ctx = mpmath.MPContext()
        self.ctx.prec = precision

    @property
    def name(self):
        return "complex"

    @property
    def digits(self):
        """Decimal digits written when serialising values of this field."""
        return int(self.precision * math.log10(2)) + 2

    def __eq__(self, other):
        return (isinstance(other, ComplexField)
                and other.precision == self.precision and other.tolerance == self.tolerance)

    def __hash__(self):
        return hash(("complex", self.precision, self.tolerance))

    def __repr__(self):
        return f"ComplexField(precision={self.precision}, tolerance={self.tolerance})"

    def from_int(self, value):
        return ComplexScalar(self, self.ctx.mpc(value))

    def from_fraction(self, value):
        value = Fraction(value)
        return ComplexScalar(self, self.ctx.mpc(self.ctx.mpf(value.numerator) / value.denominator))

    def from_parts(self, re, im=0):
        """Builds a scalar from real and imaginary parts (numbers or decimal strings)."""
        return ComplexScalar(self, self.ctx.mpc(self.ctx.mpf(re), self.ctx.mpf(im)))

    def from_complex(self, value):
        value = complex(value)
        return self.from_parts(value.real, value.imag)

    def root_of_unity(self, n, k):
        return ComplexScalar(self, self.ctx.expjpi(self.ctx.mpf(2 * k) / n))

    def sqrt(self, value):
        value = self.coerce(value)
        return ComplexScalar(self, self.ctx.sqrt(value.value))


class ComplexScalar(Scalar):
    """An arbitrary-precision complex number; equality is relative within the field tolerance."""
    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    @property
    def re(self):
        return self.value.real

    @property
    def im(self):
        return self.value.imag

    def _add(self, other):
        return ComplexScalar(self.field, self.value + other.value)

    def _mul(self, other):
        return ComplexScalar(self.field, self.value * other.value)

    def __neg__(self):
        return ComplexScalar(self.field, -self.value)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return ComplexScalar(self.field, 1 / self.value)

    def is_zero(self):
        return abs(self.value) <= self.field.tolerance

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.coerce(other)
        if not isinstance(other, ComplexScalar):
            return NotImplemented
        scale = max(1, abs(self.value), abs(other.value))
        return abs(self.value - other.value) <= self.field.tolerance * scale

    __hash__ = None

    def magnitude(self):
        return float(abs(self.value))

    def to_complex(self):
        return complex(self.value)

    def __str__(self):
        return self.field.ctx.nstr(self.value, 12)

    def __repr__(self):
        return f"ComplexScalar({self})"


@functools.lru_cache(maxsize=None)
def cyclotomic_field(order):
    """Shared Q(zeta_N) instance; Phi_N is computed once per order."""
    return CyclotomicField(order)


@functools.lru_cache(maxsize=None)
def complex_field(precision=128, tolerance=1e-20):
    """Shared complex field instance for a precision / tolerance pair."""
    return ComplexField(precision, tolerance)


def root_of_unity(order, k):
    """
    Returns zeta_N^k in Q(zeta_N).

    Args:
        order (int): N >= 1.
        k (int): Exponent, any integer.

    Returns:
        CyclotomicScalar: zeta_N^k reduced modulo Phi_N.
    """
    return cyclotomic_field(order).root_of_unity(order, k)


def embed_complex(z, precision=128, tolerance=1e-20):
    """
    Numerical image of a cyclotomic element under zeta_N -> exp(2*pi*i/N).

    Args:
        z (CyclotomicScalar): The exact element.
        precision (int): Working precision in bits.
        tolerance (float): Tolerance of the target field.

    Returns:
        ComplexScalar: The embedded value.
    """
    target = complex_field(precision, tolerance)
    ctx = target.ctx
    order = z.field.order
    total = ctx.mpc(0)
    for k, c in enumerate(z.coeffs):
        if c:
            total += (ctx.mpf(c.numerator) / c.denominator) * ctx.expjpi(ctx.mpf(2 * k) / order)
    return ComplexScalar(target, total)


def solve_quadratic(b, c):
    """
    Roots of Z^2 + bZ + c.

    Args:
        b (Scalar): Linear coefficient.
        c (Scalar): Constant coefficient.

    Returns:
        tuple: (theta1, theta2) with theta1 + theta2 = -b and theta1 * theta2 = c.

    Raises:
        IrrationalDiscriminantError: The exact backend cannot represent the square root.
    """
    field = b.field if isinstance(b, Scalar) else c.field
    b = field.coerce(b)
    c = field.coerce(c)
    root = field.sqrt(b * b - 4 * c)
    return (-b + root) / 2, (-b - root) / 2
