"""
Closed formulas for twisted Alexander polynomials and torsion of torus links.

All roots of unity for a pair (p, q) live in Q(zeta_M) with M = lcm(2p, 2q), so every
formula is exact; 2cos(k*pi/p) is represented as zeta_2p^k + zeta_2p^-k.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import pandas as pd

from src.models.laurent import LaurentPoly, RationalFn, rational_reduce
from src.models.presentation import TorusLinkParams
from src.models.scalars import cyclotomic_field, embed_complex

GROWTH_COLUMNS = ["n", "torsion", "log_torsion_over_n", "predicted_limit", "gap"]


@dataclass(frozen=True)
class TorusEigenData:
    """
    Eigenvalue labels of a representation of a torus-link group and the target dimension.

    Attributes:
        params (TorusLinkParams): The link.
        a (int): X has eigenvalues exp(+-i*pi*a/p), 0 <= a <= p.
        b (int): Y has eigenvalues exp(+-i*pi*b/q), 0 <= b <= q.
        n (int): Dimension of the symmetric power, at least 1.
        order (int, optional): Cyclotomic order to compute in; a multiple of lcm(2p, 2q).
    """
    params: TorusLinkParams
    a: int
    b: int
    n: int = 2
    order: int = None

    def __post_init__(self):
        p, q = self.params.p, self.params.q
        if not 0 <= self.a <= p:
            raise ValueError(f"a={self.a} out of range 0..{p}")
        if not 0 <= self.b <= q:
            raise ValueError(f"b={self.b} out of range 0..{q}")
        if (self.a - self.b) % 2:
            raise ValueError(f"a and b must have equal parity, got a={self.a}, b={self.b}")
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        base = math.lcm(2 * p, 2 * q)
        order = base if self.order is None else self.order
        if order % base:
            raise ValueError(f"Order {order} is not a multiple of lcm(2p, 2q) = {base}")
        object.__setattr__(self, "order", order)

    @property
    def irreducible_flag(self):
        return 0 < self.a < self.params.p and 0 < self.b < self.params.q

    @property
    def p_prime(self):
        return self.params.p // math.gcd(self.a, self.params.p)

    @property
    def q_prime(self):
        return self.params.q // math.gcd(self.b, self.params.q)

    @property
    def field(self):
        return cyclotomic_field(self.order)

    @property
    def alpha(self):
        return self.field.root_of_unity(2 * self.params.p, self.a)

    @property
    def beta(self):
        return self.field.root_of_unity(2 * self.params.q, self.b)

    def with_n(self, n):
        return TorusEigenData(self.params, self.a, self.b, n, self.order)


def _t(field, k, coefficient=1):
    return LaurentPoly.monomial(field, 1, (k,), coefficient)


def _cos2(z, k):
    """z^k + z^-k."""
    return z ** k + z ** -k


def _palindromic(field, e, c):
    """t^(2e) - c t^e + 1."""
    return _t(field, 2 * e) - _t(field, e, c) + 1


def closed_form_sl2_unreduced(data):
    """(t^pq - (-1)^a)^(2mu) / ((t^p - beta)(t^p - beta^-1)(t^q - alpha)(t^q - alpha^-1))."""
    if data.n != 2:
        raise ValueError(f"closed_form_sl2 needs n = 2, got n = {data.n}")
    field = data.field
    p, q, mu = data.params.p, data.params.q, data.params.mu
    alpha, beta = data.alpha, data.beta
    numerator = (_t(field, p * q) - (-1) ** data.a) ** (2 * mu)
    denominator = ((_t(field, p) - beta) * (_t(field, p) - beta.inverse())
                   * (_t(field, q) - alpha) * (_t(field, q) - alpha.inverse()))
    return RationalFn(numerator, denominator)


def closed_form_sl2(data):
    """
    Twisted Alexander polynomial of an SL(2) representation of T(mu p, mu q), reduced.

    Args:
        data (TorusEigenData): Labels with n = 2.

    Returns:
        RationalFn: Function of the single variable t = t_1 ... t_mu.
    """
    return rational_reduce(closed_form_sl2_unreduced(data))


def closed_form_symn_unreduced(data):
    """The n-dimensional formula before gcd reduction."""
    field = data.field
    p, q, mu, n = data.params.p, data.params.q, data.params.mu, data.n
    alpha, beta = data.alpha, data.beta
    if n % 2 == 0:
        numerator = (_t(field, p * q) - (-1) ** data.a) ** (n * mu)
        denominator = LaurentPoly.one(field, 1)
        for j in range(n // 2):
            denominator = (denominator * _palindromic(field, q, _cos2(alpha, 2 * j + 1))
                           * _palindromic(field, p, _cos2(beta, 2 * j + 1)))
    else:
        numerator = (_t(field, p * q) - 1) ** (n * mu)
        denominator = (_t(field, p) - 1) * (_t(field, q) - 1)
        for j in range(1, (n - 1) // 2 + 1):
            denominator = (denominator * _palindromic(field, q, _cos2(alpha, 2 * j))
                           * _palindromic(field, p, _cos2(beta, 2 * j)))
    return RationalFn(numerator, denominator)


def closed_form_symn(data):
    """
    Twisted Alexander polynomial for the n-dimensional lift, reduced.

    Args:
        data (TorusEigenData): Labels and dimension.

    Returns:
        RationalFn: Function of t; for n = 1 the classical Alexander polynomial over (t - 1).
    """
    reduced = rational_reduce(closed_form_symn_unreduced(data))
    logging.debug(f"Closed form for n={data.n}, a={data.a}, b={data.b}: {reduced}")
    return reduced


def _sine_square_factors(data, j):
    """sin^2((2j+1) a pi / 2p) and sin^2((2j+1) b pi / 2q) as exact field elements."""
    k = 2 * j + 1
    return (2 - _cos2(data.alpha, k)) / 4, (2 - _cos2(data.beta, k)) / 4


def _check_torsion_parity(data):
    if data.n % 2 or data.a % 2 == 0 or data.b % 2 == 0:
        raise ValueError(f"torsion formula needs n even and a, b odd (n={data.n}, a={data.a}, b={data.b})")


def torsion_closed_form(data):
    """
    Torsion 2^(n(mu-2)) / prod_j sin^2((2j+1)a pi/2p) sin^2((2j+1)b pi/2q), exactly.

    Args:
        data (TorusEigenData): Labels with n even and a, b odd.

    Returns:
        CyclotomicScalar: A positive rational-real element of the field.
    """
    _check_torsion_parity(data)
    field = data.field
    value = field.from_fraction(Fraction(2) ** (data.n * (data.params.mu - 2)))
    for j in range(data.n // 2):
        sa, sb = _sine_square_factors(data, j)
        value = value / (sa * sb)
    return value


def torsion_via_evaluation(data):
    """
    Torsion as the reduced closed form evaluated at t = 1.

    Raises:
        ValueError: n is odd, or the reduced denominator vanishes at 1.
    """
    if data.n % 2:
        raise ValueError("torsion undefined: denominator vanishes at t=1")
    formula = closed_form_symn(data)
    one = data.field.one()
    if formula.den.evaluate([one]).is_zero():
        raise ValueError("torsion undefined: denominator vanishes at t=1")
    return formula.num.evaluate([one]) / formula.den.evaluate([one])


def growth_limit(data):
    """(mu - 1/p' - 1/q') log 2 with p' = p/gcd(a, p) and q' = q/gcd(b, q)."""
    return (data.params.mu - 1 / data.p_prime - 1 / data.q_prime) * math.log(2)


@dataclass(frozen=True)
class GrowthReport:
    """
    Growth of log torsion / n over even n.

    Attributes:
        table (DataFrame): Columns n, torsion, log_torsion_over_n, predicted_limit, gap.
        limit (float): Predicted limit.
        final_gap (float): gap at the largest n.
        block_maxima (tuple): max |gap| over consecutive blocks of rows.
        trend_ok (bool): Whether the block maxima never increase.
    """
    table: pd.DataFrame
    limit: float
    final_gap: float
    block_maxima: tuple
    trend_ok: bool


def torsion_growth(data, n_max, precision=128):
    """
    Sweeps n = 2, 4, ..., n_max and compares log(torsion)/n with the predicted limit.

    Each new pair of sine factors is formed exactly and its logarithm added at the working precision,
    so the table is built in one pass.

    Args:
        data (TorusEigenData): Labels with a, b odd (its n is ignored).
        n_max (int): Largest even n.
        precision (int): Bits used for logarithms.

    Returns:
        GrowthReport: The table and trend check.
    """
    _check_torsion_parity(data.with_n(2))
    if n_max < 2:
        raise ValueError(f"n_max must be at least 2, got {n_max}")
    limit = growth_limit(data)
    mu = data.params.mu
    rows = []
    log_sines = None
    for n in range(2, n_max + 1, 2):
        sa, sb = _sine_square_factors(data, n // 2 - 1)
        a_value = embed_complex(sa, precision)
        ctx = a_value.field.ctx
        term = ctx.log(a_value.re) + ctx.log(embed_complex(sb, precision).re)
        log_sines = term if log_sines is None else log_sines + term
        log_torsion = n * (mu - 2) * ctx.log(2) - log_sines
        ratio = float(log_torsion / n)
        rows.append({"n": n, "torsion": ctx.nstr(ctx.exp(log_torsion), 15), "log_torsion_over_n": ratio,
                     "predicted_limit": limit, "gap": ratio - limit})
    table = pd.DataFrame(rows, columns=GROWTH_COLUMNS)
    block = max(10, math.lcm(data.p_prime, data.q_prime))
    gaps = np.abs(table["gap"].to_numpy())
    maxima = tuple(float(gaps[i:i + block].max()) for i in range(0, len(gaps) - block + 1, block))
    trend_ok = all(later <= earlier + 1e-15 for earlier, later in zip(maxima, maxima[1:]))
    final_gap = float(table["gap"].iloc[-1])
    logging.info(f"Growth sweep to n={n_max}: final gap {final_gap:.6f}, trend {'ok' if trend_ok else 'broken'}")
    return GrowthReport(table, limit, final_gap, maxima, trend_ok)
