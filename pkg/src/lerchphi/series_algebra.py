"""Arithmetic on truncated Laurent series in one small complex variable eps.

A series is a contiguous coefficient window [min_degree, order]; degrees
below min_degree are exactly zero (true valuation floor), degrees above
order are unknown.  Operations shrink the window conservatively so the
finite-part extraction never reads a coefficient that truncation made
unreliable.  Everything is immutable and pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ResidualPole
from .special_functions import bernoulli

__all__ = [
    "TruncatedLaurentSeries",
    "exp_series",
    "cot_pi_laurent",
    "monomial",
    "mul",
    "add",
    "sub",
    "differentiate",
    "finite_part_limit",
]

# Cancellation is exact analytically; residues above this relative level
# indicate a wrong pole subtraction, not floating-point noise.
POLE_CANCEL_RTOL = 1e-12


@dataclass(frozen=True)
class TruncatedLaurentSeries:
    min_degree: int
    coeffs: tuple  # coeffs[k] multiplies eps**(min_degree + k)

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("series needs at least one retained coefficient")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        """Highest retained power of eps."""
        return self.min_degree + len(self.coeffs) - 1

    def coefficient(self, degree: int) -> complex:
        if degree < self.min_degree:
            return 0j
        if degree > self.order:
            raise IndexError(
                f"degree {degree} above retained order {self.order}"
            )
        return self.coeffs[degree - self.min_degree]

    def eval_at(self, eps: complex) -> complex:
        """Pointwise value of the retained window; test oracle, not used by
        the finite-part path."""
        return sum(
            c * eps ** (self.min_degree + k) for k, c in enumerate(self.coeffs)
        )

    def scale(self, factor: complex) -> "TruncatedLaurentSeries":
        return TruncatedLaurentSeries(
            self.min_degree, tuple(factor * c for c in self.coeffs)
        )


def exp_series(c: complex, order: int) -> TruncatedLaurentSeries:
    """Taylor window of exp(c * eps): coefficient of eps^k is c^k / k!."""
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = []
    term = 1.0 + 0j
    for k in range(order + 1):
        if k:
            term = term * c / k
        coeffs.append(term)
    return TruncatedLaurentSeries(0, tuple(coeffs))


def cot_pi_laurent(order: int) -> TruncatedLaurentSeries:
    """Laurent window of cot(pi eps) about 0.

    Pole coefficient 1/pi at eps^-1; even powers >= 0 vanish; the odd-power
    coefficients come from even Bernoulli numbers, held as exact rationals
    and converted to floats at the last moment.
    """
    if order < -1:
        raise ValueError("order must be >= -1")
    coeffs: list[complex] = [complex(1.0 / math.pi)]
    for d in range(order + 1):
        if d % 2 == 0:
            coeffs.append(0j)
        else:
            k = (d + 1) // 2  # d = 2k - 1
            frac = (
                Fraction(2 ** (2 * k))
                * abs(bernoulli(2 * k))
                / math.factorial(2 * k)
            )
            coeffs.append(complex(-float(frac) * math.pi ** (2 * k - 1)))
    return TruncatedLaurentSeries(-1, tuple(coeffs))


def monomial(coeff: complex, degree: int, order: int) -> TruncatedLaurentSeries:
    """coeff * eps^degree, zero-padded up to the given (exactly known) order."""
    if order < degree:
        raise ValueError("order must be >= degree")
    return TruncatedLaurentSeries(
        degree, (complex(coeff),) + (0j,) * (order - degree)
    )


def mul(
    a: TruncatedLaurentSeries, b: TruncatedLaurentSeries
) -> TruncatedLaurentSeries:
    """Cauchy product truncated to the minimum common reliable order.

    Each coefficient is an fsum of the cross products, so the result is
    independent of argument order (mul commutes bitwise).
    """
    min_degree = a.min_degree + b.min_degree
    order = min(a.order + b.min_degree, b.order + a.min_degree)
    if order < min_degree:
        raise ValueError("product windows do not overlap reliably")
    coeffs = []
    for d in range(min_degree, order + 1):
        base = d - min_degree  # i + j = base over the coefficient arrays
        terms = [
            a.coeffs[i] * b.coeffs[base - i]
            for i in range(
                max(0, base - len(b.coeffs) + 1),
                min(len(a.coeffs), base + 1),
            )
        ]
        coeffs.append(
            complex(
                math.fsum(t.real for t in terms),
                math.fsum(t.imag for t in terms),
            )
        )
    return TruncatedLaurentSeries(min_degree, tuple(coeffs))


def add(
    a: TruncatedLaurentSeries, b: TruncatedLaurentSeries
) -> TruncatedLaurentSeries:
    """Coefficientwise sum on the common reliable window."""
    min_degree = min(a.min_degree, b.min_degree)
    order = min(a.order, b.order)
    if order < min_degree:
        raise ValueError("sum windows do not overlap reliably")
    coeffs = []
    for d in range(min_degree, order + 1):
        ca = a.coefficient(d) if d <= a.order else 0j
        cb = b.coefficient(d) if d <= b.order else 0j
        coeffs.append(ca + cb)
    return TruncatedLaurentSeries(min_degree, tuple(coeffs))


def sub(
    a: TruncatedLaurentSeries, b: TruncatedLaurentSeries
) -> TruncatedLaurentSeries:
    return add(a, b.scale(-1.0))


def differentiate(s: TruncatedLaurentSeries, j: int = 1) -> TruncatedLaurentSeries:
    """j-fold coefficientwise d/d eps; min_degree and order both drop by j."""
    if j < 0:
        raise ValueError("derivative order must be >= 0")
    cur = s
    for _ in range(j):
        coeffs = tuple(
            (cur.min_degree + k) * c for k, c in enumerate(cur.coeffs)
        )
        cur = TruncatedLaurentSeries(cur.min_degree - 1, coeffs)
    return cur


def finite_part_limit(s: TruncatedLaurentSeries) -> complex:
    """The eps^0 coefficient, after asserting that every strictly negative
    degree has cancelled to POLE_CANCEL_RTOL relative."""
    if not (s.min_degree <= 0 <= s.order):
        raise ValueError("series window must contain degree 0")
    scale = max(abs(c) for c in s.coeffs)
    for d in range(s.min_degree, 0):
        resid = abs(s.coefficient(d))
        if resid > POLE_CANCEL_RTOL * scale:
            raise ResidualPole(
                f"coefficient {resid:.3g} at eps^{d} survives the finite-part "
                f"limit (relative scale {scale:.3g})"
            )
    return s.coefficient(0)
