"""Auxiliary special functions feeding the Lerch evaluation routes.

Exact rational machinery (Bernoulli numbers, the polynomials giving the
derivatives of cot(pi a)) lives next to the floating-point summations
(polylogarithm, Hurwitz zeta, polygamma) so that the identity checks can
pit independent computations against each other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (
    DivergentAtOne,
    DomainError,
    PoleAtInteger,
    PoleAtNonPositiveInteger,
    ToleranceNotMet,
)

__all__ = [
    "bernoulli",
    "tan_series_coeff",
    "CotDerivPolynomial",
    "cot_deriv_polynomial",
    "cot_pi",
    "cot_pi_derivative",
    "polylog",
    "hurwitz_zeta",
    "polygamma",
    "dist_to_nearest_integer",
]

# Refusal radius around the poles a = 0, -1, -2, ... shared by every route.
POLE_GUARD = 1e-8


class _CompensatedSum:
    """Neumaier-compensated accumulation, applied per real/imag component."""

    __slots__ = ("_sr", "_si", "_cr", "_ci")

    def __init__(self) -> None:
        self._sr = self._si = 0.0
        self._cr = self._ci = 0.0

    def add(self, z: complex) -> None:
        z = complex(z)
        sr, t = self._sr, self._sr + z.real
        self._cr += (sr - t + z.real) if abs(sr) >= abs(z.real) else (z.real - t + sr)
        self._sr = t
        si, t = self._si, self._si + z.imag
        self._ci += (si - t + z.imag) if abs(si) >= abs(z.imag) else (z.imag - t + si)
        self._si = t

    @property
    def total(self) -> complex:
        return complex(self._sr + self._cr, self._si + self._ci)


def dist_to_nearest_integer(a: complex) -> float:
    """Distance from complex a to the nearest point of the integer lattice on R."""
    a = complex(a)
    return abs(a - round(a.real))


def require_off_nonpositive_poles(a: complex) -> None:
    """Reject a within POLE_GUARD of 0, -1, -2, ... (a genuine pole of order n)."""
    a = complex(a)
    k = round(a.real)
    if k <= 0 and abs(a - k) <= POLE_GUARD:
        raise PoleAtNonPositiveInteger(
            f"a = {a} is within {POLE_GUARD:g} of the pole at {k}"
        )


# ---------------------------------------------------------------------------
# Bernoulli numbers (exact rationals)

_bernoulli_cache: list[Fraction] = []


def _grow_bernoulli_cache(n: int) -> None:
    # Akiyama-Tanigawa triangle; it yields B_1 = +1/2, flipped below to the
    # B_1 = -1/2 convention (only |B_{2n}| is consumed downstream anyway).
    row: list[Fraction] = []
    out: list[Fraction] = []
    for m in range(n + 1):
        row.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    if n >= 1:
        out[1] = Fraction(-1, 2)
    _bernoulli_cache[:] = out


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k (convention B_1 = -1/2)."""
    if k < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if k >= len(_bernoulli_cache):
        _grow_bernoulli_cache(k + 16)
    return _bernoulli_cache[k]


def tan_series_coeff(n: int) -> Fraction:
    """Exact coefficient of alpha^(2n-1) in the tangent Maclaurin series:
    2^(2n) (2^(2n) - 1) |B_{2n}| / (2n)!."""
    if n < 1:
        raise ValueError("tangent-series index must be >= 1")
    p = 2 ** (2 * n)
    return Fraction(p * (p - 1)) * abs(bernoulli(2 * n)) / factorial(2 * n)


# ---------------------------------------------------------------------------
# Derivatives of cot(pi a) as polynomials in c = cot(pi a)

@dataclass(frozen=True)
class CotDerivPolynomial:
    """d^j/da^j cot(pi a) = pi^j * sum_k coeffs[k] c^k with c = cot(pi a).

    Coefficients are exact integers; the recurrence Q_{j+1} = -(1 + c^2) Q_j'
    (equivalently P_{j+1} = -pi (1 + c^2) P_j' with P_j = pi^j Q_j) holds
    exactly, starting from Q_0 = c.
    """

    degree: int
    coeffs: tuple[int, ...]

    def evaluate(self, c: complex) -> complex:
        acc = 0j
        for coef in reversed(self.coeffs):
            acc = acc * c + coef
        return acc * math.pi ** self.degree


_cot_poly_cache: list[CotDerivPolynomial] = [CotDerivPolynomial(0, (0, 1))]


def cot_deriv_polynomial(j: int) -> CotDerivPolynomial:
    """The j-th derivative of cot(pi a) in polynomial form."""
    if j < 0:
        raise ValueError("derivative order must be >= 0")
    while len(_cot_poly_cache) <= j:
        prev = _cot_poly_cache[-1].coeffs
        dprev = tuple(k * prev[k] for k in range(1, len(prev)))
        nxt = [0] * (len(dprev) + 2)
        for k, coef in enumerate(dprev):
            nxt[k] -= coef
            nxt[k + 2] -= coef
        _cot_poly_cache.append(
            CotDerivPolynomial(len(_cot_poly_cache), tuple(nxt))
        )
    return _cot_poly_cache[j]


def cot_pi(a: complex) -> complex:
    """cot(pi a) for complex a, with argument reduction a -> a - round(Re a)."""
    a = complex(a)
    ar = a - round(a.real)
    s = cmath.sin(math.pi * ar)
    if s == 0:
        raise PoleAtInteger(f"cot(pi a) pole at a = {a}")
    return cmath.cos(math.pi * ar) / s


def cot_pi_derivative(j: int, a: complex) -> complex:
    """Value of d^j/da^j cot(pi a)."""
    if j < 0:
        raise ValueError("derivative order must be >= 0")
    a = complex(a)
    if dist_to_nearest_integer(a) <= 1e-12:
        raise PoleAtInteger(f"cot(pi a) derivative requested at a = {a} (integer pole)")
    return cot_deriv_polynomial(j).evaluate(cot_pi(a))


# ---------------------------------------------------------------------------
# Polylogarithm

def _polylog_sum(n: int, x: complex, tol: float, max_terms: int = 300_000):
    """Direct summation of Li_n(x); returns (value, err_bound, terms).

    |x| < 1 uses the geometric tail bound; on the unit circle (x != 1) the
    sum is capped at 10^4 terms with an integral-comparison remainder, so the
    returned bound can exceed tol (callers report it honestly).
    """
    x = complex(x)
    r = abs(x)
    if n == 1:
        return -cmath.log(1.0 - x), 4e-16 * abs(cmath.log(1.0 - x)) + 1e-300, 1
    acc = _CompensatedSum()
    xp = 1.0 + 0j
    k = 0
    circle_cap = 10_000
    while True:
        k += 1
        xp *= x
        acc.add(xp / float(k) ** n)
        if r < 1.0:
            bound = r ** (k + 1) / ((k + 1) ** n * (1.0 - r))
            if bound <= tol * max(1.0, abs(acc.total)) or k >= max_terms:
                return acc.total, bound, k
        else:
            bound = float(k) ** (1 - n) / (n - 1)
            if bound <= tol * max(1.0, abs(acc.total)) or k >= circle_cap:
                return acc.total, bound, k


def polylog(n: int, x: complex, tol: float = 1e-12) -> complex:
    """Li_n(x) = sum_{k>=1} x^k / k^n for n >= 1, |x| <= 1."""
    if n < 1:
        raise DomainError("polylog order must be a positive integer")
    x = complex(x)
    r = abs(x)
    if r > 1.0 + 1e-12:
        raise DomainError(f"polylog needs |x| <= 1, got |x| = {r}")
    if n == 1 and abs(x - 1.0) <= 1e-14:
        raise DivergentAtOne("Li_1(1) diverges")
    if x == 0:
        return 0j
    if n >= 2 and abs(x - 1.0) <= 1e-14:
        return complex(hurwitz_zeta(n, 1.0))
    value, err, _ = _polylog_sum(n, x, tol)
    if err > tol * max(1.0, abs(value)):
        raise ToleranceNotMet(
            f"polylog({n}, {x}) tail bound {err:.3g} above tolerance", None
        )
    return value


# ---------------------------------------------------------------------------
# Hurwitz zeta and polygamma

def _hurwitz_zeta_sum(n: int, a: complex):
    """zeta(n, a) by direct summation plus Euler-Maclaurin tail.

    Returns (value, err_estimate, terms).  Uses M = max(20, ceil|a| + 20)
    explicit terms and four Bernoulli corrections.
    """
    if n < 2:
        raise DomainError("hurwitz_zeta needs integer order n >= 2")
    a = complex(a)
    require_off_nonpositive_poles(a)
    m_terms = max(20, math.ceil(abs(a)) + 20)
    acc = _CompensatedSum()
    for m in range(m_terms):
        acc.add(1.0 / (a + m) ** n)
    x = a + m_terms
    xinv = 1.0 / x
    tail = x ** (1 - n) / (n - 1) + 0.5 * x ** (-n)
    rising = 1.0
    power = x ** (-n) * xinv
    for k in (1, 2, 3, 4):
        # rising factorial n (n+1) ... (n + 2k - 2)
        rising *= (n + 2 * (k - 1) - 1) * (n + 2 * (k - 1)) if k > 1 else n
        tail += float(bernoulli(2 * k)) / factorial(2 * k) * rising * power
        power *= xinv * xinv
    rising *= (n + 7) * (n + 8)
    err = abs(float(bernoulli(10)) / factorial(10) * rising * power)
    return acc.total + tail, err + 1e-15 * abs(acc.total), m_terms


def hurwitz_zeta(n: int, a: complex) -> complex:
    """zeta(n, a) = Phi(1, n, a) for integer n >= 2 and a off 0, -1, -2, ..."""
    value, _, _ = _hurwitz_zeta_sum(n, a)
    return value


def polygamma(m: int, a: complex) -> complex:
    """psi^(m)(a) = (-1)^(m+1) m! zeta(m+1, a) for m >= 1."""
    if m < 1:
        raise DomainError("polygamma implemented for m >= 1 only")
    return (-1) ** (m + 1) * factorial(m) * hurwitz_zeta(m + 1, a)
