"""Evaluation routes for Phi(z, n, a) with positive integer order n.

Five routes cover the z-plane: the defining power series inside the unit
disc, the exponential-kernel integral for Re a > 0, the principal-value ray
representation inside the cut disc, the inverse-argument expansion outside
the circle, and the Laurent finite-part route for integer shifts.  All
powers use the principal logarithm, arg in (-pi, pi], which is what makes
the sign of phi = arg(-ln z) meaningful.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from math import comb, factorial

from . import series_algebra as sa
from .errors import (
    DomainError,
    NearIntegerShift,
    PoleAtInteger,
    ToleranceNotMet,
)
from .quadrature import PoleSpec, RayIntegrand, integrate_ray, pv_integrate_ray
from .result import EvalResult
from .special_functions import (
    _CompensatedSum,
    _polylog_sum,
    _hurwitz_zeta_sum,
    cot_pi,
    cot_pi_derivative,
    dist_to_nearest_integer,
    require_off_nonpositive_poles,
)

__all__ = [
    "LerchQuery",
    "BranchData",
    "Region",
    "classify",
    "phi",
    "phi_series",
    "phi_integral",
    "phi_pv",
    "phi_inverse",
    "phi_integer_a",
    "phi_integer_a_explicit",
    "symmetry_transform",
    "extended_polylog",
]

# Dispatcher band around |z| = 1 inside which neither the plain series nor
# the geometric tail bound of the inverse expansion converges comfortably.
_CIRCLE_BAND = 1e-6

# Relative tolerance for positive-real-axis membership (sgn(phi) = 0 there).
_AXIS_RTOL = 1e-14

# Shifts within this distance of a positive integer are rerouted to the
# integer-shift (Laurent finite part) route.
_INTEGER_SHIFT_GUARD = 1e-8


class Region(Enum):
    ZERO = "Zero"
    ONE = "One"
    INSIDE_DISC = "InsideDiscD"
    INSIDE_REAL_SEGMENT = "InsideRealSegment"
    UNIT_CIRCLE = "UnitCircle"
    EXTERIOR = "Exterior"
    EXTERIOR_REAL_LINE = "ExteriorRealLine"


@dataclass(frozen=True)
class LerchQuery:
    z: complex
    n: int
    a: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "a", complex(self.a))
        _validate_order(self.n)


@dataclass(frozen=True)
class BranchData:
    log_z: complex
    phi: float
    sgn_phi: int
    region: Region


def _validate_order(n) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"order must be a positive integer, got {n!r}")


def _on_positive_real_axis(z: complex) -> bool:
    return z.real > 0 and abs(z.imag) <= _AXIS_RTOL * abs(z)

def _is_real(z: complex) -> bool:
    return abs(z.imag) <= _AXIS_RTOL * abs(z)


def _near_positive_integer(a: complex):
    """Rounded positive integer if a lies within the reroute guard, else None."""
    k = round(a.real)
    if k >= 1 and abs(a - k) < _INTEGER_SHIFT_GUARD:
        return k
    return None


def _cpow(base: complex, expo: complex) -> complex:
    """Principal-branch power exp(expo * Log base)."""
    return cmath.exp(expo * cmath.log(base))


def classify(z: complex) -> BranchData:
    """Region and branch data for z: principal log, phi, sgn(phi).

    phi follows the disc convention arg(-ln z) for |z| <= 1 and the
    inverse-argument convention arg(ln w), w = z, outside.
    """
    z = complex(z)
    if z == 0:
        return BranchData(complex("nan"), math.nan, 0, Region.ZERO)
    log_z = cmath.log(z)
    r = abs(z)
    on_axis = _on_positive_real_axis(z)
    if abs(z - 1.0) <= _AXIS_RTOL:
        return BranchData(log_z, 0.0, 0, Region.ONE)
    if abs(r - 1.0) <= _AXIS_RTOL:
        phi_angle = cmath.phase(-log_z)
        return BranchData(log_z, phi_angle, _sign(phi_angle), Region.UNIT_CIRCLE)
    if r < 1.0:
        phi_angle = cmath.phase(-log_z)
        region = Region.INSIDE_REAL_SEGMENT if on_axis else Region.INSIDE_DISC
        return BranchData(log_z, phi_angle, 0 if on_axis else _sign(phi_angle), region)
    phi_angle = cmath.phase(log_z)
    region = Region.EXTERIOR_REAL_LINE if _is_real(z) else Region.EXTERIOR
    return BranchData(log_z, phi_angle, 0 if on_axis else _sign(phi_angle), region)


def _sign(x: float) -> int:
    return 1 if x > 0 else (-1 if x < 0 else 0)


# ---------------------------------------------------------------------------
# Route 1: defining series, |z| < 1 (or |z| = 1 with n >= 2)

def phi_series(z: complex, n: int, a: complex, tol: float = 1e-10) -> EvalResult:
    """Compensated summation of sum_m z^m / (a + m)^n with a certified tail."""
    z, a = complex(z), complex(a)
    _validate_order(n)
    require_off_nonpositive_poles(a)
    r = abs(z)
    if r > 1.0 + 1e-12:
        raise DomainError(f"series route needs |z| <= 1, got |z| = {r:.6g}")
    on_circle = r > 1.0 - 1e-12
    if on_circle and n == 1:
        raise DomainError("series on |z| = 1 needs n >= 2")
    if on_circle and abs(z - 1.0) <= 1e-12:
        value, err, terms = _hurwitz_zeta_sum(n, a)
        # pick up the (tiny) difference between z and 1 exactly on the band
        err += abs(z - 1.0) * 40.0
        return EvalResult(value, err, "series", terms)

    acc = _CompensatedSum()
    zp = 1.0 + 0j
    m = 0
    abs_a = abs(a)
    min_m = int(2 * abs_a) + 4
    cap = max(10_000 if on_circle else 300_000, min_m + 8)
    while True:
        acc.add(zp / (a + m) ** n)
        zp *= z
        m += 1
        if m >= min_m:
            # remaining tail starts at index m
            gap = m - abs_a
            if on_circle:
                bound = (m - 1 - abs_a) ** (1 - n) / (n - 1)
            else:
                bound = r ** m / ((1.0 - r) * gap ** n)
                if n >= 2:
                    # sharper than the geometric bound when |z| -> 1
                    bound = min(bound, (m - 1 - abs_a) ** (1 - n) / (n - 1))
            if bound <= tol * max(1.0, abs(acc.total)) or m >= cap:
                break
    value = acc.total
    result = EvalResult(value, bound, "series", m)
    if bound > tol * max(1.0, abs(value)):
        raise ToleranceNotMet(
            f"series tail bound {bound:.3g} above tolerance after {m} terms",
            result,
        )
    return result


# ---------------------------------------------------------------------------
# Route 2: exponential-kernel integral, Re a > 0, z off [1, oo)

def phi_integral(z: complex, n: int, a: complex, tol: float = 1e-10) -> EvalResult:
    """(1/(n-1)!) * integral over t in [0, oo) of t^(n-1) e^(-a t) / (1 - z e^(-t))."""
    z, a = complex(z), complex(a)
    _validate_order(n)
    if a.real <= 0:
        raise DomainError(f"integral route needs Re a > 0, got {a}")
    if _is_real(z) and z.real >= 1.0 - 1e-14:
        raise DomainError("integral route needs z off the cut [1, oo)")

    def integrand(t: complex) -> complex:
        return t ** (n - 1) * cmath.exp(-a * t) / (1.0 - z * cmath.exp(-t))

    ray = RayIntegrand(integrand, 0.0, decay_rate=a.real, growth_degree=n - 1)
    res = integrate_ray(ray, tol)
    g = float(factorial(n - 1))
    return EvalResult(res.value / g, res.err_estimate / g, "integral",
                      res.terms_or_nodes)


# ---------------------------------------------------------------------------
# Route 3: principal-value ray representation inside the cut disc

def _leibniz_cot_sum(n: int, log_factor: complex, a: complex,
                     extra0: complex = 0j) -> complex:
    """sum_j C(n-1, j) log_factor^(n-1-j) * d^j/da^j cot(pi a), with an
    optional constant added to the j = 0 derivative (for the -sgn(phi) i
    terms, whose higher derivatives vanish)."""
    total = 0j
    for j in range(n):
        deriv = cot_pi_derivative(j, a)
        if j == 0:
            deriv += extra0
        total += comb(n - 1, j) * log_factor ** (n - 1 - j) * deriv
    return total


def phi_pv(z: complex, n: int, a: complex, tol: float = 1e-10) -> EvalResult:
    """Principal-value representation: (-1)^(n-1)/(n-1)! * {PV integral along
    arg t = phi with pole at -ln z, plus pi * d^(n-1)/da^(n-1) (z^-a cot(pi a))}."""
    z, a = complex(z), complex(a)
    _validate_order(n)
    r = abs(z)
    if not 0.0 < r < 1.0 or (_is_real(z) and z.real < 0):
        raise DomainError(
            "principal-value route needs z in the open unit disc cut along "
            f"the negative real axis, got z = {z}"
        )
    require_off_nonpositive_poles(a)
    if dist_to_nearest_integer(a) <= 1e-12:
        raise PoleAtInteger(f"trigonometric term has a pole at integer a = {a}")
    t0 = -cmath.log(z)
    phi_angle = cmath.phase(t0)
    if (a - 1).real >= 0:
        raise DomainError(f"needs Re(a - 1) < 0, got a = {a}")
    decay = -((a - 1) * cmath.exp(1j * phi_angle)).real
    if decay <= 0:
        raise DomainError(
            f"needs Re[(a - 1) e^(i phi)] < 0; violated at a = {a}, phi = "
            f"{phi_angle:.6g}"
        )

    def integrand(t: complex) -> complex:
        # e^(a t) / (z e^t - 1) rewritten overflow-free as
        # e^((a-1) t) / (z - e^(-t))
        return t ** (n - 1) * cmath.exp((a - 1.0) * t) / (z - cmath.exp(-t))

    ray = RayIntegrand(integrand, phi_angle, decay_rate=decay, growth_degree=n - 1)
    pv = pv_integrate_ray(ray, PoleSpec(t0), tol)
    trig = math.pi * _cpow(z, -a) * _leibniz_cot_sum(n, t0, a)
    g = float(factorial(n - 1))
    sign = (-1.0) ** (n - 1)
    value = sign * (pv.value + trig) / g
    err = pv.err_estimate / g + 5e-16 * (n + 1) * abs(trig) / g
    return EvalResult(value, err, "pv", pv.terms_or_nodes)


# ---------------------------------------------------------------------------
# Route 4: inverse-argument expansion, |w| > 1 off the positive real axis

def phi_inverse(w: complex, n: int, b: complex, tol: float = 1e-10) -> EvalResult:
    """Convergent expansion of Phi(w, n, b) in powers of 1/w:

    pi/(n-1)! [d^(n-1)/dt^(n-1) (w^t (sgn(phi) i - cot(pi t)))]_(t = -b)
    - sum_{m>=1} w^(-m) / (b - m)^n.
    """
    w, b = complex(w), complex(b)
    _validate_order(n)
    r = abs(w)
    if r <= 1.0 - 1e-12:
        raise DomainError(f"inverse-argument expansion needs |w| > 1, got {r:.6g}")
    if _on_positive_real_axis(w):
        raise DomainError(
            "inverse-argument expansion undefined on the positive real axis "
            "(sgn(phi) = 0)"
        )
    k = _near_positive_integer(b)
    if k is not None:
        raise NearIntegerShift(
            f"shift {b} within {_INTEGER_SHIFT_GUARD:g} of positive integer "
            f"{k}; use the integer-shift route"
        )
    require_off_nonpositive_poles(b)

    log_w = cmath.log(w)
    sgn = 1 if cmath.phase(log_w) > 0 else -1
    # Leibniz expansion of d^(n-1)/dt^(n-1) (w^t (sgn i - cot(pi t))) at t = -b
    total = 0j
    for j in range(n):
        term = comb(n - 1, j) * log_w ** (n - 1 - j)
        if j == 0:
            total += term * (sgn * 1j - cot_pi(-b))
        else:
            total -= term * cot_pi_derivative(j, -b)
    trig = math.pi / factorial(n - 1) * _cpow(w, -b) * total

    acc = _CompensatedSum()
    winv = 1.0 / w
    rinv = abs(winv)
    wp = 1.0 + 0j
    m = 0
    abs_b = abs(b)
    # effectively on the circle: fixed-term fallback with an explicit
    # remainder bound, reported honestly (no useful convergence rate there)
    cap = max(10_000 if rinv > 1.0 - 1e-5 else 300_000, int(abs_b) + 16)
    bound = math.inf
    while True:
        m += 1
        wp *= winv
        acc.add(wp / (b - m) ** n)
        if m > abs_b + 1:
            bound = math.inf
            if rinv < 1.0:
                bound = rinv ** (m + 1) / ((1.0 - rinv) * (m + 1 - abs_b) ** n)
            if n >= 2:
                bound = min(bound, rinv ** (m + 1) * (m - abs_b) ** (1 - n) / (n - 1))
            # absolute target: the trig term may cancel most of the sum
            if bound <= 0.5 * tol:
                break
        if m >= cap:
            break
    value = trig - acc.total
    err = bound + 5e-16 * (n + 1) * abs(trig)
    result = EvalResult(value, err, "inverse", m)
    if bound > tol * max(1.0, abs(value)):
        raise ToleranceNotMet(
            f"inverse-expansion tail bound {bound:.3g} above tolerance after "
            f"{m} terms",
            result,
        )
    return result


# ---------------------------------------------------------------------------
# Route 5: integer shift b = N via the Laurent finite part

def _integer_shift_limit(n: int, log_w: complex) -> complex:
    """lim_{eps -> 0} { pi/(n-1)! d^(n-1)/d eps^(n-1) (-w^eps cot(pi eps))
    - (-1)^n / eps^n }, extracted from truncated Laurent arithmetic."""
    order = n + 2
    prod = sa.mul(sa.exp_series(log_w, order), sa.cot_pi_laurent(order))
    deriv = sa.differentiate(prod, n - 1).scale(-math.pi / factorial(n - 1))
    pole = sa.monomial((-1.0) ** n, -n, deriv.order)
    return sa.finite_part_limit(sa.sub(deriv, pole))


def phi_integer_a(w: complex, n: int, N: int, tol: float = 1e-10) -> EvalResult:
    """Phi(w, n, N) for positive integer shift N, |w| > 1 off [0, oo)."""
    w = complex(w)
    _validate_order(n)
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise DomainError(f"shift must be a positive integer, got {N!r}")
    r = abs(w)
    if r <= 1.0 - 1e-12:
        raise DomainError(f"integer-shift route needs |w| > 1, got {r:.6g}")
    if _on_positive_real_axis(w):
        raise DomainError(
            "integer-shift route undefined on the positive real axis "
            "(sgn(phi) = 0)"
        )
    log_w = cmath.log(w)
    sgn = 1 if cmath.phase(log_w) > 0 else -1
    g = factorial(n - 1)
    finite_part = _integer_shift_limit(n, log_w)
    li_val, li_err, li_terms = _polylog_sum(n, 1.0 / w, 0.25 * tol)
    ksum = _CompensatedSum()
    for k in range(1, N):
        ksum.add(w ** k / float(k) ** n)
    inner = (
        finite_part
        + sgn * 1j * math.pi * log_w ** (n - 1) / g
        - ksum.total
        - (-1.0) ** n * li_val
    )
    w_neg_n = w ** (-N)
    value = w_neg_n * inner
    err = abs(w_neg_n) * (li_err + 2e-15 * (abs(inner) + 1.0))
    result = EvalResult(value, err, "integer-a", li_terms + max(0, N - 1))
    if err > tol * max(1.0, abs(value)):
        raise ToleranceNotMet(
            f"integer-shift route error {err:.3g} above tolerance", result
        )
    return result


_PI2 = math.pi ** 2
_PI4 = math.pi ** 4


def phi_integer_a_explicit(w: complex, n: int, N: int) -> complex:
    """Closed forms of Phi(w, n, N) for n <= 5; cross-validation table for
    the generic Laurent finite-part route."""
    w = complex(w)
    if not 1 <= n <= 5:
        raise DomainError("explicit table covers n = 1..5 only")
    lw = cmath.log(w)
    sgn = 1 if cmath.phase(lw) > 0 else -1
    limit_term = {
        1: -lw,
        2: _PI2 / 3.0 - lw ** 2 / 2.0,
        3: _PI2 / 3.0 * lw - lw ** 3 / 6.0,
        4: _PI4 / 45.0 + _PI2 / 6.0 * lw ** 2 - lw ** 4 / 24.0,
        5: _PI4 / 45.0 * lw + _PI2 / 18.0 * lw ** 3 - lw ** 5 / 120.0,
    }[n]
    ksum = sum(w ** k / float(k) ** n for k in range(1, N))
    li_val, _, _ = _polylog_sum(n, 1.0 / w, 1e-14)
    inner = (
        limit_term
        + sgn * 1j * math.pi * lw ** (n - 1) / factorial(n - 1)
        - ksum
        - (-1.0) ** n * li_val
    )
    return w ** (-N) * inner


# ---------------------------------------------------------------------------
# Symmetry relation and extended polylogarithm

def symmetry_transform(z: complex, n: int, a: complex):
    """Partner query (1/z, n, 1-a) and the trigonometric right side of

    Phi(z, n, a) + (-1)^n z^-1 Phi(1/z, n, 1-a) =
        pi (-1)^(n-1)/(n-1)! d^(n-1)/da^(n-1) (z^-a (cot(pi a) - sgn(phi) i)).

    Valid in the cut unit disc off (0, 1) and, by continuation, for |z| > 1
    off (1, oo); negative real z uses the principal branch (arg z = pi).
    """
    z, a = complex(z), complex(a)
    _validate_order(n)
    if z == 0 or _on_positive_real_axis(z):
        raise DomainError(
            "symmetry relation undefined for z on [0, oo): sgn(phi) = 0 "
            "(excluded segments (0,1), {1}, (1, oo))"
        )
    if dist_to_nearest_integer(a) <= 1e-12:
        raise PoleAtInteger(f"symmetry relation has poles at integer a = {a}")
    t0 = -cmath.log(z)
    sgn = 1 if cmath.phase(t0) > 0 else -1
    trig = (
        math.pi
        * (-1.0) ** (n - 1)
        / factorial(n - 1)
        * _cpow(z, -a)
        * _leibniz_cot_sum(n, t0, a, extra0=-sgn * 1j)
    )
    return LerchQuery(1.0 / z, n, 1.0 - a), trig


def extended_polylog(z: complex, n: int, a: complex, tol: float = 1e-10) -> EvalResult:
    """Extended polylogarithm Li_n(z, a) = z * Phi(z, n, a)."""
    z = complex(z)
    if z == 0:
        _validate_order(n)
        return EvalResult(0j, 0.0, "extended-polylog", 0)
    res = phi(z, n, a, tol)
    return EvalResult(z * res.value, abs(z) * res.err_estimate, res.method,
                      res.terms_or_nodes)


# ---------------------------------------------------------------------------
# Dispatcher

def phi(z: complex, n: int, a: complex, tol: float = 1e-10) -> EvalResult:
    """Evaluate Phi(z, n, a), selecting the route from the region of z.

    Near the unit circle (within 1e-6) convergence degrades; results whose
    tolerance could not be certified are returned with an honest error
    estimate and a method tag ending in "(degraded)".
    """
    z, a = complex(z), complex(a)
    _validate_order(n)
    require_off_nonpositive_poles(a)
    r = abs(z)
    if r <= 1.0 - _CIRCLE_BAND:
        return phi_series(z, n, a, tol)
    if r >= 1.0 + _CIRCLE_BAND:
        if _on_positive_real_axis(z):
            raise DomainError(
                f"z = {z} on the singular cut (1, oo); no implemented "
                "representation applies"
            )
        if _is_real(z) and a.real > 0:
            return phi_integral(z, n, a, tol)
        return _exterior(z, n, a, tol)
    # near the unit circle
    if abs(z - 1.0) <= 1e-12:
        if n == 1:
            raise DomainError("singular stratum z=1, n=1")
        return phi_series(1.0 + 0j, n, a, tol)
    if _on_positive_real_axis(z):
        raise DomainError(
            f"z = {z} within {_CIRCLE_BAND:g} of the singular point z = 1"
        )
    try:
        return _exterior(z, n, a, tol) if r >= 1.0 else phi_series(z, n, a, tol)
    except ToleranceNotMet as exc:
        if exc.result is None:
            raise
        res = exc.result
        return EvalResult(res.value, res.err_estimate,
                          res.method + " (degraded)", res.terms_or_nodes)


def _exterior(z: complex, n: int, a: complex, tol: float) -> EvalResult:
    k = _near_positive_integer(a)
    if k is not None:
        res = phi_integer_a(z, n, k, tol)
        if abs(a - k) > 0:
            # substitution slack for a rounded shift
            slack = abs(a - k) * (n + 1) * (1.0 + abs(res.value)) * 4.0
            res = EvalResult(res.value, res.err_estimate + slack, res.method,
                             res.terms_or_nodes)
        return res
    return phi_inverse(z, n, a, tol)
