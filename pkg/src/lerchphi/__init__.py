"""Lerch transcendent Phi(z, n, a) for positive integer order n.

Five cross-validating evaluation routes (series, exponential-kernel
integral, principal-value ray representation, inverse-argument expansion,
integer-shift finite part), a region/branch classifier, and residual checks
for the symmetry relation and the surrounding identity web.
"""

from .engine import (
    BranchData,
    LerchQuery,
    Region,
    classify,
    extended_polylog,
    phi,
    phi_integer_a,
    phi_integer_a_explicit,
    phi_integral,
    phi_inverse,
    phi_pv,
    phi_series,
    symmetry_transform,
)
from .errors import (
    DivergentAtOne,
    DomainError,
    LerchError,
    NearIntegerShift,
    PoleAtInteger,
    PoleAtNonPositiveInteger,
    PoleOffRay,
    ResidualPole,
    ToleranceNotMet,
)
from .identities import (
    residual_hurwitz_reflection,
    residual_pde,
    residual_polygamma_reflection,
    residual_s_ladder,
    residual_shift,
    residual_symmetry,
)
from .quadrature import PoleSpec, RayIntegrand, integrate_ray, pv_integrate_ray
from .result import EvalResult
from .series_algebra import (
    TruncatedLaurentSeries,
    cot_pi_laurent,
    differentiate,
    exp_series,
    finite_part_limit,
    mul,
)
from .special_functions import (
    CotDerivPolynomial,
    bernoulli,
    cot_deriv_polynomial,
    cot_pi,
    cot_pi_derivative,
    hurwitz_zeta,
    polygamma,
    polylog,
    tan_series_coeff,
)

__version__ = "0.1.0"
