"""Exception types shared across the library."""


class LerchError(Exception):
    """Base class for every library-specific error."""


class DomainError(LerchError, ValueError):
    """Arguments fall outside the validity region of the requested route."""


class PoleAtInteger(DomainError):
    """cot(pi a) or one of its derivatives was requested at integer a."""


class PoleAtNonPositiveInteger(DomainError):
    """a sits (numerically) on one of the poles 0, -1, -2, ... of Phi(z, n, a)."""


class NearIntegerShift(DomainError):
    """Shift too close to a positive integer for the inverse-argument expansion;
    the integer-shift route applies instead."""


class DivergentAtOne(DomainError):
    """Li_1(x) requested at x = 1, where the series diverges."""


class PoleOffRay(DomainError):
    """Declared principal-value pole does not lie on the integration ray."""


class ResidualPole(LerchError, ArithmeticError):
    """Negative Laurent degrees survived a finite-part extraction that should
    have cancelled them analytically; indicates a wrong pole subtraction."""


class ToleranceNotMet(LerchError):
    """Requested tolerance could not be certified.

    ``result`` carries the best available value with its honest error
    estimate, or None when no usable value was produced.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
