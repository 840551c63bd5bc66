"""Exception types shared across the toolkit."""


class HMSError(Exception):
    """Base class for every error raised by this package."""


class NonconvergentDomain(HMSError, ValueError):
    """A series was requested outside its domain of convergence."""


class ToleranceUnreachable(HMSError):
    """The requested tolerance cannot be met within the configured term cap."""


class PreconditionViolation(HMSError, ValueError):
    """An argument violates a documented precondition."""


class RangeError(HMSError, ValueError):
    """An integer argument lies outside its admissible range."""


class ZeroClass(HMSError, ValueError):
    """The zero homology class was given where a nonzero class is required."""


class InvalidKaehlerClass(HMSError, ValueError):
    """The Kaehler class is malformed or has Im(tau) <= 0."""


class GenericityFailure(HMSError):
    """No generic torus model was found within the retry budget."""


class FamilyNotSupported(HMSError, ValueError):
    """The triangle family has no known area law."""


class ZeroTensor(HMSError, ValueError):
    """A composition tensor with all coefficients zero."""


class IndeterminatePoint(HMSError, ValueError):
    """The sigma map is undefined at the given point."""


class RankTooLow(HMSError):
    """A contraction of the composition tensor has numerical rank <= 1."""


class NotOnCubic(HMSError, ValueError):
    """The point does not lie on the determinant cubic."""


class AmbiguousKernel(HMSError):
    """The numerical rank of a composition map is not the expected one."""


class DegeneratePoints(HMSError, ValueError):
    """Two blown-up points coincide."""

    def __init__(self, i, j, message=None):
        self.pair = (i, j)
        super().__init__(message or f"points {i} and {j} coincide")


class DegenerateClass(HMSError, ValueError):
    """The Kaehler class lies on the degenerate locus for the pair (i, j)."""

    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__(f"degenerate pair ({i}, {j})")
