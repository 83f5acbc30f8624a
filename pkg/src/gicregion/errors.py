"""Exception types shared by the region modules."""


class GicError(Exception):
    """Base class for all library errors."""


class ChannelError(GicError, ValueError):
    """Invalid channel description."""


class DomainError(GicError, ValueError):
    """Argument outside the domain of an operation."""


class SingularTransform(GicError, ArithmeticError):
    """The SINR-to-SNR system is singular (or within ``EPS`` of it).

    Raised for SINR targets on or beyond the asymptote where no finite
    power vector reaches them.
    """


class InfeasibleSinr(GicError, ArithmeticError):
    """The SINR-to-SNR solve returned a negative power component."""
