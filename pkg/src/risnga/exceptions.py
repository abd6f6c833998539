"""Exception types raised by risnga."""


class InvalidConfigurationError(ValueError):
    """A phase configuration or scenario parameter is out of range."""


class SingularChannelError(ArithmeticError):
    """The effective channel Gram matrix is (numerically) singular."""


class DegenerateSampleError(ValueError):
    """A correlation estimate was requested on a zero-variance sample."""


class UndefinedLengthError(ValueError):
    """Correlation length is undefined because rho(1) == 0."""
