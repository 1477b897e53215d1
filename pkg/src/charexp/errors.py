"""Exception types raised by :mod:`charexp`."""


class InvalidLabelError(ValueError):
    """A partition or representation label violates its invariants."""


class DegenerateEigenvaluesError(ValueError):
    """Weyl's ratio formula was asked to divide by a vanishing Vandermonde."""


class SingularInputError(ValueError):
    """A zero eigenvalue was raised to a negative power."""


class ConvergenceDomainError(ValueError):
    """A generating-function parameter lies outside its convergence domain."""


class UnsupportedSupportError(ValueError):
    """A series convolution would need infinitely many terms."""


class SingularEvaluationError(ArithmeticError):
    """A closed-form generating function hit a pole."""


class UnsupportedRankError(ValueError):
    """Torus quadrature was requested for a group rank it does not handle."""


class ResourceLimitError(RuntimeError):
    """An expansion would produce more terms than the configured maximum."""
