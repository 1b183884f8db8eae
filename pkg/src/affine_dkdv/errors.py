"""Exception types raised across the package."""


class DKdVError(Exception):
    """Base class for domain errors."""


class NotReducedError(DKdVError):
    pass


class NotGlideError(DKdVError):
    pass


class PositivityError(DKdVError):
    """A weight or crossing parameter that must be positive is not."""


class IllegalMoveError(DKdVError):
    pass


class NotNiceError(DKdVError):
    """A set of integers fails the a-nice conditions."""


class NoPartnerError(DKdVError):
    """No cylindric partner c != b exists (b is a critical point)."""


class OutOfRangeError(DKdVError):
    """b lies outside (min alpha, max alpha) or on a root."""


class LabelRangeError(DKdVError):
    """A chamber label exceeds the evaluation bound."""


class NonPositiveTauError(DKdVError):
    pass


class ConfigError(DKdVError):
    pass
