"""Exception hierarchy.

Every error raised for a bad domain input derives from `NCTorusError`, which
is itself a `ValueError`, so callers can catch the whole family at once. The
command line maps these to exit code 1.
"""


class NCTorusError(ValueError):
    pass


class ParameterMismatchError(NCTorusError):
    """Two objects built over different rotation parameters were combined."""


class InvalidParameterError(NCTorusError):
    pass


class UnsupportedParameterError(InvalidParameterError):
    """The operation is defined, but not for this kind of parameter."""


class SupportExceedsBandError(NCTorusError):
    """An element has monomials outside the truncation band."""


class NotInRangeError(NCTorusError):
    pass


class AmbiguousResolutionError(NCTorusError):
    pass


class NotAProjectionError(NCTorusError):
    pass


class PrecisionError(NCTorusError):
    pass


class DegenerateInputError(NCTorusError):
    pass


class NumericalError(NCTorusError):
    pass
