"""Exception hierarchy. Every error raised on bad input derives from ``EdsError``."""


class EdsError(Exception):
    """Base class for validation errors (the CLI maps these to exit code 2)."""


class SingularCurve(EdsError):
    pass


class PointNotOnCurve(EdsError):
    pass


class TorsionPoint(EdsError):
    pass


class NotPrime(EdsError):
    pass


class IncompleteSequence(EdsError):
    pass


class WidthUnreachable(EdsError):
    pass


class BadConductor(EdsError):
    pass


class FactorizationIncomplete(EdsError):
    pass


class MissingPrerequisite(EdsError):
    pass


class InputError(EdsError):
    """Malformed input file or record."""
