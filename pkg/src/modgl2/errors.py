"""Exception hierarchy shared by every module of the package."""


class ModGL2Error(Exception):
    """Base class for domain errors raised by modgl2."""


class OutOfRangeExponent(ModGL2Error, ValueError):
    """A weight vector entry lies outside ``0..p-1``."""


class FieldMismatch(ModGL2Error, ValueError):
    """Two operands live over different base fields."""


class PreconditionViolated(ModGL2Error, ValueError):
    pass


class LemmaFailure(ModGL2Error, AssertionError):
    """A weight-shifting inequality that should always hold came out false.

    This never happens for a correct engine; it is raised instead of returning
    a silent ``False`` so that sweeps stop at the first offending instance.
    """


class DivisibilityFailed(ModGL2Error, ValueError):
    pass


class NoNormPowerForm(ModGL2Error, ValueError):
    """The central character is not a power of the norm of the required shape."""


class SizeBound(ModGL2Error, ValueError):
    """The field is too large for the exact character arithmetic budget."""


class CentralCharacterMismatch(ModGL2Error, ValueError):
    pass
