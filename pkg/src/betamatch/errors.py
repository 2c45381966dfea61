"""Exception hierarchy.

Every domain error carries its class name as ``name`` so the command line
front end can report it verbatim on stderr.
"""


class BetaMatchError(Exception):
    """Base class for all domain errors raised by betamatch."""

    @property
    def name(self):
        return type(self).__name__


# numberfield
class ReducibleP(BetaMatchError, ValueError):
    pass


class NoRoot(BetaMatchError, ValueError):
    pass


class MultipleRoots(BetaMatchError, ValueError):
    pass


class RootNotGreaterThanOne(BetaMatchError, ValueError):
    pass


class FieldMismatch(BetaMatchError, TypeError):
    pass


class DivisionByZero(BetaMatchError, ZeroDivisionError):
    pass


class Inconclusive(BetaMatchError):
    pass


class SignRefinementExhausted(BetaMatchError, RuntimeError):
    """Interval refinement hit its cap; indicates a bug, not a mathematical fact."""


# dynamics / paramsweep
class AlphaOutOfRange(BetaMatchError, ValueError):
    pass


class DepthTooLarge(BetaMatchError, ValueError):
    pass


# stats
class EmptySweep(BetaMatchError, ValueError):
    pass


class InsufficientData(BetaMatchError, ValueError):
    pass


class NotQuadraticPisot(BetaMatchError, ValueError):
    pass


# quadratic
class NotPisotQuadratic(BetaMatchError, ValueError):
    pass


class WrongRegime(BetaMatchError, ValueError):
    pass


class EmptyCylinder(BetaMatchError, ValueError):
    pass


# multinacci
class NotMultinacci(BetaMatchError, ValueError):
    pass


class NotACode(BetaMatchError, ValueError):
    pass


class UndefinedTransition(BetaMatchError, KeyError):
    pass


class RegimeNotImplemented(BetaMatchError, NotImplementedError):
    pass


# cli
class UsageError(BetaMatchError):
    pass
