"""Exception hierarchy shared by the library and the command line front end."""


class EngineError(Exception):
    """Base class for every error raised by ncengine."""


class InvalidParameter(EngineError, ValueError):
    """An input violates a stated precondition."""


class DegenerateCoupling(InvalidParameter):
    """The raw spring constants do not admit a normal-mode reduction (4 c1 c2 <= c3^2)."""


class NegativeModeFrequency(InvalidParameter):
    """A normal-mode frequency came out non-positive, so no thermal state exists."""


class DomainConditionViolated(EngineError):
    """A closed-form partition function was evaluated outside its stated validity condition."""


class NonPositivePartition(DomainConditionViolated):
    """A closed-form partition function evaluated to a non-positive number."""


class CutoffTooSmall(EngineError):
    """The brute-force level cutoff leaves a tail larger than the requested tolerance."""


class ZeroHeatInput(EngineError):
    """Efficiency is undefined because the heat-input denominator is not positive.

    The partially evaluated cycle is attached as ``result`` so callers can
    still report the raw stroke ledger.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class VerificationFailed(EngineError, AssertionError):
    """An asserted numerical check exceeded its tolerance."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
