"""Exception hierarchy. Every domain error carries its class name to the CLI."""


class RuledSyzError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidSurface(RuledSyzError, ValueError):
    pass


class TableUnknown(RuledSyzError):
    pass


class FactorPositivityMismatch(RuledSyzError, ValueError):
    pass


class DegreeTooSmall(RuledSyzError, ValueError):
    pass


class SingularCurve(RuledSyzError, ValueError):
    pass


class PrimeTooSmall(RuledSyzError, ValueError):
    pass


class InsufficientPoints(RuledSyzError):
    pass


class ModelInsufficientPoints(RuledSyzError):
    pass


class OracleObstruction(RuledSyzError):
    pass


class FaithfulnessViolation(RuledSyzError):
    pass


class BudgetExceeded(RuledSyzError):
    pass


class RingTooShallow(RuledSyzError):
    pass


class NotNormallyGenerated(RuledSyzError):
    pass
