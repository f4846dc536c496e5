"""Exception types shared across the package.

``ValueError`` subclasses signal bad input (the CLI maps them to exit
status 2); ``NumericalError`` signals a computation that went off the rails
(exit status 3).
"""


class DimensionError(ValueError):
    pass


class NotSPDError(ValueError):
    pass


class CoarseGridError(ValueError):
    """Trajectory sampling too coarse for the discretized slope test."""


class NumericalError(ArithmeticError):
    pass


class NonFiniteError(NumericalError):
    pass


class OracleUnderflowError(NumericalError):
    """``h`` is so small that ``I + hA`` rounds to ``I``."""


class BlowUpError(NonFiniteError):
    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class NewtonStagnationError(NumericalError):
    pass
