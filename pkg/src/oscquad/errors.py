class OscQuadError(Exception):
    """Base class for failures raised by this package."""


class ExistenceError(OscQuadError):
    """The orthogonal polynomial does not (numerically) exist."""

    def __init__(self, message, report=None, index=None):
        super().__init__(message)
        self.report = report
        self.index = index


class ConvergenceError(OscQuadError):
    """An iteration hit its cap or a linear system was too ill-conditioned."""

    def __init__(self, message, residual=None, condition=None):
        super().__init__(message)
        self.residual = residual
        self.condition = condition
