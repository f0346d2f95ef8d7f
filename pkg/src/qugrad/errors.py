"""Exception types shared across the package."""


class QugradError(Exception):
    """Base class for all package-specific errors."""


class CapacityError(QugradError):
    """A requested register or buffer exceeds the configured size cap."""


class GateValidationError(QugradError):
    """A matrix failed a structural check (unitarity, Hermiticity)."""


class UnsupportedGeneratorError(QugradError):
    """The gate's dependence on the parameter is not of the form exp(-i a theta G)."""


class NotShiftDifferentiableError(QugradError):
    """The gate generator does not have exactly two eigenvalue clusters.

    Carries the offending gate name and its clustered eigenvalues so callers
    can print a useful diagnosis (use a decomposition or the middle-out
    engine instead).
    """

    def __init__(self, gate: str, eigenvalues):
        self.gate = gate
        self.eigenvalues = tuple(float(e) for e in eigenvalues)
        eigs = ", ".join(f"{e:.6g}" for e in self.eigenvalues)
        super().__init__(
            f"gate {gate} is not shift-differentiable: generator has "
            f"{len(self.eigenvalues)} distinct eigenvalues ({eigs})"
        )


class SingularInnerDerivativeError(QugradError):
    """An inner derivative of a parameter map is singular at this point."""

    def __init__(self, theta: float, detail: str = ""):
        self.theta = theta
        msg = f"inner derivative singular at parameter value {theta!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class DomainError(QugradError):
    """An arccos argument fell outside [-1, 1] beyond the clamp tolerance."""


class NotXXClassError(QugradError):
    """The unitary is not locally equivalent to an XX-interaction gate."""


class OracleError(QugradError):
    """A reference computation produced a non-finite value."""


class CircuitFileError(QugradError):
    """A circuit file failed to parse or validate; message carries context."""
