"""Exception hierarchy."""


class SpinHallError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SpinHallError, ValueError):
    """Argument outside the mathematical domain (e.g. zero momentum)."""


class GaugeSingularityError(DomainError):
    """Momentum direction inside the pole guard of the cot(theta) gauge."""


class MediumDomainError(SpinHallError):
    """Refractive index is non-positive at the evaluation point."""


class IntegrationError(SpinHallError):
    """The adaptive integrator could not continue (step-size underflow)."""


class DegeneratePathError(DomainError):
    """Momentum path has too few samples or a zero sample."""


class AntipodalPairError(DomainError):
    """Consecutive path directions are antipodal; the geodesic is undefined."""


class ScenarioError(SpinHallError):
    """Problem with a scenario document. ``key`` is the dotted key path."""

    def __init__(self, message, key=None):
        self.key = key
        if key:
            message = f"{key}: {message}"
        super().__init__(message)


class ScenarioParseError(ScenarioError):
    pass


class ScenarioSchemaError(ScenarioError):
    pass


class ScenarioValidationError(ScenarioError):
    pass
