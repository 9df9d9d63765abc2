"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Operand dimensions do not agree."""


class InvalidOperator(ValueError):
    """A matrix failed validation (non-finite entries, not square, not Hermitian)."""


class InvalidState(ValueError):
    """A state vector is not normalized or not finite."""


class NonHermitianResult(ArithmeticError):
    """A derived operator that must be Hermitian failed certification."""


class WaveformDomainError(ValueError):
    """A waveform was evaluated outside its domain."""


class StepTooLarge(ArithmeticError):
    """Propagator norm drift per step exceeded the stability threshold."""


class ConfigError(ValueError):
    """Bad run configuration. ``field`` names the offending key path."""

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class NoNonDegenerateCandidate(RuntimeError):
    """Saturation search found only states where both sides vanish."""
