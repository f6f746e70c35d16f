class ZakharovError(Exception):
    exit_code: int = 1


class ConfigurationError(ZakharovError):
    exit_code = 2


class NumericalFailure(ZakharovError):
    exit_code = 3


class ConfigInvalid(ConfigurationError): ...


class InvalidCutoff(ConfigurationError, ValueError): ...


class InvalidExponents(ConfigurationError, ValueError): ...


class NegativePowerOnNonzeroMean(ConfigurationError, ValueError): ...


class GridMismatch(ConfigurationError): ...


class DegenerateDraw(ConfigurationError): ...


class ZeroSequence(ConfigurationError): ...


class NonFiniteState(NumericalFailure):
    step: int

    def __init__(self, step: int, message: str | None = None):
        super().__init__(message or f"Non-finite coefficient detected at step {step}")

        self.step = step


class ReferenceUnresolved(NumericalFailure): ...
