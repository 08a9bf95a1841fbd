"""Custom exceptions for the quantum game toolkit."""

from typing import Optional, Sequence


class QuantumGameException(Exception):
    """Base exception for quantum-game errors."""
    exit_code = 2


class DimensionMismatchError(QuantumGameException):
    """Raised when an operator, state or payoff table has the wrong shape."""
    def __init__(self, expected, actual, context: str = ""):
        self.expected = expected
        self.actual = actual
        prefix = f"{context}: " if context else ""
        super().__init__(f"{prefix}expected dimension {expected}, got {actual}")


class NormalizationError(QuantumGameException):
    """Raised when a state or probability vector violates normalization."""
    def __init__(self, norm: float, message: str = "state is not normalized"):
        self.norm = norm
        super().__init__(f"{message} (squared norm {norm:.12g})")


class NotUnitaryError(QuantumGameException):
    """Raised when a matrix fails the unitarity check."""
    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(f"matrix is not unitary (max |U^dag U - I| = {deviation:.3e})")


class ParameterRangeError(QuantumGameException):
    """Raised when a numeric parameter lies outside its allowed range."""
    exit_code = 1

    def __init__(self, name: str, value: float, low: float, high: float):
        self.name = name
        self.value = value
        super().__init__(f"{name}={value!r} outside [{low:.12g}, {high:.12g}]")


class GameDefinitionError(QuantumGameException):
    """Raised when a payoff table or game specification is invalid."""
    pass


class StrategyProfileError(QuantumGameException):
    """Raised when a strategy profile does not fit its game."""
    pass


class SimulationError(QuantumGameException):
    """Raised when a gate sequence cannot be applied."""
    def __init__(self, step: int, error: str):
        self.step = step
        self.error = error
        super().__init__(f"step {step} failed: {error}")


class NoCrossoverError(QuantumGameException):
    """Raised when a bracketing search finds no sign change."""
    def __init__(self, low_value: float, high_value: float):
        self.low_value = low_value
        self.high_value = high_value
        super().__init__(
            f"no sign change on the bracket (f(low)={low_value:.6g}, f(high)={high_value:.6g})"
        )


class GameFileError(QuantumGameException):
    """Raised when a game file cannot be parsed into a game specification."""
    exit_code = 1

    def __init__(self, key: str, message: str, line: Optional[int] = None):
        self.key = key
        self.message = message
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"game file key '{key}'{where}: {message}")


class UnknownExperimentError(QuantumGameException):
    """Raised when an experiment name is not registered."""
    exit_code = 1

    def __init__(self, name: str, available: Sequence[str]):
        self.name = name
        self.available = list(available)
        super().__init__(
            f"unknown experiment '{name}'; available: {', '.join(self.available)}"
        )


class OutputFormatError(QuantumGameException):
    """Raised when an output format is not supported."""
    exit_code = 1

    def __init__(self, fmt: str):
        self.fmt = fmt
        super().__init__(f"unknown output format '{fmt}' (expected csv or json)")
