"""Exception hierarchy shared across the package."""


class StatecastError(Exception):
    """Base class for all package errors."""


class IngestError(StatecastError):
    """Raised when an input stream cannot be read or parsed at all."""


class CalibrationError(StatecastError):
    """Raised when a regression or volatility estimate cannot be produced."""


class InsufficientDataError(CalibrationError):
    """Too few observations to calibrate; callers may fall back to history."""


class DegenerateDesignError(CalibrationError):
    """Regressor is constant, so the slope is unidentifiable."""


class ConfigurationError(StatecastError):
    """Inputs are structurally inconsistent (e.g. a state missing a spread)."""


class ScoreError(StatecastError):
    """A score is undefined for the given inputs."""


class AlignmentError(StatecastError):
    """Two dated series share no common dates."""
