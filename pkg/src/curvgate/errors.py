from __future__ import annotations


class CurvatureError(ValueError):
    """Base class for invalid geometric input."""


class DomainError(CurvatureError):
    """Point outside the chart's open box domain."""


class DegenerateMetricError(CurvatureError):
    """Metric matrix singular, indefinite, or too badly conditioned."""


class DegeneratePlaneError(CurvatureError):
    """Two vectors do not span a plane."""


class ConvergenceError(ArithmeticError):
    pass


class SpecParseError(ValueError):
    """Malformed model-space text; carries the offending token and offset."""

    def __init__(self, message: str, token: str, position: int):
        super().__init__(f"{message}: {token!r} at position {position}")
        self.token = token
        self.position = position


class RequestError(ValueError):
    """An analysis request whose parts do not fit together."""
