"""Exception types shared across the toolkit."""


class FilterError(Exception):
    """Base class for all idfilt errors."""


class DomainError(FilterError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ExtractionError(FilterError):
    """A quantity could not be extracted from a simulated response."""


class InfeasibleTapError(FilterError):
    """The requested external Q cannot be realized by an interior tap."""


class SynthesisError(FilterError):
    """Physical line synthesis failed (target outside the bracketed range)."""


class PlanError(FilterError):
    """A transmission-zero plan violates its constraints."""


class BuildError(FilterError):
    """A layout could not be lowered to a circuit net."""


class MetricsError(FilterError):
    """Response metrics could not be evaluated on the given band or grid."""


class ComparisonError(FilterError):
    """Two responses could not be compared at a probe frequency."""


class ConfigError(FilterError):
    """A configuration document failed validation."""


class TouchstoneError(FilterError):
    """A Touchstone file could not be parsed."""
