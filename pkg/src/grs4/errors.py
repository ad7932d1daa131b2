"""Exception hierarchy shared across the package."""


class GrsError(Exception):
    """Base class for all package errors."""


class DomainError(GrsError):
    """Argument outside the domain of an elementary function or meridian."""


class ParamError(GrsError):
    """Family descriptor violates a family parameter constraint."""


class InadmissiblePointError(GrsError):
    """Surface point where E <= 0 or G >= 0 (metric not Lorentzian there)."""


class FieldError(GrsError):
    """Derivative-field evaluation failed during integration."""


class NoRealRootError(FieldError):
    """Per-step quadratic for a constrained meridian has no real root."""


class ConstraintDriftError(GrsError):
    """Constraint residual of an integrated meridian exceeds 10x tolerance."""


class RangeError(GrsError):
    """Dense-output query outside the integrated span."""


class StepError(GrsError):
    """Finite-difference stencil leaves the admissible domain."""


class ConfigError(GrsError):
    """Suite or run configuration does not parse / validate."""


class ProjectionError(GrsError):
    """Invalid projection specification for mesh export."""
