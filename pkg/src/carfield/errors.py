"""Exception types shared across the package."""


class CarfieldError(Exception):
    """Base class for all package-specific errors."""


class ShapeError(CarfieldError):
    """Operand dimensions are incompatible."""


class SizeCapError(CarfieldError):
    """A construction would exceed the configured dimension cap."""


class ResourceLimitError(CarfieldError):
    """A state-level evaluation would exceed the configured memory budget."""


class ConfigError(CarfieldError):
    """Invalid run or lattice configuration."""


class BoundaryError(CarfieldError):
    """A lattice transformation moved support off the lattice."""


class PreconditionError(CarfieldError):
    """A mathematical precondition (e.g. special-unitarity) failed."""


class UnsupportedMassError(CarfieldError):
    """Massless kinematics requested; only m > 0 is supported."""


class DegenerateVacuumError(CarfieldError):
    """Vacuum profile is identically zero."""


class UndefinedResidualError(CarfieldError):
    """Residual of a zero vector is undefined."""
