"""Exception and warning types raised by the library."""


class DomainError(ValueError):
    """Input outside the domain where an operation is defined."""


class SingularityError(DomainError):
    """Coincident source and target points."""


class BranchError(DomainError):
    """Equal radii: neither branch of the Newton-kernel expansion applies."""


class DivergenceError(DomainError):
    """The regular part blows up (Robin function on the boundary)."""


class GeometryError(DomainError):
    """A stencil, ball or probe sphere leaves the annulus."""


class ConditioningWarning(UserWarning):
    """Inner radius close to 1; coefficient denominators are ill-conditioned."""


class AccuracyWarning(UserWarning):
    """Quadrature budget too small for the requested accuracy."""
