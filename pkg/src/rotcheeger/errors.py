"""Exception taxonomy.

Invalid inputs raise :class:`InvalidParamsError` (a ``ValueError``), numerical
procedure failures raise subclasses of :class:`NumericsError` (a
``RuntimeError``), and geometrically impossible candidate constructions raise
:class:`InadmissibleError` so callers can distinguish "this H has no candidate
of that structure" from genuine numerical breakdown.
"""


class InvalidParamsError(ValueError):
    """Parameters violate a documented precondition."""


class SingularityError(InvalidParamsError):
    """A requested evaluation crosses a singular point (axis contact, w=0)."""


class NumericsError(RuntimeError):
    """Base class for numerical-procedure failures."""


class QuadratureError(NumericsError):
    """Adaptive quadrature could not reach the requested tolerance."""


class RootFindError(NumericsError):
    """No bracket or no convergence in scalar root finding."""


class StepFailureError(NumericsError):
    """Adaptive ODE stepping failed (step underflow or step budget exceeded)."""


class InadmissibleError(RuntimeError):
    """No admissible candidate of the requested structure exists."""
