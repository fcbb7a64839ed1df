"""Cheeger constants and Cheeger sets of rotationally invariant domains.

The free boundary of a Cheeger set of a rotationally invariant domain in R^n
is a piece of a Delaunay (rotationally invariant constant-mean-curvature)
hypersurface.  This package builds explicit candidate sets whose generating
curves glue Delaunay arcs to the domain boundary and minimizes the
perimeter/volume ratio over the candidate parameters.

Modules
-------
delaunay    profile classification, integration, closed forms
revolve     areas/volumes of revolved piecewise generating curves
domains     the rotationally invariant domain families
candidates  candidate Cheeger sets per family
numerics    quadrature/root/minimization utilities and the Cheeger driver
checks      optimality certificates and counterexample checks
cli         command-line interface ("cheeger" entry point)
"""

from ._kernels import backend
from .errors import (
    InadmissibleError,
    InvalidParamsError,
    NumericsError,
    QuadratureError,
    RootFindError,
    SingularityError,
    StepFailureError,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend",
    "InadmissibleError",
    "InvalidParamsError",
    "NumericsError",
    "QuadratureError",
    "RootFindError",
    "SingularityError",
    "StepFailureError",
]
