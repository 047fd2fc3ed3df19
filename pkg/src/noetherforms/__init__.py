"""Exact exterior calculus on coframes, Lagrangian variations and Noether currents."""

from .errors import NoetherFormsError
from .forms import DForm, VectorField, dx, exterior_derivative, interior_product, lie_derivative, wedge
from .geometry import FrameGeometry, build_geometry, flat_geometry, hodge_star, hodge_variation
from .jets import Jet
from .lagrangian import (
    Configuration,
    FieldDecl,
    euler_lagrange,
    evaluate,
    parse_lagrangian,
    typecheck,
    variational_derivatives,
)
from .noether import (
    apply_total_derivative_shift,
    cascade_residuals,
    conservation_residual,
    decompose_residual,
    noether_current,
    noether_identity_residual,
)
from .scalars import Scalar, ring

__version__ = "0.1.0"
