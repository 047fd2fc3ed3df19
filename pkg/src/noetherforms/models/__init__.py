"""Built-in models and constitutive-tensor algebra."""

from ..errors import UnknownModel
from .base import Model
from .chern_simons import chern_simons_model
from .constitutive import (
    PAIRS,
    ConstitutiveTensor,
    chi_decompose,
    constitutive_map,
    lagrangian_componentwise,
    lorentz_force,
    projector_ranks,
)
from .electrodynamics import axiom_residuals, electrodynamics_model, hilbert_current
from .gr import (
    coframe_gr_model,
    frame_rotate,
    gr_F,
    gr_F_components,
    lagrangian_compact,
    rational_angle,
    rotate_currents,
    spatial_rotation,
)
from .maxwell import maxwell_model, maxwell_sigma, symmetry_residual, trace_residual

MODELS = {
    "maxwell": maxwell_model,
    "coframe-gr": coframe_gr_model,
    "premetric-ed": electrodynamics_model,
    "chern-simons": chern_simons_model,
}


def get_model(name: str, **params) -> Model:
    """Build a model by registry name; ``params`` go to its constructor."""
    try:
        builder = MODELS[name]
    except KeyError:
        raise UnknownModel(name) from None
    return builder(**params)


def list_models() -> list:
    return sorted(MODELS)
