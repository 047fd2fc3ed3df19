"""Constitutive tensors: decomposition, skewon invariance and the vacuum limit."""

import numpy as np

from noetherforms.geometry import flat_geometry
from noetherforms.harness.generate import Bounds, random_form
from noetherforms.lagrangian import Configuration, evaluate
from noetherforms.models import (
    ConstitutiveTensor,
    chi_decompose,
    electrodynamics_model,
    lagrangian_componentwise,
    maxwell_model,
    projector_ranks,
)

rng = np.random.default_rng(7)
chi = ConstitutiveTensor.from_matrix(rng.integers(-4, 5, size=(6, 6)).tolist())
principal, skewon, axion = chi_decompose(chi)
print("pieces sum back to chi:", principal + skewon + axion == chi)
print("projector ranks:", projector_ranks())

g = flat_geometry(4)
F = random_form(rng, 4, 1, Bounds(degree=1, coeff=3)).d()
L = lagrangian_componentwise(chi, F, g)
print("skewon drops out of L:", lagrangian_componentwise(principal + axion, F, g) == L)

A = random_form(rng, 4, 1, Bounds(degree=2, coeff=3))
vac = ConstitutiveTensor.vacuum()
cfg = Configuration(g, {"A": A}, vac)
print("vacuum chi reproduces the Maxwell Lagrangian:",
      evaluate(electrodynamics_model(vac).expr, cfg) == evaluate(maxwell_model(4, 1).expr, cfg))
print("kappa(vacuum) == Hodge star:", vac.apply(g, F) == g.hodge(F))
