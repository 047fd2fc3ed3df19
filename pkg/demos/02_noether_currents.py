"""Noether current, charge and the cascade equations.

Shows the off-shell decomposition Theta = S + dQ, the nonvanishing pure-mode
S(e_a) for Maxwell at constant field strength, and the vanishing of S for a
Chern-Simons type Lagrangian on closed fields.
"""

from noetherforms.forms import VectorField
from noetherforms.harness.generate import Bounds, generate_case
from noetherforms.lagrangian import variational_derivatives
from noetherforms.models import chern_simons_model, maxwell_model
from noetherforms.noether import (
    cascade_residuals,
    conservation_residual,
    decompose_residual,
    noether_current,
    noether_identity_residual,
)

model = maxwell_model(4, 1)
case = generate_case(seed=3, bounds=Bounds(), model=model, index=3)
dc = variational_derivatives(model.expr, case.config, model.decls)
b = noether_current(dc, case.xi, "dynamical")
print("random xi, dynamical coframe:")
print("  conservation residual zero:", conservation_residual(b, dc).is_zero())
print("  Theta - S - dQ + field-equation terms zero:", decompose_residual(b, dc).is_zero())
print("  bare Theta - S - dQ zero:", decompose_residual(b, dc, remainder=False).is_zero(), "(off shell)")
print("  Noether identity zero:", all(r.is_zero() for r in noether_identity_residual(dc)))
print("  S(e_a) vanishes identically:", all(r.is_zero() for r in cascade_residuals(dc, "dynamical").r2))

fix = model.fixture()
dfix = variational_derivatives(model.expr, fix, model.decls)
print("constant F on flat space, F =", fix.fields["A"].d())
pure = cascade_residuals(dfix, "pure").r2
print("  pure mode S(e_0) =", pure[0])
print("  fixed background S(e_a) + Sigma_a zero:",
      all(r.is_zero() for r in cascade_residuals(dfix, "fixed-background").r2))

cs = chern_simons_model()
closed = cs.fixture()
dcs = variational_derivatives(cs.expr, closed, cs.decls)
print("Chern-Simons on A =", closed.fields["A"], "(closed)")
print("  S(e_a) zero:", all(r.is_zero() for r in cascade_residuals(dcs, "pure").r2))
bt = noether_current(dcs, VectorField.coordinate(3, 0), "pure")
print("  Theta == dQ:", bt.Theta == bt.Q.d())
