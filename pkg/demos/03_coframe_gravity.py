"""Coframe gravity: momenta, currents, the boundary term and frame rotations."""

from fractions import Fraction

from noetherforms.forms import interior_product
from noetherforms.harness.generate import Bounds, generate_case
from noetherforms.lagrangian import variational_derivatives
from noetherforms.models import (
    coframe_gr_model,
    frame_rotate,
    gr_F,
    lagrangian_compact,
    rational_angle,
    rotate_currents,
    spatial_rotation,
)
from noetherforms.noether import apply_total_derivative_shift

gr = coframe_gr_model()
cfg = generate_case(seed=5, bounds=Bounds(degree=1, coeff=3), model=gr).config
g = cfg.geometry
dc = variational_derivatives(gr.expr, cfg, gr.decls)
F = gr_F(g)
print("Pi_a == *F_a:", all(dc.Pi[a] == g.hodge(F[a] * g.eta(a)) for a in range(4)))
print("long-form L equals 1/2 C_a ^ *F^a:", dc.lagrangian == lagrangian_compact(g))

spec = apply_total_derivative_shift(gr.expr, gr.lambda_expr, cfg, gr.decls)
print("boundary term Lambda left-factorable:", spec.factorable)
print("shifted charge at e_a equals *F_a + e_a _| Lambda:", all(
    spec.charge(e) == dc.Pi[a] + interior_product(e, spec.Lambda) for a, e in enumerate(g.frame)))

rigid = spatial_rotation(Fraction(3, 5), Fraction(4, 5))
dr = variational_derivatives(gr.expr, frame_rotate(cfg, rigid), gr.decls)
print("rigid rotation: Sigma rotates covariantly:", dr.Sigma == rotate_currents(dc.Sigma, rigid))

c, s = rational_angle(g.ring.var(1))
local = spatial_rotation(c, s)
dl = variational_derivatives(gr.expr, frame_rotate(cfg, local), gr.decls)
print("x^1-dependent rotation: Sigma rotates covariantly:", dl.Sigma == rotate_currents(dc.Sigma, local))
