"""Maxwell-type p-form fields on a curved coframe.

Derives the momentum and the coframe (Hilbert) current of
L = -1/2 dA ^ *dA and checks the trace and symmetry laws.
"""

from noetherforms.forms import DForm
from noetherforms.harness.generate import Bounds, generate_case
from noetherforms.lagrangian import variational_derivatives
from noetherforms.models import maxwell_model, maxwell_sigma, symmetry_residual, trace_residual

model = maxwell_model(4, 1)
case = generate_case(seed=1, bounds=Bounds(degree=1, coeff=3), model=model)
cfg = case.config
dc = variational_derivatives(model.expr, cfg, model.decls)
F = cfg.fields["A"].d()
g = cfg.geometry

print("coframe:")
for th in g.coframe:
    print("  ", th)
print("sigma =", dc.sigma)
print("pi == -*F:", dc.pi == -g.hodge(F))
print("Sigma_0 has", dc.Sigma[0].monomial_count(), "monomials")
print("Sigma_a equals the closed-form Hilbert current:", dc.Sigma == maxwell_sigma(F, g, 1))

# the trace vanishes only in the conformal case n = 2(p + 1)
for n, p in ((4, 1), (4, 0), (6, 2), (5, 1)):
    m = maxwell_model(n, p)
    c = generate_case(2, Bounds(degree=1, coeff=3), m)
    d = variational_derivatives(m.expr, c.config, m.decls)
    Fn = c.config.fields["A"].d()
    trace = sum((c.config.geometry.coframe[a].wedge(d.Sigma[a]) for a in range(n)),
                DForm.zero(n, n, True))
    print(f"n={n} p={p}: traceless={trace.is_zero()}",
          f"trace law holds={trace_residual(d.Sigma, Fn, c.config.geometry, p).is_zero()}",
          f"symmetric={symmetry_residual(d.Sigma, c.config.geometry).is_zero()}")
