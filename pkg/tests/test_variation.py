import dataclasses

import pytest

from noetherforms.errors import BadDegree, UnsupportedNode
from noetherforms.forms import DForm
from noetherforms.lagrangian import (
    Configuration,
    FieldDecl,
    euler_lagrange,
    jet_variation,
    parse_lagrangian,
    variational_derivatives,
    variational_identity_residual,
)
from noetherforms.models import (
    ConstitutiveTensor,
    chi_decompose,
    coframe_gr_model,
    electrodynamics_model,
    gr_F,
    maxwell_model,
)

from .conftest import all_zero, rand_coframe_variation, rand_form, rand_geometry, rng_for

DECLS = [FieldDecl.matter("A", 1), FieldDecl.coframe()]


def random_config(rng, model, constant=False):
    g = rand_geometry(rng, model.n, model.signature, constant)
    fields = {d.name: rand_form(rng, model.n, d.degree) for d in model.matter}
    return Configuration(g, fields, model.chi)


def collected(dc, dfields, dtheta):
    """delta psi ^ sigma + delta(d psi) ^ pi + delta theta^a ^ Sigma_a + delta(d theta^a) ^ Pi_a."""
    out = DForm.zero(dc.n, dc.n, True)
    for name, m in dc.matter.items():
        dpsi = dfields[name]
        out = out + dpsi.wedge(m.sigma) + dpsi.d().wedge(m.pi)
    for a, dt in enumerate(dtheta):
        out = out + dt.wedge(dc.Sigma[a]) + dt.d().wedge(dc.Pi[a])
    return out


def test_maxwell_currents():
    rng = rng_for(31)
    m = maxwell_model(4, 1)
    cfg = random_config(rng, m)
    dc = variational_derivatives(m.expr, cfg, m.decls)
    F = cfg.fields["A"].d()
    assert dc.sigma.is_zero()
    # with L = -1/2 F ^ *F the momentum carries a minus sign
    assert dc.pi == -cfg.geometry.hodge(F)


def test_gr_momentum_is_star_F():
    rng = rng_for(32)
    m = coframe_gr_model()
    cfg = random_config(rng, m)
    dc = variational_derivatives(m.expr, cfg, m.decls)
    g = cfg.geometry
    for a, Fa in enumerate(gr_F(g)):
        assert dc.Pi[a] == g.hodge(Fa * g.eta(a))


@pytest.mark.parametrize("model", [
    maxwell_model(4, 1), maxwell_model(3, 0), maxwell_model(5, 2), coframe_gr_model(),
    electrodynamics_model(ConstitutiveTensor.from_matrix(
        [[(3 * i + 5 * j) % 7 - 3 for j in range(6)] for i in range(6)])),
], ids=lambda m: f"{m.name}-{m.n}-{m.p}")
def test_jet_oracle_matches_collected_currents(model):
    rng = rng_for(33, model.n)
    for _ in range(4):
        cfg = random_config(rng, model)
        dc = variational_derivatives(model.expr, cfg, model.decls)
        dfields = {d.name: rand_form(rng, model.n, d.degree) for d in model.matter}
        dtheta = rand_coframe_variation(rng, model.n)
        assert jet_variation(model.expr, cfg, dfields, dtheta) == collected(dc, dfields, dtheta)
        assert variational_identity_residual(model.expr, dc, dfields, dtheta).is_zero()


def test_massive_fields_have_nonzero_sigma():
    rng = rng_for(34)
    for p in (0, 1, 2):
        decls = [FieldDecl.matter("B", p), FieldDecl.coframe()]
        expr = parse_lagrangian("-1/2 * d B ^ star(d B) + 3/2 * B ^ star(B)", decls)
        cfg = Configuration(rand_geometry(rng, 4), {"B": rand_form(rng, 4, p)})
        dc = variational_derivatives(expr, cfg, decls)
        assert not dc.sigma.is_zero()
        df = {"B": rand_form(rng, 4, p)}
        dt = rand_coframe_variation(rng, 4)
        assert variational_identity_residual(expr, dc, df, dt).is_zero()


def test_tampered_currents_are_detected():
    rng = rng_for(35)
    m = maxwell_model(4, 1)
    cfg = random_config(rng, m)
    dc = variational_derivatives(m.expr, cfg, m.decls)
    bad = dataclasses.replace(dc, Sigma=tuple(-s for s in dc.Sigma))
    dt = rand_coframe_variation(rng, 4)
    assert not variational_identity_residual(m.expr, bad, {"A": rand_form(rng, 4, 1)}, dt).is_zero()


def test_euler_lagrange_maxwell():
    rng = rng_for(36)
    m = maxwell_model(4, 1)
    cfg = random_config(rng, m)
    dc = variational_derivatives(m.expr, cfg, m.decls)
    el = euler_lagrange(dc)
    F = cfg.fields["A"].d()
    assert el.E_mat["A"] == -cfg.geometry.hodge(F).d()
    for a in range(4):
        assert el.E_gr[a] == dc.Sigma[a] + dc.Pi[a].d()


def test_euler_lagrange_electrodynamics_is_dH():
    rng = rng_for(37)
    chi = ConstitutiveTensor.from_matrix([[(i * j + i + 2 * j) % 5 - 2 for j in range(6)] for i in range(6)])
    m = electrodynamics_model(chi)
    cfg = random_config(rng, m)
    dc = variational_derivatives(m.expr, cfg, m.decls)
    F = cfg.fields["A"].d()
    # the skewon piece does not reach the field equation
    principal, skewon, axion = chi_decompose(chi)
    assert not skewon.is_zero()
    H = (principal + axion).apply(cfg.geometry, F)
    assert dc.E_mat("A") == -H.d()


def test_zero_lagrangian():
    expr = parse_lagrangian("0 * d A ^ star(d A)", DECLS)
    cfg = random_config(rng_for(38), maxwell_model(4, 1))
    dc = variational_derivatives(expr, cfg, DECLS)
    el = euler_lagrange(dc)
    assert all_zero(el.E_mat) and all_zero(el.E_gr)


def test_on_shell_conservation_of_currents():
    rng = rng_for(39)
    for m in (maxwell_model(4, 1), maxwell_model(5, 2), electrodynamics_model()):
        fix = m.fixture(rng, 9)
        dc = variational_derivatives(m.expr, fix, m.decls)
        assert dc.E_mat("A").is_zero()
        assert dc.sigma.d().is_zero()
    gr = coframe_gr_model()
    dc = variational_derivatives(gr.expr, gr.fixture(rng, 9), gr.decls)
    assert all(dc.E_gr(a).is_zero() and dc.Sigma[a].d().is_zero() for a in range(4))


@pytest.mark.parametrize("text", ["d(star(d A)) ^ A", "d(kappa(d A)) ^ A"])
def test_second_derivatives_unsupported(text):
    cfg = random_config(rng_for(40), maxwell_model(4, 1))
    with pytest.raises(UnsupportedNode):
        variational_derivatives(parse_lagrangian(text, DECLS), cfg, DECLS)


def test_non_top_form_rejected():
    cfg = random_config(rng_for(41), maxwell_model(4, 1))
    with pytest.raises(BadDegree):
        variational_derivatives(parse_lagrangian("A ^ d A", DECLS), cfg, DECLS)
