from fractions import Fraction

import pytest

from noetherforms.errors import BadDegree, BadShape, BadTensor, NotOrthochronous, UnknownModel
from noetherforms.forms import DForm, dx, interior_product
from noetherforms.geometry import flat_geometry
from noetherforms.lagrangian import Configuration, evaluate, variational_derivatives
from noetherforms.models import (
    ConstitutiveTensor,
    chi_decompose,
    coframe_gr_model,
    constitutive_map,
    electrodynamics_model,
    frame_rotate,
    get_model,
    gr_F,
    gr_F_components,
    hilbert_current,
    lagrangian_compact,
    lagrangian_componentwise,
    list_models,
    lorentz_force,
    maxwell_model,
    maxwell_sigma,
    projector_ranks,
    rational_angle,
    rotate_currents,
    spatial_rotation,
    symmetry_residual,
    trace_residual,
)
from noetherforms.models.gr import torsion
from noetherforms.noether import cascade_residuals, noether_current

from .conftest import all_zero, rand_form, rand_geometry, rng_for


def rand_chi(rng, bound=5):
    return ConstitutiveTensor.from_matrix(
        [[int(rng.integers(-bound, bound + 1)) for _ in range(6)] for _ in range(6)])


def currents(model, cfg):
    return variational_derivatives(model.expr, cfg, model.decls)


# -- Maxwell ---------------------------------------------------------------------
def test_maxwell_trace_examples():
    rng = rng_for(80)
    for p, traceless in ((1, True), (0, False)):
        m = maxwell_model(4, p)
        g = rand_geometry(rng, 4)
        A = rand_form(rng, 4, p)
        dc = currents(m, Configuration(g, {"A": A}))
        F = A.d()
        trace = sum((g.coframe[a].wedge(dc.Sigma[a]) for a in range(4)), DForm.zero(4, 4, True))
        if traceless:
            assert trace.is_zero()
        else:
            assert trace == -F.wedge(g.hodge(F))
        assert trace_residual(dc.Sigma, F, g, p).is_zero()


@pytest.mark.parametrize("n,p", [(2, 0), (3, 1), (4, 2), (5, 1), (6, 3)])
def test_maxwell_symmetry_and_hilbert_current(n, p):
    rng = rng_for(81, n, p)
    m = maxwell_model(n, p)
    g = rand_geometry(rng, n)
    A = rand_form(rng, n, p)
    dc = currents(m, Configuration(g, {"A": A}))
    assert symmetry_residual(dc.Sigma, g).is_zero()
    assert dc.Sigma == maxwell_sigma(A.d(), g, p)


def test_maxwell_bad_degree():
    with pytest.raises(BadDegree):
        maxwell_model(4, 4)
    with pytest.raises(BadDegree):
        maxwell_model(3, -1)


# -- coframe gravity ---------------------------------------------------------------
def test_gr_flat_coframe():
    gr = coframe_gr_model()
    g = flat_geometry(4)
    assert all_zero(torsion(g)) and all_zero(gr_F(g))
    dc = currents(gr, Configuration(g, {}))
    assert all_zero(dc.Sigma) and all(dc.E_gr(a).is_zero() for a in range(4))


def test_gr_currents_match_closed_forms():
    rng = rng_for(82)
    gr = coframe_gr_model()
    for _ in range(3):
        g = rand_geometry(rng, 4)
        dc = currents(gr, Configuration(g, {}))
        C = torsion(g)
        F = gr_F(g)
        starF = [g.hodge(F[b] * g.eta(b)) for b in range(4)]
        for a, e in enumerate(g.frame):
            assert dc.Pi[a] == starF[a]
            expected = interior_product(e, dc.lagrangian) - sum(
                (interior_product(e, C[b]).wedge(starF[b]) for b in range(4)), DForm.zero(4, 3, True))
            assert dc.Sigma[a] == expected
        assert dc.lagrangian == lagrangian_compact(g)
        assert list(F) == list(gr_F_components(g))


# -- premetric electrodynamics ---------------------------------------------------------
def test_vacuum_electrodynamics_is_maxwell():
    rng = rng_for(83)
    ed, mx = electrodynamics_model(), maxwell_model(4, 1)
    for _ in range(3):
        g = rand_geometry(rng, 4)
        A = rand_form(rng, 4, 1)
        cfg = Configuration(g, {"A": A}, ed.chi)
        assert evaluate(ed.expr, cfg) == evaluate(mx.expr, cfg)
        assert evaluate(ed.expr, cfg) == lagrangian_componentwise(ed.chi, A.d(), g)


def test_electrodynamics_flat_cascade_and_hilbert_current():
    rng = rng_for(84)
    chi = rand_chi(rng)
    ed = electrodynamics_model(chi)
    cfg = Configuration(flat_geometry(4), {"A": rand_form(rng, 4, 1)}, chi)
    dc = currents(ed, cfg)
    F = cfg.fields["A"].d()
    principal, _, axion = chi_decompose(chi)
    H = (principal + axion).apply(cfg.geometry, F)
    assert dc.Sigma == hilbert_current(F, H, cfg.geometry)
    for a, e in enumerate(cfg.geometry.frame):
        assert noether_current(dc, e, "fixed-background").S == -dc.Sigma[a]
    assert all_zero(cascade_residuals(dc, "fixed-background").r2)


def test_skewon_leaves_lagrangian_unchanged():
    rng = rng_for(85)
    for _ in range(5):
        chi, other = rand_chi(rng), rand_chi(rng)
        skew = chi_decompose(other)[1]
        g = rand_geometry(rng, 4)
        F = rand_form(rng, 4, 1).d()
        L = lagrangian_componentwise(chi, F, g)
        assert lagrangian_componentwise(chi + skew, F, g) == L
        assert F.wedge(constitutive_map(chi + skew, F, g)) * Fraction(-1, 2) == L


# -- constitutive algebra -------------------------------------------------------------
def test_decomposition_fixed_points():
    ax = ConstitutiveTensor.axion(Fraction(5, 2))
    p1, p2, p3 = chi_decompose(ax)
    assert p3 == ax and p1.is_zero() and p2.is_zero()
    vac = ConstitutiveTensor.vacuum()
    p1, p2, p3 = chi_decompose(vac)
    assert p1 == vac and p2.is_zero() and p3.is_zero()
    c = vac.chi
    assert all(c[a][b][cc][d] == c[cc][d][a][b]
               for a in range(4) for b in range(4) for cc in range(4) for d in range(4))


def test_decomposition_sums_back_and_is_idempotent():
    rng = rng_for(86)
    for _ in range(10):
        chi = rand_chi(rng)
        p1, p2, p3 = chi_decompose(chi)
        assert p1 + p2 + p3 == chi
        for k, piece in enumerate((p1, p2, p3)):
            again = chi_decompose(piece)
            assert again[k] == piece
            assert all(again[j].is_zero() for j in range(3) if j != k)


def test_projector_ranks():
    assert projector_ranks() == (20, 15, 1)


def test_kappa_examples():
    g = flat_geometry(4)
    vac = ConstitutiveTensor.vacuum()
    assert constitutive_map(vac, DForm.zero(4, 2), g).is_zero()
    rng = rng_for(87)
    for geom in (g, rand_geometry(rng, 4)):
        F = rand_form(rng, 4, 2)
        assert constitutive_map(vac, F, geom) == geom.hodge(F)
    # eta^ac eta^bd - eta^ad eta^bc taken literally gives kappa = -*
    literal = ConstitutiveTensor.from_function(
        lambda a, b, c, d: (g.eta(a) if a == c else 0) * (g.eta(b) if b == d else 0)
        - (g.eta(a) if a == d else 0) * (g.eta(b) if b == c else 0))
    F = rand_form(rng, 4, 2)
    assert constitutive_map(literal, F, g) == -g.hodge(F)
    # axion: H^{23} = alpha eps^{2301} F_01 and eps_23 = dx^0 ^ dx^1 on the flat frame
    alpha = Fraction(3, 7)
    ax = ConstitutiveTensor.axion(alpha)
    assert constitutive_map(ax, dx(4, 0, 1), g) == dx(4, 0, 1).twisted() * alpha
    assert constitutive_map(ax, F, g) == F.twisted() * alpha


def test_constitutive_errors():
    with pytest.raises(BadShape):
        ConstitutiveTensor.from_matrix([[1] * 5] * 6)
    with pytest.raises(BadTensor):
        ConstitutiveTensor.from_function(lambda a, b, c, d: 1)


def test_lorentz_force():
    g = flat_geometry(4)
    F = dx(4, 0, 1)
    J = dx(4, 1, 2, 3).twisted()
    f = lorentz_force(F, J, g)
    assert f[0].is_zero()
    assert f[1] == -dx(4, 0, 1, 2, 3).twisted()
    assert all(x.degree == 4 and x.odd for x in f)
    assert all_zero(lorentz_force(F, DForm.zero(4, 3, True), g))


# -- frame rotations ------------------------------------------------------------------
def test_identity_rotation():
    gr = coframe_gr_model()
    cfg = Configuration(rand_geometry(rng_for(88), 4), {})
    ident = [[int(i == j) for j in range(4)] for i in range(4)]
    assert frame_rotate(cfg, ident).geometry.coframe == cfg.geometry.coframe
    assert gr.name == "coframe-gr"


def test_rigid_rotation_is_covariant():
    gr = coframe_gr_model()
    cfg = Configuration(rand_geometry(rng_for(89), 4), {})
    A = spatial_rotation(Fraction(3, 5), Fraction(4, 5))
    dc, dc2 = currents(gr, cfg), currents(gr, frame_rotate(cfg, A))
    assert dc2.lagrangian == dc.lagrangian
    assert dc2.Sigma == rotate_currents(dc.Sigma, A)


def test_local_rotation_breaks_covariance():
    gr = coframe_gr_model()
    cfg = Configuration(rand_geometry(rng_for(90), 4), {})
    c, s = rational_angle(cfg.geometry.ring.var(1))
    assert c * c + s * s == 1
    A = spatial_rotation(c, s)
    dc, dc2 = currents(gr, cfg), currents(gr, frame_rotate(cfg, A))
    assert dc2.Sigma != rotate_currents(dc.Sigma, A)


def test_non_lorentz_matrix_rejected():
    cfg = Configuration(flat_geometry(4), {})
    with pytest.raises(NotOrthochronous):
        frame_rotate(cfg, [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def test_registry():
    assert list_models() == ["chern-simons", "coframe-gr", "maxwell", "premetric-ed"]
    assert get_model("maxwell", n=6, p=2).n == 6
    with pytest.raises(UnknownModel):
        get_model("foo")
