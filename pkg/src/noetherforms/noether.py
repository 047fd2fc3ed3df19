"""Noether currents, charges and identities for diffeomorphism generators.

Three modes:

``pure``
    only the matter fields move under ``xi``; the coframe is ignored.
``fixed-background``
    the coframe is constant (holonomic, ``d vartheta^a = 0``) and not
    dynamical; it enters conservation through ``d(xi _| vartheta^a) ^ Sigma_a``.
``dynamical``
    matter fields and coframe both move under ``xi``.

With ``Theta = -xi _| L + Omega(L_xi fields)``, ``S`` the part algebraic in
``xi`` and ``Q`` the charge, the decomposition ``Theta = S + dQ`` holds up to
field-equation forms::

    Theta - S - dQ = -(xi _| psi) ^ E_mat - (xi _| vartheta^a) ^ E_gr_a

(the coframe term only in dynamical mode).  :func:`decompose_residual`
returns the left side plus those remainders, which vanishes identically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError, DimensionMismatch, TypeCheckError
from .forms import DForm, VectorField, interior_product, lie_derivative
from .lagrangian.evaluate import Configuration
from .lagrangian.typecheck import infer
from .lagrangian.variation import (
    DerivedCurrents,
    MatterCurrents,
    NotFactorable,
    _decls_from,
    jet_variation,
    left_divide,
    linearize,
    variational_derivatives,
)

MODES = ("pure", "fixed-background", "dynamical")


@dataclass(frozen=True)
class NoetherBundle:
    xi: VectorField
    Theta: DForm
    S: DForm
    Q: DForm
    mode: str


def _check_mode(mode: str):
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")


def is_constant_coframe(config: Configuration) -> bool:
    return all(c.is_constant() for row in config.geometry.coframe_matrix for c in row)


def _require_mode(config: Configuration, mode: str):
    _check_mode(mode)
    if mode == "fixed-background" and not is_constant_coframe(config):
        raise ConfigError("fixed-background mode needs a constant (holonomic) coframe")


def _zero(dc: DerivedCurrents, degree: int) -> DForm:
    return DForm.zero(dc.n, degree, dc.lagrangian.odd)


def noether_current(dc: DerivedCurrents, xi: VectorField, mode: str = "dynamical") -> NoetherBundle:
    """``Theta(xi)``, ``S(xi)`` and ``Q(xi)`` in the given mode."""
    cfg = dc.config
    n = dc.n
    if xi.n != n:
        raise DimensionMismatch(f"generator on n={xi.n}, configuration on n={n}")
    _require_mode(cfg, mode)
    L = dc.lagrangian
    iL = interior_product(xi, L) if L.degree else _zero(dc, n - 1)
    theta = -iL
    S = -iL
    Q = _zero(dc, n - 2) if n >= 2 else None
    for name, m in dc.matter.items():
        psi = cfg.fields[name]
        dpsi = psi.d()
        i_psi = interior_product(xi, psi)
        i_dpsi = interior_product(xi, dpsi)
        theta = theta + (i_dpsi + i_psi.d() if psi.degree else i_dpsi).wedge(m.pi)
        S = S + i_dpsi.wedge(m.pi) + i_psi.wedge(m.sigma)
        if psi.degree:
            Q = Q + i_psi.wedge(m.pi)
    if mode == "dynamical":
        g = cfg.geometry
        for a in range(n):
            th = g.coframe[a]
            i_th = interior_product(xi, th)
            i_dth = interior_product(xi, th.d())
            theta = theta + (i_dth + i_th.d()).wedge(dc.Pi[a])
            S = S + i_dth.wedge(dc.Pi[a]) + i_th.wedge(dc.Sigma[a])
            Q = Q + i_th.wedge(dc.Pi[a])
    return NoetherBundle(xi, theta, S, Q, mode)


def charge_from_potential(dc: DerivedCurrents, xi: VectorField, mode: str = "dynamical") -> DForm:
    """``Q(xi)`` as the pre-symplectic potential evaluated on ``xi _| fields``."""
    cfg = dc.config
    fields = {name: interior_product(xi, cfg.fields[name])
              for name in dc.matter if cfg.fields[name].degree}
    coframe = None
    if mode == "dynamical":
        coframe = [interior_product(xi, t) for t in cfg.geometry.coframe]
    out = _zero(dc, dc.n - 2)
    for name, f in fields.items():
        out = out + f.wedge(dc.matter[name].pi)
    if coframe is not None:
        for f, P in zip(coframe, dc.Pi):
            out = out + f.wedge(P)
    return out


def equation_remainder(dc: DerivedCurrents, xi: VectorField, mode: str) -> DForm:
    """``(xi _| psi) ^ E_mat [+ (xi _| vartheta^a) ^ E_gr_a]``."""
    cfg = dc.config
    out = _zero(dc, dc.n - 1)
    for name in dc.matter:
        psi = cfg.fields[name]
        if psi.degree:
            out = out + interior_product(xi, psi).wedge(dc.E_mat(name))
    if mode == "dynamical":
        for a, th in enumerate(cfg.geometry.coframe):
            out = out + interior_product(xi, th).wedge(dc.E_gr(a))
    return out


def decompose_residual(bundle: NoetherBundle, dc: DerivedCurrents, remainder: bool = True) -> DForm:
    """``Theta - S - dQ`` plus its field-equation remainder (zero identically).

    With ``remainder=False`` the bare ``Theta - S - dQ`` is returned; it
    vanishes on shell.
    """
    out = bundle.Theta - bundle.S
    if bundle.Q is not None:
        out = out - bundle.Q.d()
    if remainder:
        out = out + equation_remainder(dc, bundle.xi, bundle.mode)
    return out


def conservation_residual(bundle: NoetherBundle, dc: DerivedCurrents) -> DForm:
    """Off-shell conservation law; zero for every configuration and generator.

    dynamical:         ``dTheta + L_xi psi ^ E_mat + L_xi vartheta^a ^ E_gr_a``
    fixed-background:  ``dTheta + L_xi psi ^ E_mat + d(xi _| vartheta^a) ^ Sigma_a``
    pure:              ``dTheta + L_xi psi ^ E_mat`` (needs a coframe-blind Lagrangian
                       or a generator preserving the coframe)
    """
    cfg = dc.config
    xi = bundle.xi
    out = bundle.Theta.d()
    for name in dc.matter:
        out = out + lie_derivative(xi, cfg.fields[name]).wedge(dc.E_mat(name))
    g = cfg.geometry
    if bundle.mode == "dynamical":
        for a, th in enumerate(g.coframe):
            out = out + lie_derivative(xi, th).wedge(dc.E_gr(a))
    elif bundle.mode == "fixed-background":
        for a, th in enumerate(g.coframe):
            out = out + interior_product(xi, th).d().wedge(dc.Sigma[a])
    return out


@dataclass(frozen=True)
class Cascade:
    r1: tuple  # dS(e_a): n-forms
    r2: tuple  # S(e_a) [+ Sigma_a]: (n-1)-forms


def cascade_residuals(dc: DerivedCurrents, mode: str) -> Cascade:
    """The ``xi^a`` and ``d xi^a`` coefficients of the conservation law.

    ``r2_a`` is ``S(e_a)`` (``S(e_a) + Sigma_a`` in fixed-background mode) and
    ``r1_a = dS(e_a)``.
    """
    g = dc.config.geometry
    r1, r2 = [], []
    for a, e in enumerate(g.frame):
        S = noether_current(dc, e, mode).S
        r1.append(S.d())
        r2.append(S + dc.Sigma[a] if mode == "fixed-background" else S)
    return Cascade(tuple(r1), tuple(r2))


def noether_identity_residual(dc: DerivedCurrents) -> tuple:
    """Off-shell Noether identity, one ``n``-form per frame leg (all zero).

    ``dSigma_a - (e_a _| dpsi) ^ E_mat - (-1)^p (e_a _| psi) ^ d sigma
    - (e_a _| d vartheta^b) ^ E_gr_b``
    """
    cfg = dc.config
    g = cfg.geometry
    n = dc.n
    out = []
    for a, e in enumerate(g.frame):
        r = dc.Sigma[a].d()
        for name, m in dc.matter.items():
            psi = cfg.fields[name]
            r = r - interior_product(e, psi.d()).wedge(dc.E_mat(name))
            if psi.degree:
                t = interior_product(e, psi).wedge(m.sigma.d())
                r = r + t if psi.degree % 2 else r - t
        for b, th in enumerate(g.coframe):
            r = r - interior_product(e, th.d()).wedge(dc.E_gr(b))
        out.append(r if r.degree == n else DForm(n, n, r.coeffs, r.odd))
    return tuple(out)


def s_linearity_residual(dc: DerivedCurrents, xi: VectorField, f, mode: str = "dynamical") -> DForm:
    """``S(f xi) - f S(xi)`` for a function ``f``."""
    return noether_current(dc, xi * f, mode).S - noether_current(dc, xi, mode).S * f


# -- total-derivative shifts ---------------------------------------------------------
@dataclass(frozen=True)
class ShiftSpec:
    """Currents of ``L + d Lambda`` and the induced charge shift.

    ``shifted`` is ``None`` when the variation of ``Lambda`` cannot be written
    in left-factored form (``factorable`` is then ``False``).
    """

    Lambda: DForm
    original: DerivedCurrents
    shifted: DerivedCurrents | None
    lam: dict | None
    expr: object
    lambda_expr: object

    @property
    def factorable(self) -> bool:
        return self.shifted is not None

    def charge(self, xi: VectorField, mode: str = "dynamical") -> DForm:
        """Shifted charge ``Q(xi) + xi _| Lambda``."""
        return noether_current(self.original, xi, mode).Q + interior_product(xi, self.Lambda)

    def current(self, xi: VectorField) -> DForm:
        """Shifted current ``-xi _| (L + dLambda) + Omega(L_xi fields) + delta_xi Lambda``.

        ``delta_xi Lambda`` is the first variation of ``Lambda`` along the
        Lie-dragged fields, computed independently of the Cartan formula.
        """
        dc = self.original
        cfg = dc.config
        base = noether_current(dc, xi, "dynamical").Theta
        dfields = {k: lie_derivative(xi, f) for k, f in cfg.fields.items()}
        dcoframe = [lie_derivative(xi, t) for t in cfg.geometry.coframe]
        drag = jet_variation(self.lambda_expr, cfg, dfields, dcoframe)
        return base - interior_product(xi, self.Lambda.d()) + drag.with_parity(base.odd)

    def charge_residual(self, xi: VectorField) -> DForm:
        """``(Theta~ - dQ~) - (Theta - dQ)``; zero identically."""
        dc = self.original
        b = noether_current(dc, xi, "dynamical")
        return (self.current(xi) - self.charge(xi).d()) - (b.Theta - b.Q.d())

    def field_equation_residuals(self):
        """``E~_mat - E_mat`` per matter field and ``E~_gr_a - E_gr_a`` per leg."""
        if self.shifted is None:
            raise NotFactorable("Lambda is not left-factorable; shifted currents undefined")
        mat = {k: self.shifted.E_mat(k) - self.original.E_mat(k) for k in self.original.matter}
        gr = tuple(self.shifted.E_gr(a) - self.original.E_gr(a) for a in range(self.original.n))
        return mat, gr

    def identity_residual(self, delta_fields=None, delta_coframe=None) -> DForm:
        """Jet variation of ``L + dLambda`` against the shifted currents."""
        if self.shifted is None:
            raise NotFactorable("Lambda is not left-factorable; shifted currents undefined")
        sh = self.shifted
        cfg = sh.config
        n = sh.n
        delta_fields = delta_fields or {}
        lhs = jet_variation(self.expr, cfg, delta_fields, delta_coframe)
        lhs = lhs + jet_variation(self.lambda_expr, cfg, delta_fields, delta_coframe).d().with_parity(lhs.odd)
        rhs = DForm.zero(n, n, sh.lagrangian.odd)
        for name, dpsi in delta_fields.items():
            rhs = rhs + dpsi.wedge(sh.E_mat(name))
        if delta_coframe is not None:
            for a, dt in enumerate(delta_coframe):
                rhs = rhs + dt.wedge(sh.E_gr(a))
        rhs = rhs + sh.omega(delta_fields, delta_coframe).d()
        return lhs - rhs


def apply_total_derivative_shift(expr, lambda_expr, config: Configuration, decls=None) -> ShiftSpec:
    """Shift ``L -> L + d Lambda`` and derive the shifted currents.

    With ``delta Lambda = delta psi ^ l_psi + delta dpsi ^ l_dpsi
    + delta vartheta^a ^ l_a + delta dvartheta^a ^ l_da``::

        sigma~ = sigma + (-1)^p d l_psi        pi~ = pi + l_psi + (-1)^(p+1) d l_dpsi
        Sigma~_a = Sigma_a - d l_a             Pi~_a = Pi_a + l_a + d l_da
    """
    n = config.n
    dmap = _decls_from(config, decls)
    degree, lodd = infer(lambda_expr, dmap, n)
    if degree != n - 1:
        raise TypeCheckError(f"Lambda must be an {n - 1}-form, got a {degree}-form")
    dc = variational_derivatives(expr, config, decls)
    odd = dc.lagrangian.odd
    if lodd != odd:
        raise TypeCheckError("Lambda and the Lagrangian have different parity")
    value, tan, _, _ = linearize(lambda_expr, config, decls)
    Lambda = value.with_parity(odd) if not value else value
    groups = {}
    for (kind, name, a, key), t in tan.items():
        groups.setdefault((kind, name, a), {})[key] = t

    def div(group, q, deg):
        return left_divide(groups.get(group, {}), q, n, deg, odd)

    try:
        lam = {}
        matter = {}
        for name, m in dc.matter.items():
            p = m.degree
            l_psi = div(("psi", name, None), p, n - 1 - p)
            l_dpsi = div(("dpsi", name, None), p + 1, n - 2 - p)
            lam[name] = (l_psi, l_dpsi)
            sigma, pi = m.sigma, m.pi
            if l_psi is not None:
                dl = l_psi.d()
                sigma = sigma + (-dl if p % 2 else dl)
                pi = pi + l_psi
            if l_dpsi is not None:
                dl = l_dpsi.d()
                pi = pi + (dl if p % 2 else -dl)
            matter[name] = MatterCurrents(name, p, sigma, pi)
        fam = config.coframe_name
        Sigma, Pi = [], []
        for a in range(n):
            l_a = div(("theta", fam, a), 1, n - 2)
            l_da = div(("dtheta", fam, a), 2, n - 3)
            lam[(fam, a)] = (l_a, l_da)
            S, P = dc.Sigma[a], dc.Pi[a]
            if l_a is not None:
                S = S - l_a.d()
                P = P + l_a
            if l_da is not None:
                P = P + l_da.d()
            Sigma.append(S)
            Pi.append(P)
    except NotFactorable:
        return ShiftSpec(Lambda, dc, None, None, expr, lambda_expr)
    shifted = DerivedCurrents(n, dc.lagrangian + Lambda.d(), matter, tuple(Sigma), tuple(Pi), config)
    return ShiftSpec(Lambda, dc, shifted, lam, expr, lambda_expr)
