"""The identity battery and suite execution."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor

from ..forms import DForm, VectorField, interior_product
from ..lagrangian import evaluate, variational_derivatives, variational_identity_residual
from ..models import (
    ConstitutiveTensor,
    axiom_residuals,
    chi_decompose,
    get_model,
    gr_F,
    gr_F_components,
    lagrangian_componentwise,
    symmetry_residual,
    trace_residual,
)
from ..noether import (
    apply_total_derivative_shift,
    cascade_residuals,
    charge_from_potential,
    conservation_residual,
    decompose_residual,
    noether_current,
    noether_identity_residual,
    s_linearity_residual,
)
from .config import SuiteConfig
from .generate import Bounds, case_rng, generate_case, random_vector
from .report import FAIL, INFO, PASS, Record, SuiteResult, VerificationReport


def monomials(residual) -> int:
    """Total monomial count of a form, or of a nested collection of forms."""
    if residual is None:
        return 0
    if isinstance(residual, DForm):
        return residual.monomial_count()
    if isinstance(residual, dict):
        return sum(monomials(v) for v in residual.values())
    return sum(monomials(v) for v in residual)


def build_model(cfg: SuiteConfig):
    params = cfg.model_params()
    if cfg.model == "premetric-ed" and cfg.chi is not None:
        params["chi"] = ConstitutiveTensor.from_matrix(cfg.chi)
    return get_model(cfg.model, **params)


def _compare(dc, expected: dict):
    out = []
    for key, value in expected.items():
        got = getattr(dc, key)
        if isinstance(value, tuple):
            out.extend(a - b for a, b in zip(got, value))
        else:
            out.append(got - value)
    return out


def _const_xi(rng, n, bound):
    return VectorField(int(rng.integers(-bound, bound + 1)) for _ in range(n))


def battery(model, mode: str, cfg: SuiteConfig, index: int):
    """``[(check, residual, informational)]`` for one case in one mode."""
    bounds = Bounds(cfg.degree, cfg.coeff)
    seed = cfg.seed
    expr = model.expr
    out = []

    def add(name, fn, informational=False):
        t0 = time.perf_counter()
        res = monomials(fn())
        out.append((name, res, informational, time.perf_counter() - t0))

    if mode == "pure":
        case = generate_case(seed, bounds, model, constant_coframe=True, index=index)
        rng = case_rng(seed, index + (1 << 32))
        fix = model.fixture(rng, cfg.coeff)
        dfix = variational_derivatives(expr, fix, model.decls)
        if model.name == "chern-simons":
            dc = variational_derivatives(expr, case.config.replace(geometry=fix.geometry), model.decls)
            xi = case.xi if case.xi.n == model.n else random_vector(rng, model.n, bounds)
            b = noether_current(dc, xi, "pure")
            add("pure-mode conservation", lambda: conservation_residual(b, dc))
            add("current decomposition", lambda: decompose_residual(b, dc))
            add("pure-mode triviality S(e_a) on closed fields", lambda: cascade_residuals(dfix, "pure").r2)
            bf = noether_current(dfix, xi, "pure")
            add("on-shell exactness Theta - dQ", lambda: bf.Theta - bf.Q.d())
        else:
            dc = variational_derivatives(expr, case.config, model.decls)
            xi = _const_xi(rng, model.n, cfg.coeff)
            b = noether_current(dc, xi, "pure")
            add("pure-mode conservation (constant generator)", lambda: conservation_residual(b, dc))
            add("current decomposition", lambda: decompose_residual(b, dc))
            add("pure-mode nonvanishing S(e_a) at constant field strength",
                lambda: cascade_residuals(dfix, "pure").r2, informational=True)
        return out

    constant = mode == "fixed-background"
    case = generate_case(seed, bounds, model, constant_coframe=constant, index=index)
    config = case.config
    dc = variational_derivatives(expr, config, model.decls)
    dfields = case.delta_fields
    dcoframe = list(case.delta_coframe)
    if constant:
        # the coframe is frozen; only matter is varied
        dcoframe = [DForm.zero(model.n, 1) for _ in range(model.n)]
    xi = case.xi
    b = noether_current(dc, xi, mode)

    add("variational identity", lambda: variational_identity_residual(expr, dc, dfields, dcoframe))
    if model.expected is not None:
        add("expected currents", lambda: _compare(dc, model.expected(config)))
    add("off-shell conservation", lambda: conservation_residual(b, dc))
    add("current decomposition", lambda: decompose_residual(b, dc))
    add("charge from pre-symplectic potential", lambda: b.Q - charge_from_potential(dc, xi, mode))
    add("S linearity", lambda: s_linearity_residual(dc, xi, case.f, mode))

    if mode == "dynamical":
        add("noether identity", lambda: noether_identity_residual(dc))
        add("dynamical cascade S(e_a)", lambda: cascade_residuals(dc, mode).r2)
    else:
        add("fixed-background cascade S(e_a) + Sigma_a", lambda: cascade_residuals(dc, mode).r2)

    if model.name == "maxwell":
        F = config.fields["A"].d()
        p = model.p
        add("trace law", lambda: trace_residual(dc.Sigma, F, config.geometry, p))
        add("symmetry law", lambda: symmetry_residual(dc.Sigma, config.geometry))
    if model.name == "premetric-ed" and mode == "dynamical":
        F = config.fields["A"].d()
        g = config.geometry
        add("componentwise lagrangian", lambda: dc.lagrangian - lagrangian_componentwise(model.chi, F, g))
        rng = case_rng(seed, index + (2 << 32))
        skew = chi_decompose(ConstitutiveTensor.from_matrix(
            [[int(rng.integers(-cfg.coeff, cfg.coeff + 1)) for _ in range(6)] for _ in range(6)]))[1]
        shifted = config.replace(chi=model.chi + skew)
        add("skewon invariance", lambda: evaluate(expr, shifted) - dc.lagrangian)
    if model.name == "coframe-gr":
        g = config.geometry
        add("torsion combination vs component expansion",
            lambda: [a - b_ for a, b_ in zip(gr_F(g), gr_F_components(g))])
        spec = apply_total_derivative_shift(expr, model.lambda_expr, config, model.decls)
        add("shifted charge consistency", lambda: spec.charge_residual(xi))
        starF = [g.hodge(Fa * g.eta(a)) for a, Fa in enumerate(gr_F(g))]
        add("charge with boundary term at e_a", lambda: [
            spec.charge(e) - (starF[a] + interior_product(e, spec.Lambda)) for a, e in enumerate(g.frame)
        ])

    # on-shell fixture
    rng = case_rng(seed, index + (3 << 32))
    fix = model.fixture(rng, cfg.coeff)
    dfix = variational_derivatives(expr, fix, model.decls)
    fmode = mode if mode != "dynamical" or model.name == "coframe-gr" else "fixed-background"
    xi_c = _const_xi(rng, model.n, cfg.coeff)
    bf = noether_current(dfix, xi_c, fmode)
    add("on-shell field equations", lambda: [dfix.E_mat(k) for k in dfix.matter]
        + [dfix.E_gr(a) for a in range(model.n)] if fmode == "dynamical"
        else [dfix.E_mat(k) for k in dfix.matter])
    add("on-shell conservation dTheta", lambda: bf.Theta.d())
    add("on-shell cascade dS(e_a)", lambda: cascade_residuals(dfix, fmode).r1)
    if model.name == "premetric-ed":
        add("inhomogeneous equation dH = J", lambda: axiom_residuals(fix, model.chi))
    if model.name == "coframe-gr":
        add("on-shell exactness Theta - dQ", lambda: bf.Theta - bf.Q.d())
    return out


def _run_case(args):
    cfg, mode, index = args
    model = build_model(cfg)
    records = []
    for name, res, info, elapsed in battery(model, mode, cfg, index):
        if info:
            status = INFO if res else FAIL
        else:
            status = PASS if res == 0 else FAIL
        records.append(Record(mode, index, name, status, res, round(elapsed, 6) if cfg.timing else 0.0))
    return records


def suite_id(cfg: SuiteConfig) -> str:
    params = ",".join(f"{k}={v}" for k, v in sorted(cfg.model_params().items()))
    return f"{cfg.model}({params})@{cfg.seed}" if params else f"{cfg.model}@{cfg.seed}"


def run_suite(cfg: SuiteConfig) -> VerificationReport:
    """Run the full battery for every case and mode; ordering is deterministic."""
    model = build_model(cfg)  # raises UnknownModel early
    modes = cfg.effective_modes
    jobs = [(cfg, mode, i) for mode in modes for i in range(cfg.cases)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_case, jobs))
    else:
        results = [_run_case(j) for j in jobs]
    records = tuple(r for batch in results for r in batch)
    params = {k: v for k, v in cfg.model_params().items()}
    params.setdefault("n", model.n)
    if model.p is not None:
        params.setdefault("p", model.p)
    return VerificationReport((SuiteResult(suite_id(cfg), cfg.model, params, cfg.seed, cfg.cases, records),))


def merge(reports) -> VerificationReport:
    return VerificationReport(tuple(s for r in reports for s in r.suites))
